#pragma once

#include <array>
#include <string>
#include <vector>

#include "symidx/errors.hpp"

namespace symidx::novikov {

/// Exact rational with normalized sign and gcd-reduced terms.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n);  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator-() const { return Rational(-num, den); }
  bool operator==(const Rational&) const = default;
  bool operator<(const Rational& o) const;

  std::string str() const;  // "3", "-1/2"
};

/// Which pi_2 exponent lattice a value lives on: X = S^2 x S^2 (rank 2,
/// basis A = (10), B = (01)) or M = X x X-bar (rank 4; the last two basis
/// directions carry the reversed form).
enum class Lattice { X, M };

inline int lattice_rank(Lattice l) { return l == Lattice::X ? 2 : 4; }

struct SphereClass {
  Lattice lattice = Lattice::X;
  std::array<long long, 4> c{};  // only the first rank entries are used

  static SphereClass basis(Lattice l, int index);
  static SphereClass zero(Lattice l) { return SphereClass{l, {}}; }

  bool is_zero() const;
  SphereClass operator+(const SphereClass& o) const;
  SphereClass operator-(const SphereClass& o) const;
  bool operator==(const SphereClass&) const = default;
};

/// First Chern number: 2a + 2b on X, 2a + 2b - 2c - 2d on M.
long long chern(const SphereClass& cls);

/// Symplectic area for omega_0 (+) lambda omega_0: a + lambda b on X,
/// a + lambda b - c - lambda d on M.  Requires lambda > 1.
Rational area(const SphereClass& cls, const Rational& lambda);

struct MonotonicityReport {
  SphereClass witness;
  long long chern_value = 0;
  Rational area_value;
  bool not_monotone = false;
};

/// The witness class (0100) - (1000) with (chern, area) = (0, lambda - 1):
/// chern vanishes while the area does not, so (M, diag) is not monotone.
MonotonicityReport monotonicity_witness(const Rational& lambda);

/// delta_1 on pi_2-classes: j(beta, beta') -> beta - beta', i.e.
/// (a, b, c, d) -> (a - c, b - d).
SphereClass delta1_class(const SphereClass& m_class);

/// Exponent of a Novikov term: a formal combination of lattice classes with
/// coefficients in Q + Q h, h an opaque degree-zero indeterminate.
struct ExpCoeff {
  Rational base;
  Rational h;
  bool operator==(const ExpCoeff&) const = default;
};

struct Exponent {
  Lattice lattice = Lattice::X;
  std::array<ExpCoeff, 4> coeff{};

  static Exponent zero(Lattice l) { return Exponent{l, {}}; }
  static Exponent of_class(const SphereClass& cls, const Rational& scale = 1,
                           bool h_part = false);

  bool is_zero() const;
  Exponent operator+(const Exponent& o) const;
  Exponent operator-() const;
  bool operator==(const Exponent&) const = default;
};

bool exponent_less(const Exponent& a, const Exponent& b);

Exponent delta1_exponent(const Exponent& e);  // M -> X, linear

/// One of the finitely many homology-class symbols: (ab) on X, (ab c-bar
/// d-bar) on M.  Signs live on the term coefficient.  The `unit` symbol
/// stands for a bare ring element a*e^{beta} with no homology class attached.
struct ClassSymbol {
  Lattice lattice = Lattice::X;
  std::array<int, 4> bits{};
  bool unit = false;

  static ClassSymbol unit_symbol() { return ClassSymbol{Lattice::X, {}, true}; }
  bool operator==(const ClassSymbol&) const = default;
};

bool symbol_less(const ClassSymbol& a, const ClassSymbol& b);

struct Term {
  long long coeff = 0;
  ClassSymbol symbol;
  Exponent exponent;
};

/// Finite sum of graded class symbols weighted by exponential terms;
/// canonically sorted and merged, zero coefficients dropped.
class NovikovElement {
public:
  NovikovElement() = default;
  explicit NovikovElement(Lattice l) : lattice_(l) {}

  Lattice lattice() const { return lattice_; }
  bool empty() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }

  void add_term(long long coeff, const ClassSymbol& symbol, const Exponent& exponent);

  bool operator==(const NovikovElement& o) const;

private:
  void normalize();

  Lattice lattice_ = Lattice::X;
  std::vector<Term> terms_;
};

/// delta_1 on elements: coefficients carried, exponents through
/// delta1_exponent, symbols through the pushforward table.
/// (Kept separate from the Albers composition below, which also remaps
/// symbols.)
NovikovElement delta1_exponents_only(const NovikovElement& e);

/// delta_2 = sign twist compose exponent map beta -> -delta_1(beta); the
/// twist is (-1)^{mu/2} with mu/2 = chern(delta_1(beta)).
NovikovElement delta2(const NovikovElement& e);

/// tau on Lambda_omega: exponent negation.
NovikovElement tau(const NovikovElement& e);

/// Dispatch: delta2 on the M lattice, tau on the X lattice.
NovikovElement tau_and_delta2(const NovikovElement& e);

/// Class-symbol lookup fixed by the displayed split-loop computations:
/// (011-1-) -> (01), (111-0-) -> -(10); exponents through delta_1;
/// unknown symbols raise UNKNOWN_CLASS.
NovikovElement albers_delta1_pushforward(const NovikovElement& e);

struct GoldenReport {
  bool pass = false;
  NovikovElement input;
  NovikovElement output;
  NovikovElement expected;
  std::string diff;  // term-level mismatch description, empty on pass
};

/// Rebuilds the non-split Seidel element psi, pushes it through
/// albers_delta1_pushforward and compares bit-exactly with the displayed
/// result [(01)+(10)]e^{1/2*(10)+h*[(10)-(01)]}.
GoldenReport verify_section33();

/// The psi element and the expected pushforward, for reuse in tests/CLI.
NovikovElement psi_element();
NovikovElement psi_pushforward_expected();

// --- text syntax -----------------------------------------------------------
//
// Terms: [+-](ab) or [+-](abcd), optionally followed by e^{ ... } where the
// exponent is a +/- separated sum of q*(class), q*h*(class), h*[(c1)-(c2)]
// with exact rationals q ("1/2", "2", unicode one-half accepted).  Combining
// overbars on the last two digits of an M symbol are accepted and ignored;
// several symbols may share one exponent via [(a)+(b)]e^{...}.

NovikovElement parse_element(const std::string& text);

std::string to_string(const NovikovElement& e);
std::string to_string(const Exponent& e);
std::string to_string(const ClassSymbol& s);
std::string to_string(const SphereClass& cls);

}  // namespace symidx::novikov
