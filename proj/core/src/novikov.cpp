#include "symidx/novikov.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace symidx::novikov {

// --- Rational ---------------------------------------------------------------

namespace {

long long checked_ll(__int128 v, const char* what) {
  if (v > static_cast<__int128>(9'000'000'000'000'000'000LL) ||
      v < -static_cast<__int128>(9'000'000'000'000'000'000LL))
    fail(ErrKind::OutOfRange, std::string("rational overflow in ") + what);
  return static_cast<long long>(v);
}

}  // namespace

Rational::Rational(long long n) : num(n), den(1) {}

Rational::Rational(long long n, long long d) {
  if (d == 0) fail(ErrKind::OutOfRange, "rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long long g = std::gcd(n < 0 ? -n : n, d);
  num = g ? n / g : n;
  den = g ? d / g : d;
}

Rational Rational::operator+(const Rational& o) const {
  const __int128 n = static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den;
  const __int128 d = static_cast<__int128>(den) * o.den;
  return Rational(checked_ll(n, "+"), checked_ll(d, "+"));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  const __int128 n = static_cast<__int128>(num) * o.num;
  const __int128 d = static_cast<__int128>(den) * o.den;
  return Rational(checked_ll(n, "*"), checked_ll(d, "*"));
}

bool Rational::operator<(const Rational& o) const {
  return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

// --- classes ----------------------------------------------------------------

SphereClass SphereClass::basis(Lattice l, int index) {
  if (index < 0 || index >= lattice_rank(l)) fail(ErrKind::OutOfRange, "basis index");
  SphereClass c{l, {}};
  c.c[static_cast<size_t>(index)] = 1;
  return c;
}

bool SphereClass::is_zero() const {
  for (int i = 0; i < lattice_rank(lattice); ++i) {
    if (c[static_cast<size_t>(i)] != 0) return false;
  }
  return true;
}

SphereClass SphereClass::operator+(const SphereClass& o) const {
  if (lattice != o.lattice) fail(ErrKind::Mismatch, "adding classes on different lattices");
  SphereClass r{lattice, {}};
  for (size_t i = 0; i < 4; ++i) r.c[i] = c[i] + o.c[i];
  return r;
}

SphereClass SphereClass::operator-(const SphereClass& o) const {
  if (lattice != o.lattice) fail(ErrKind::Mismatch, "subtracting classes on different lattices");
  SphereClass r{lattice, {}};
  for (size_t i = 0; i < 4; ++i) r.c[i] = c[i] - o.c[i];
  return r;
}

long long chern(const SphereClass& cls) {
  if (cls.lattice == Lattice::X) return 2 * cls.c[0] + 2 * cls.c[1];
  return 2 * cls.c[0] + 2 * cls.c[1] - 2 * cls.c[2] - 2 * cls.c[3];
}

Rational area(const SphereClass& cls, const Rational& lambda) {
  if (!(Rational(1) < lambda)) fail(ErrKind::OutOfRange, "lambda must exceed 1");
  if (cls.lattice == Lattice::X) return Rational(cls.c[0]) + lambda * Rational(cls.c[1]);
  return Rational(cls.c[0]) + lambda * Rational(cls.c[1]) - Rational(cls.c[2]) -
         lambda * Rational(cls.c[3]);
}

MonotonicityReport monotonicity_witness(const Rational& lambda) {
  MonotonicityReport rep;
  rep.witness = SphereClass::basis(Lattice::M, 1) - SphereClass::basis(Lattice::M, 0);
  rep.chern_value = chern(rep.witness);
  rep.area_value = area(rep.witness, lambda);
  rep.not_monotone = rep.chern_value == 0 && !rep.area_value.is_zero();
  return rep;
}

SphereClass delta1_class(const SphereClass& m_class) {
  if (m_class.lattice != Lattice::M) fail(ErrKind::Mismatch, "delta_1 expects an M-class");
  SphereClass r{Lattice::X, {}};
  r.c[0] = m_class.c[0] - m_class.c[2];
  r.c[1] = m_class.c[1] - m_class.c[3];
  return r;
}

// --- exponents --------------------------------------------------------------

Exponent Exponent::of_class(const SphereClass& cls, const Rational& scale, bool h_part) {
  Exponent e{cls.lattice, {}};
  for (int i = 0; i < lattice_rank(cls.lattice); ++i) {
    const Rational q = scale * Rational(cls.c[static_cast<size_t>(i)]);
    if (h_part)
      e.coeff[static_cast<size_t>(i)].h = q;
    else
      e.coeff[static_cast<size_t>(i)].base = q;
  }
  return e;
}

bool Exponent::is_zero() const {
  for (const auto& c : coeff) {
    if (!c.base.is_zero() || !c.h.is_zero()) return false;
  }
  return true;
}

Exponent Exponent::operator+(const Exponent& o) const {
  if (lattice != o.lattice) fail(ErrKind::Mismatch, "adding exponents on different lattices");
  Exponent r{lattice, {}};
  for (size_t i = 0; i < 4; ++i) {
    r.coeff[i].base = coeff[i].base + o.coeff[i].base;
    r.coeff[i].h = coeff[i].h + o.coeff[i].h;
  }
  return r;
}

Exponent Exponent::operator-() const {
  Exponent r{lattice, {}};
  for (size_t i = 0; i < 4; ++i) {
    r.coeff[i].base = -coeff[i].base;
    r.coeff[i].h = -coeff[i].h;
  }
  return r;
}

bool exponent_less(const Exponent& a, const Exponent& b) {
  for (size_t i = 0; i < 4; ++i) {
    if (a.coeff[i].base == b.coeff[i].base) {
      if (a.coeff[i].h == b.coeff[i].h) continue;
      return a.coeff[i].h < b.coeff[i].h;
    }
    return a.coeff[i].base < b.coeff[i].base;
  }
  return false;
}

Exponent delta1_exponent(const Exponent& e) {
  if (e.lattice != Lattice::M) fail(ErrKind::Mismatch, "delta_1 expects an M-lattice exponent");
  Exponent r{Lattice::X, {}};
  r.coeff[0].base = e.coeff[0].base - e.coeff[2].base;
  r.coeff[0].h = e.coeff[0].h - e.coeff[2].h;
  r.coeff[1].base = e.coeff[1].base - e.coeff[3].base;
  r.coeff[1].h = e.coeff[1].h - e.coeff[3].h;
  return r;
}

// --- elements ---------------------------------------------------------------

bool symbol_less(const ClassSymbol& a, const ClassSymbol& b) {
  if (a.unit != b.unit) return a.unit;  // unit terms sort first
  return a.bits < b.bits;
}

void NovikovElement::add_term(long long coeff, const ClassSymbol& symbol,
                              const Exponent& exponent) {
  if (coeff == 0) return;
  if (terms_.empty()) lattice_ = exponent.lattice;
  if (exponent.lattice != lattice_)
    fail(ErrKind::Mismatch, "term exponent lattice differs from the element's");
  if (!symbol.unit && symbol.lattice != lattice_)
    fail(ErrKind::Mismatch, "class symbol lattice differs from the element's");
  terms_.push_back({coeff, symbol, exponent});
  normalize();
}

void NovikovElement::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    if (a.exponent == b.exponent) return symbol_less(a.symbol, b.symbol);
    return exponent_less(a.exponent, b.exponent);
  });
  std::vector<Term> merged;
  for (const Term& t : terms_) {
    if (!merged.empty() && merged.back().symbol == t.symbol &&
        merged.back().exponent == t.exponent)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(t);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Term& t) { return t.coeff == 0; }),
               merged.end());
  terms_ = std::move(merged);
}

bool NovikovElement::operator==(const NovikovElement& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;  // zero is lattice-agnostic
  if (lattice_ != o.lattice_ || terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coeff != o.terms_[i].coeff || !(terms_[i].symbol == o.terms_[i].symbol) ||
        !(terms_[i].exponent == o.terms_[i].exponent))
      return false;
  }
  return true;
}

NovikovElement delta1_exponents_only(const NovikovElement& e) {
  NovikovElement out(Lattice::X);
  for (const Term& t : e.terms()) {
    if (!t.symbol.unit)
      fail(ErrKind::Mismatch, "exponent-level delta_1 is defined on bare ring elements");
    out.add_term(t.coeff, ClassSymbol::unit_symbol(), delta1_exponent(t.exponent));
  }
  return out;
}

namespace {

/// (-1)^{mu/2} with mu/2 = chern(delta_1(beta_base)); the lattice makes this
/// an integer for every integral or half-integral class the toolkit sees.
long long delta2_sign(const Exponent& e) {
  Rational c;
  const long long weights[4] = {2, 2, -2, -2};
  for (size_t i = 0; i < 4; ++i) c = c + Rational(weights[i]) * e.coeff[i].base;
  if (!c.is_integer())
    fail(ErrKind::Internal, "odd diagonal Maslov index; sign twist undefined");
  return (c.num % 2 == 0) ? 1 : -1;
}

}  // namespace

NovikovElement delta2(const NovikovElement& e) {
  NovikovElement out(Lattice::X);
  for (const Term& t : e.terms()) {
    if (!t.symbol.unit)
      fail(ErrKind::Mismatch,
           "delta_2 acts on bare ring elements; use the pushforward for classed terms");
    if (t.exponent.lattice != Lattice::M)
      fail(ErrKind::Mismatch, "delta_2 expects M-lattice exponents");
    out.add_term(delta2_sign(t.exponent) * t.coeff, ClassSymbol::unit_symbol(),
                 -delta1_exponent(t.exponent));
  }
  return out;
}

NovikovElement tau(const NovikovElement& e) {
  NovikovElement out(Lattice::X);
  for (const Term& t : e.terms()) {
    if (t.exponent.lattice != Lattice::X)
      fail(ErrKind::Mismatch, "tau expects X-lattice exponents");
    out.add_term(t.coeff, t.symbol, -t.exponent);
  }
  return out;
}

NovikovElement tau_and_delta2(const NovikovElement& e) {
  if (e.empty()) return e;
  return e.lattice() == Lattice::M ? delta2(e) : tau(e);
}

NovikovElement albers_delta1_pushforward(const NovikovElement& e) {
  NovikovElement out(Lattice::X);
  for (const Term& t : e.terms()) {
    long long sign = 0;
    ClassSymbol image{Lattice::X, {}};
    if (!t.symbol.unit && t.symbol.lattice == Lattice::M) {
      if (t.symbol.bits == std::array<int, 4>{0, 1, 1, 1}) {
        sign = 1;
        image.bits = {0, 1, 0, 0};
      } else if (t.symbol.bits == std::array<int, 4>{1, 1, 1, 0}) {
        sign = -1;
        image.bits = {1, 0, 0, 0};
      }
    }
    if (sign == 0)
      fail(ErrKind::UnknownClass,
           "UNKNOWN_CLASS: no pushforward value for symbol " + to_string(t.symbol));
    out.add_term(sign * t.coeff, image, delta1_exponent(t.exponent));
  }
  return out;
}

// --- golden computation ------------------------------------------------------

NovikovElement psi_element() {
  // psi = [(011-1-) - (111-0-)] e^{1/2*(1000) + h*[(0001) + (1000)]}
  Exponent exp = Exponent::of_class(SphereClass::basis(Lattice::M, 0), Rational(1, 2)) +
                 Exponent::of_class(SphereClass::basis(Lattice::M, 3), 1, true) +
                 Exponent::of_class(SphereClass::basis(Lattice::M, 0), 1, true);
  NovikovElement psi(Lattice::M);
  psi.add_term(1, ClassSymbol{Lattice::M, {0, 1, 1, 1}}, exp);
  psi.add_term(-1, ClassSymbol{Lattice::M, {1, 1, 1, 0}}, exp);
  return psi;
}

NovikovElement psi_pushforward_expected() {
  // [(01) + (10)] e^{1/2*(10) + h*[(10) - (01)]}
  Exponent exp = Exponent::of_class(SphereClass::basis(Lattice::X, 0), Rational(1, 2)) +
                 Exponent::of_class(SphereClass::basis(Lattice::X, 0), 1, true) +
                 Exponent::of_class(SphereClass::basis(Lattice::X, 1), Rational(-1), true);
  NovikovElement out(Lattice::X);
  out.add_term(1, ClassSymbol{Lattice::X, {0, 1, 0, 0}}, exp);
  out.add_term(1, ClassSymbol{Lattice::X, {1, 0, 0, 0}}, exp);
  return out;
}

namespace {

std::string term_str(const Term& t);

std::string element_diff(const NovikovElement& got, const NovikovElement& want) {
  std::ostringstream os;
  for (const Term& t : got.terms()) {
    bool found = false;
    for (const Term& w : want.terms())
      if (w.coeff == t.coeff && w.symbol == t.symbol && w.exponent == t.exponent) found = true;
    if (!found) os << "unexpected term " << term_str(t) << "; ";
  }
  for (const Term& w : want.terms()) {
    bool found = false;
    for (const Term& t : got.terms())
      if (w.coeff == t.coeff && w.symbol == t.symbol && w.exponent == t.exponent) found = true;
    if (!found) os << "missing term " << term_str(w) << "; ";
  }
  std::string s = os.str();
  if (s.size() >= 2) s.resize(s.size() - 2);
  return s;
}

}  // namespace

GoldenReport verify_section33() {
  GoldenReport rep;
  rep.input = psi_element();
  rep.output = albers_delta1_pushforward(rep.input);
  rep.expected = psi_pushforward_expected();
  rep.pass = rep.output == rep.expected;
  if (!rep.pass) rep.diff = "MISMATCH: " + element_diff(rep.output, rep.expected);
  return rep;
}

// --- printing ---------------------------------------------------------------

namespace {

constexpr const char* kMacron = "\xcc\x84";  // combining overbar

std::string coeff_prefix(const Rational& q, bool leading) {
  // "", "-", "2*", "-1/2*" ... as a multiplier in front of a class factor
  if (q == Rational(1)) return leading ? "" : "+";
  if (q == Rational(-1)) return "-";
  std::string s = q.str() + "*";
  if (!leading && q.num > 0) s = "+" + s;
  return s;
}

std::string term_str(const Term& t) {
  std::ostringstream os;
  if (t.coeff < 0) os << "-";
  if (std::abs(t.coeff) != 1 || (t.symbol.unit && t.exponent.is_zero())) {
    os << std::abs(t.coeff);
    if (!t.symbol.unit) os << "*";
  }
  if (!t.symbol.unit) os << to_string(t.symbol);
  if (!t.exponent.is_zero()) os << "e^{" << to_string(t.exponent) << "}";
  return os.str();
}

std::string basis_class_str(Lattice l, size_t index) {
  std::string s = "(";
  for (int i = 0; i < lattice_rank(l); ++i)
    s += (static_cast<size_t>(i) == index) ? "1" : "0";
  return s + ")";
}

}  // namespace

std::string to_string(const ClassSymbol& s) {
  if (s.unit) return "";
  std::string out = "(";
  const int rank = lattice_rank(s.lattice);
  for (int i = 0; i < rank; ++i) {
    out += std::to_string(s.bits[static_cast<size_t>(i)]);
    if (s.lattice == Lattice::M && i >= 2) out += kMacron;
  }
  return out + ")";
}

std::string to_string(const SphereClass& cls) {
  std::string out = "(";
  for (int i = 0; i < lattice_rank(cls.lattice); ++i) {
    if (i) out += ",";
    out += std::to_string(cls.c[static_cast<size_t>(i)]);
  }
  return out + ")";
}

std::string to_string(const Exponent& e) {
  std::ostringstream os;
  bool leading = true;
  for (size_t i = 0; i < static_cast<size_t>(lattice_rank(e.lattice)); ++i) {
    if (e.coeff[i].base.is_zero()) continue;
    os << coeff_prefix(e.coeff[i].base, leading) << basis_class_str(e.lattice, i);
    leading = false;
  }
  std::vector<size_t> h_dirs;
  for (size_t i = 0; i < static_cast<size_t>(lattice_rank(e.lattice)); ++i)
    if (!e.coeff[i].h.is_zero()) h_dirs.push_back(i);
  if (h_dirs.size() == 1) {
    const size_t i = h_dirs[0];
    os << coeff_prefix(e.coeff[i].h, leading) << "h*" << basis_class_str(e.lattice, i);
  } else if (h_dirs.size() > 1) {
    if (!leading) os << "+";
    os << "h*[";
    bool inner_leading = true;
    for (size_t i : h_dirs) {
      os << coeff_prefix(e.coeff[i].h, inner_leading) << basis_class_str(e.lattice, i);
      inner_leading = false;
    }
    os << "]";
  }
  return os.str();
}

std::string to_string(const NovikovElement& e) {
  // Group consecutive terms sharing an exponent so sums print as
  // [(01)+(10)]e^{...} rather than duplicating the exponent.
  if (e.empty()) return "0";
  std::ostringstream os;
  const auto& terms = e.terms();
  size_t i = 0;
  bool leading = true;
  while (i < terms.size()) {
    size_t j = i;
    while (j < terms.size() && terms[j].exponent == terms[i].exponent) ++j;
    std::string group;
    if (j - i == 1) {
      group = term_str(terms[i]);
    } else {
      group = "[";
      bool inner_leading = true;
      for (size_t k = i; k < j; ++k) {
        const Term& t = terms[k];
        group += coeff_prefix(Rational(t.coeff), inner_leading);
        group += t.symbol.unit ? "1" : to_string(t.symbol);
        inner_leading = false;
      }
      group += "]";
      if (!terms[i].exponent.is_zero())
        group += "e^{" + to_string(terms[i].exponent) + "}";
    }
    if (!leading && !group.empty() && group[0] != '-') os << "+";
    os << group;
    leading = false;
    i = j;
  }
  return os.str();
}

// --- parsing ----------------------------------------------------------------

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;

  [[noreturn]] void die(const std::string& msg) const {
    fail(ErrKind::Parse, msg + " at offset " + std::to_string(i));
  }

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
  }

  bool done() {
    skip_ws();
    return i >= s.size();
  }

  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  /// '+' or '-'; also accepts the unicode minus sign U+2212.
  int eat_sign() {
    skip_ws();
    if (i < s.size() && s[i] == '+') {
      ++i;
      return 1;
    }
    if (i < s.size() && s[i] == '-') {
      ++i;
      return -1;
    }
    if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xe2 &&
        static_cast<unsigned char>(s[i + 1]) == 0x88 &&
        static_cast<unsigned char>(s[i + 2]) == 0x92) {
      i += 3;
      return -1;
    }
    return 0;
  }

  bool peek_digit() {
    skip_ws();
    return i < s.size() && s[i] >= '0' && s[i] <= '9';
  }

  bool peek_half() {
    skip_ws();
    return i + 1 < s.size() && static_cast<unsigned char>(s[i]) == 0xc2 &&
           static_cast<unsigned char>(s[i + 1]) == 0xbd;
  }

  long long integer() {
    skip_ws();
    if (!peek_digit()) die("expected an integer");
    long long v = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
      v = v * 10 + (s[i] - '0');
      ++i;
    }
    return v;
  }

  Rational rational() {
    if (peek_half()) {
      i += 2;
      return Rational(1, 2);
    }
    const long long n = integer();
    if (i < s.size() && s[i] == '/') {
      ++i;
      const long long d = integer();
      if (d == 0) die("zero denominator");
      return Rational(n, d);
    }
    return Rational(n);
  }

  /// "(01)", "(011-1-)" with optional combining overbars inside.
  SphereClass symbol_bits(std::array<int, 4>* bits_out) {
    skip_ws();
    if (!eat('(')) die("expected '('");
    std::array<int, 4> bits{};
    int count = 0;
    for (;;) {
      skip_ws();
      if (i >= s.size()) die("unterminated class symbol");
      if (s[i] == ')') {
        ++i;
        break;
      }
      if (i + 1 < s.size() && static_cast<unsigned char>(s[i]) == 0xcc &&
          static_cast<unsigned char>(s[i + 1]) == 0x84) {
        i += 2;  // combining overbar: decoration only
        continue;
      }
      if (s[i] != '0' && s[i] != '1') die("class symbols use digits 0/1");
      if (count >= 4) die("class symbol has more than four digits");
      bits[static_cast<size_t>(count++)] = s[i] - '0';
      ++i;
    }
    if (count != 2 && count != 4) die("class symbol must have two or four digits");
    const Lattice l = count == 2 ? Lattice::X : Lattice::M;
    if (bits_out) *bits_out = bits;
    SphereClass cls{l, {}};
    for (int k = 0; k < count; ++k) cls.c[static_cast<size_t>(k)] = bits[static_cast<size_t>(k)];
    return cls;
  }

  bool peek_class() {
    skip_ws();
    return i < s.size() && s[i] == '(';
  }

  bool peek(char c) {
    skip_ws();
    return i < s.size() && s[i] == c;
  }
};

/// One additive piece of an exponent: rational and h factors (in any order,
/// '*' optional) followed by a class or a bracketed class sum.
Exponent parse_exp_term(Cursor& cur, int sign) {
  Rational scale(sign);
  bool h_part = false;
  for (;;) {
    if (cur.peek_digit() || cur.peek_half()) {
      scale = scale * cur.rational();
      cur.eat('*');
      continue;
    }
    if (cur.peek('h')) {
      ++cur.i;
      if (h_part) cur.die("h-degree above 1 is not supported");
      h_part = true;
      cur.eat('*');
      continue;
    }
    break;
  }
  if (cur.peek_class()) {
    return Exponent::of_class(cur.symbol_bits(nullptr), scale, h_part);
  }
  if (cur.eat('[')) {
    bool have = false;
    Exponent acc;
    int inner = cur.eat_sign();
    if (inner == 0) inner = 1;
    for (;;) {
      Rational q(inner);
      if (cur.peek_digit() || cur.peek_half()) {
        q = q * cur.rational();
        cur.eat('*');
      }
      const Exponent piece = Exponent::of_class(cur.symbol_bits(nullptr), scale * q, h_part);
      acc = have ? acc + piece : piece;
      have = true;
      if (cur.eat(']')) break;
      inner = cur.eat_sign();
      if (inner == 0) cur.die("expected '+', '-' or ']' in exponent bracket");
    }
    return acc;
  }
  cur.die("expected a class or '[' in exponent");
}

Exponent parse_exponent(Cursor& cur) {
  if (!cur.eat('{')) cur.die("expected '{' after e^");
  int sign = cur.eat_sign();
  if (sign == 0) sign = 1;
  Exponent acc = parse_exp_term(cur, sign);
  for (;;) {
    if (cur.eat('}')) break;
    sign = cur.eat_sign();
    if (sign == 0) cur.die("expected '+', '-' or '}' in exponent");
    acc = acc + parse_exp_term(cur, sign);
  }
  return acc;
}

struct SignedSymbol {
  long long coeff;
  ClassSymbol symbol;
};

}  // namespace

NovikovElement parse_element(const std::string& text) {
  Cursor cur{text};
  NovikovElement out;
  if (cur.done()) return out;  // empty input is the zero element

  int sign = cur.eat_sign();
  if (sign == 0) sign = 1;
  for (;;) {
    long long coeff = sign;
    bool have_coeff = false;
    if (cur.peek_digit()) {
      const Rational q = cur.rational();
      if (!q.is_integer()) cur.die("term coefficients must be integers");
      coeff *= q.num;
      have_coeff = true;
      cur.eat('*');
    }

    std::vector<SignedSymbol> symbols;
    if (cur.peek_class()) {
      std::array<int, 4> bits{};
      const SphereClass cls = cur.symbol_bits(&bits);
      for (int b : bits)
        if (b != 0 && b != 1) cur.die("class symbol digits must be 0/1");
      symbols.push_back({1, ClassSymbol{cls.lattice, bits, false}});
    } else if (cur.eat('[')) {
      int inner = cur.eat_sign();
      if (inner == 0) inner = 1;
      for (;;) {
        long long c = inner;
        if (cur.peek_digit()) {
          const Rational q = cur.rational();
          if (!q.is_integer()) cur.die("term coefficients must be integers");
          c *= q.num;
          cur.eat('*');
        }
        std::array<int, 4> bits{};
        const SphereClass cls = cur.symbol_bits(&bits);
        symbols.push_back({c, ClassSymbol{cls.lattice, bits, false}});
        if (cur.eat(']')) break;
        inner = cur.eat_sign();
        if (inner == 0) cur.die("expected '+', '-' or ']' in symbol bracket");
      }
    } else {
      // bare coefficient and/or bare exponential: the unit symbol
      if (!have_coeff && !cur.peek('e')) cur.die("expected a term");
      symbols.push_back({1, ClassSymbol::unit_symbol()});
    }

    Exponent exp;
    bool have_exp = false;
    if (cur.peek('e')) {
      ++cur.i;
      if (!cur.eat('^')) cur.die("expected '^' after e");
      exp = parse_exponent(cur);
      have_exp = true;
    }
    for (const SignedSymbol& ss : symbols) {
      Lattice l = ss.symbol.unit ? Lattice::X : ss.symbol.lattice;
      if (have_exp) l = exp.lattice;
      if (!ss.symbol.unit && have_exp && ss.symbol.lattice != exp.lattice)
        cur.die("symbol and exponent lattices disagree");
      out.add_term(coeff * ss.coeff, ss.symbol, have_exp ? exp : Exponent::zero(l));
    }

    if (cur.done()) break;
    sign = cur.eat_sign();
    if (sign == 0) cur.die("expected '+' or '-' between terms");
  }
  return out;
}

}  // namespace symidx::novikov
