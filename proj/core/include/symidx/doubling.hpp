#pragma once

#include "symidx/czindex.hpp"

namespace symidx {

/// Half of a c-symmetric datum: a path F on [0, 1] with F(0) = 1 over
/// (R^{2n}, omega_0), together with the anti-symplectic involution (default
/// coordinate conjugation, which fixes R^n).
struct HalfPathData {
  SymplecticPathSpec half;
  Mat involution;  // empty = conjugation_involution(n)

  Mat involution_or_default() const;
};

struct DoubledPath {
  SymplecticPathSpec full;  // on [0, 2] (or [0, 2T] in general)
  Mat monodromy;            // F_2 = endpoint of the full path
  Mat involution;
};

/// Doubles the half path: F(1+s) = c F(1-s) F_2^{-1} c with
/// F_2 = c F_1^{-1} c F_1, represented exactly by conjugated, time-reversed
/// generator segments.  The result satisfies F(t) = c F(2-t) F_2^{-1} c and
/// (c F_2)^2 = 1.
DoubledPath double_path(const HalfPathData& h);

/// The reflected half F^-(t) = c F(1-t) F_1^{-1} c, again with F^-(0) = 1.
SymplecticPathSpec reflected_half(const HalfPathData& h);

/// Defect form Q(v) = omega((1 - F_2) v, c v), symmetrized by polarization.
/// `asymmetry_out`, when given, receives the norm of the discarded
/// anti-symmetric part.
QuadraticForm defect_form(const DoubledPath& d, double* asymmetry_out = nullptr);

struct DefectReport {
  HalfInt mu_plus;     // boundary index of the half
  HalfInt mu_minus;    // boundary index of the reflected half
  HalfInt mu_loop;     // periodic index of the double
  int q_signature = 0;
  HalfInt defect;      // mu_plus + mu_minus - mu_loop - q_signature/2
  bool pass = false;
  bool perturbed = false;  // a retry with a small generic pre-segment was used
};

/// Checks the index identity
///   mu_plus + mu_minus - mu_loop = sign(Q)/2
/// on nondegenerate data; throws NONDEGENERACY naming the failing
/// precondition otherwise.
DefectReport verify_index_theorem(const HalfPathData& h, const IndexOpts& opts = {});

/// Lemma-level check: boundary indices of the half and its reflection agree.
bool verify_reflection(const HalfPathData& h, const IndexOpts& opts = {});

/// Diagonal doubling of a path phi on [0, 2] over (R^{2m}, omega_0):
/// Psi(t) = diag(phi_t, phi_{2-t} phi_2^{-1}) over (R^{4m}, omega (+) -omega)
/// with the factor-swap involution.
DoubledPath diagonal_double(const SymplecticPathSpec& phi);

struct DiagonalReport {
  int q_signature = 0;
  HalfInt mu_loop;       // periodic index of the doubled Psi on [0, 2]
  HalfInt mu_half;       // boundary index of Psi restricted to [0, 1] vs the diagonal
  HalfInt mu_periodic;   // periodic index of phi itself on [0, 2]
  bool sign_q_zero = false;
  bool loop_equals_twice_half = false;
  bool half_equals_factor_index = false;
  bool pass = false;
};

DiagonalReport verify_diagonal(const SymplecticPathSpec& phi, const IndexOpts& opts = {});

}  // namespace symidx
