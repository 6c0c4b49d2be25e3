#pragma once

#include <Eigen/Dense>
#include <vector>

#include "symidx/errors.hpp"
#include "symidx/numeric.hpp"

namespace symidx {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

/// A real symplectic vector space (R^{2n}, omega).
///
/// Coordinates are ordered (x_1..x_n, y_1..y_n), identifying R^{2n} with C^n
/// via z = x + iy.  The standard form is fixed once and for all as
/// omega_0(z, w) = Im(conj(z) w), whose matrix is [[0, I], [-I, 0]].
/// Direct sums compose block-diagonally, with a sign per block; the doubled
/// form Omega_0 = omega_0 (+) (-omega_0) is standard(n).doubled_with(-1).
struct SympSpace {
  int n = 0;   // half dimension
  Mat form;    // 2n x 2n, antisymmetric, invertible

  static SympSpace standard(int n);

  /// Direct sum a (+) b with the given signs applied per block.
  static SympSpace direct_sum(const SympSpace& a, const SympSpace& b,
                              int sign_a = 1, int sign_b = 1);

  int dim() const { return 2 * n; }

  /// omega(u, v)
  double pairing(const Vec& u, const Vec& v) const;

  /// The linear Hamiltonian vector field of the quadratic Hamiltonian
  /// 1/2 v^T S v under the convention dH = -i_{X} omega: X = form^{-1} S.
  /// For the standard form this is multiplication by i when S = I.
  Mat hamiltonian_matrix(const Mat& symmetric_generator) const;

  Mat form_inverse() const;
};

/// A Lagrangian subspace given by a spanning 2n x n frame.  Frames are never
/// normalized; every predicate below is span-invariant.
struct LagrangianFrame {
  Mat columns;

  int rank_cols() const { return static_cast<int>(columns.cols()); }
};

/// Real symmetric form together with the frame it is expressed on.
struct QuadraticForm {
  Mat matrix;
  Mat basis;  // columns of the frame the matrix refers to (may be empty)
};

struct SignatureReport {
  int signature = 0;
  int degeneracy = 0;  // eigenvalues inside [-tol, tol]
};

// --- predicates -----------------------------------------------------------

bool is_symplectic(const SympSpace& space, const Mat& m, double tol = kDefaultTol);
void require_symplectic(const SympSpace& space, const Mat& m, double tol = kDefaultTol);

/// c^T omega c = -omega and c^2 = 1.
bool is_anti_symplectic_involution(const SympSpace& space, const Mat& c,
                                   double tol = kDefaultTol);
void require_anti_symplectic_involution(const SympSpace& space, const Mat& c,
                                        double tol = kDefaultTol);

bool is_lagrangian(const SympSpace& space, const LagrangianFrame& a,
                   double tol = kDefaultTol);

// --- constructions --------------------------------------------------------

/// The graph {(Fz, z)} of a symplectic F on (R^{2n}, omega_0), as a
/// Lagrangian frame in (R^{4n}, Omega_0 = omega_0 (+) (-omega_0)).
LagrangianFrame graph_lagrangian(const SympSpace& space, const Mat& f,
                                 double tol = kDefaultTol);

/// Frame of the x-plane R^n in (R^{2n}, omega_0).
LagrangianFrame horizontal_frame(int n);

/// Frame of the diagonal {(v, v)} in a doubled space.
LagrangianFrame diagonal_frame(int dim);

/// Canonical transverse Lagrangian complement: W = form * A.
LagrangianFrame lagrangian_complement(const SympSpace& space, const LagrangianFrame& a);

/// Coordinate conjugation c_z = diag(I, -I): anti-symplectic involution of
/// (R^{2n}, omega_0) fixing R^n.
Mat conjugation_involution(int n);

/// Factor swap (z1, z2) -> (z2, z1) on a doubled space of half dimension 2m.
Mat swap_involution(int m2);

// --- measurements ---------------------------------------------------------

/// dim(span A  intersect  span B); rank decided by singular values above tol
/// on orthonormalized frames.
int intersection_dimension(const LagrangianFrame& a, const LagrangianFrame& b,
                           double tol = kDefaultTol);

/// Orthonormal basis (2n x k) of span A intersect span B.
Mat intersection_basis(const LagrangianFrame& a, const LagrangianFrame& b,
                       double tol = kDefaultTol);

SignatureReport signature(const QuadraticForm& q, double tol = kDefaultTol);

/// Signature with degeneracy forbidden: throws DEGENERATE if any eigenvalue
/// lies within tol of zero.
int signature_nondegenerate(const QuadraticForm& q, double tol = kDefaultTol);

/// C * F * C for an anti-symplectic involution C; checks both the involution
/// property of C and symplecticity of F.
Mat conjugate_symplectic(const SympSpace& space, const Mat& c, const Mat& f,
                         double tol = kDefaultTol);

// --- randomized constructions (explicit generator, reproducible) ----------

Mat random_symmetric(Rng& rng, int dim, double amplitude = 1.0);

/// exp(form^{-1} S) for random symmetric S with entries uniform in
/// [-amplitude, amplitude]; exactly symplectic up to the exponential's
/// numerical error.
Mat random_symplectic(const SympSpace& space, Rng& rng, double amplitude = 1.0);

/// Random symplectic image of a seed Lagrangian built from the space's own
/// form; Lagrangian by construction even for sign-twisted product forms.
LagrangianFrame random_lagrangian(const SympSpace& space, Rng& rng,
                                  double amplitude = 1.0);

/// Matrix exponential (scaling-and-squaring via Eigen).
Mat matrix_exp(const Mat& a);

/// Orthonormal basis of the column span (thin QR with rank guard).
Mat orthonormalized(const Mat& a);

}  // namespace symidx
