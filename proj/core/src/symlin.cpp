#include "symidx/symlin.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <sstream>

namespace symidx {

namespace {

Mat standard_form_matrix(int n) {
  Mat j = Mat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = Mat::Identity(n, n);
  j.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
  return j;
}

void check_square_even(const Mat& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0)
    fail(ErrKind::DimensionMismatch,
         std::string(what) + " must be square of even dimension");
}

}  // namespace

SympSpace SympSpace::standard(int n) {
  SympSpace s;
  s.n = n;
  s.form = standard_form_matrix(n);
  return s;
}

SympSpace SympSpace::direct_sum(const SympSpace& a, const SympSpace& b,
                                int sign_a, int sign_b) {
  SympSpace s;
  s.n = a.n + b.n;
  s.form = Mat::Zero(2 * s.n, 2 * s.n);
  s.form.topLeftCorner(a.dim(), a.dim()) = sign_a * a.form;
  s.form.bottomRightCorner(b.dim(), b.dim()) = sign_b * b.form;
  return s;
}

double SympSpace::pairing(const Vec& u, const Vec& v) const {
  return u.dot(form * v);
}

Mat SympSpace::hamiltonian_matrix(const Mat& symmetric_generator) const {
  return form_inverse() * symmetric_generator;
}

Mat SympSpace::form_inverse() const {
  // form^2 = -1 for every space built from standard blocks; fall back to a
  // solve when a caller supplies a custom form.
  Mat sq = form * form + Mat::Identity(dim(), dim());
  if (sq.lpNorm<Eigen::Infinity>() < 1e-12) return -form;
  return form.inverse();
}

bool is_symplectic(const SympSpace& space, const Mat& m, double tol) {
  check_square_even(m, "symplectic candidate");
  if (m.rows() != space.dim())
    fail(ErrKind::DimensionMismatch, "matrix does not match the space dimension");
  return ((m.transpose() * space.form * m) - space.form).lpNorm<Eigen::Infinity>() <= tol;
}

void require_symplectic(const SympSpace& space, const Mat& m, double tol) {
  if (!is_symplectic(space, m, tol))
    fail(ErrKind::NotSymplectic, "matrix does not preserve the form");
}

bool is_anti_symplectic_involution(const SympSpace& space, const Mat& c, double tol) {
  check_square_even(c, "involution candidate");
  if (c.rows() != space.dim())
    fail(ErrKind::DimensionMismatch, "matrix does not match the space dimension");
  const bool anti =
      ((c.transpose() * space.form * c) + space.form).lpNorm<Eigen::Infinity>() <= tol;
  const bool invol =
      ((c * c) - Mat::Identity(c.rows(), c.cols())).lpNorm<Eigen::Infinity>() <= tol;
  return anti && invol;
}

void require_anti_symplectic_involution(const SympSpace& space, const Mat& c, double tol) {
  if (!is_anti_symplectic_involution(space, c, tol))
    fail(ErrKind::NotAntiSymplectic, "matrix is not an anti-symplectic involution");
}

bool is_lagrangian(const SympSpace& space, const LagrangianFrame& a, double tol) {
  if (a.columns.rows() != space.dim() || a.columns.cols() != space.n) return false;
  const Mat q = orthonormalized(a.columns);
  if (q.cols() != space.n) return false;  // rank deficient
  return (q.transpose() * space.form * q).lpNorm<Eigen::Infinity>() <= tol;
}

LagrangianFrame graph_lagrangian(const SympSpace& space, const Mat& f, double tol) {
  require_symplectic(space, f, tol);
  Mat cols(2 * space.dim(), space.dim());
  cols.topRows(space.dim()) = f;
  cols.bottomRows(space.dim()) = Mat::Identity(space.dim(), space.dim());
  return LagrangianFrame{cols};
}

LagrangianFrame horizontal_frame(int n) {
  Mat cols = Mat::Zero(2 * n, n);
  cols.topRows(n) = Mat::Identity(n, n);
  return LagrangianFrame{cols};
}

LagrangianFrame diagonal_frame(int dim) {
  Mat cols(2 * dim, dim);
  cols.topRows(dim) = Mat::Identity(dim, dim);
  cols.bottomRows(dim) = Mat::Identity(dim, dim);
  return LagrangianFrame{cols};
}

LagrangianFrame lagrangian_complement(const SympSpace& space, const LagrangianFrame& a) {
  return LagrangianFrame{space.form * a.columns};
}

Mat conjugation_involution(int n) {
  Mat c = Mat::Identity(2 * n, 2 * n);
  c.bottomRightCorner(n, n) = -Mat::Identity(n, n);
  return c;
}

Mat swap_involution(int m2) {
  Mat c = Mat::Zero(2 * m2, 2 * m2);
  c.topRightCorner(m2, m2) = Mat::Identity(m2, m2);
  c.bottomLeftCorner(m2, m2) = Mat::Identity(m2, m2);
  return c;
}

int intersection_dimension(const LagrangianFrame& a, const LagrangianFrame& b,
                           double tol) {
  if (a.columns.rows() != b.columns.rows())
    fail(ErrKind::DimensionMismatch, "frames live in different spaces");
  const Mat qa = orthonormalized(a.columns);
  const Mat qb = orthonormalized(b.columns);
  Mat cat(qa.rows(), qa.cols() + qb.cols());
  cat << qa, qb;
  Eigen::JacobiSVD<Mat> svd(cat);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol) ++rank;
  return static_cast<int>(cat.cols()) - rank;
}

Mat intersection_basis(const LagrangianFrame& a, const LagrangianFrame& b, double tol) {
  const Mat qa = orthonormalized(a.columns);
  const Mat qb = orthonormalized(b.columns);
  Mat cat(qa.rows(), qa.cols() + qb.cols());
  cat << qa, qb;
  Eigen::JacobiSVD<Mat> svd(cat, Eigen::ComputeFullV);
  std::vector<int> null_idx;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] <= tol) null_idx.push_back(i);
  if (null_idx.empty()) return Mat(qa.rows(), 0);
  Mat vecs(qa.rows(), static_cast<Eigen::Index>(null_idx.size()));
  for (size_t k = 0; k < null_idx.size(); ++k) {
    const Vec x = svd.matrixV().col(null_idx[k]).head(qa.cols());
    vecs.col(static_cast<Eigen::Index>(k)) = qa * x;
  }
  return orthonormalized(vecs);
}

SignatureReport signature(const QuadraticForm& q, double tol) {
  if (q.matrix.rows() != q.matrix.cols())
    fail(ErrKind::DimensionMismatch, "form matrix is not square");
  if ((q.matrix - q.matrix.transpose()).lpNorm<Eigen::Infinity>() > 1e-8)
    fail(ErrKind::Internal, "form matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (q.matrix + q.matrix.transpose()),
                                        Eigen::EigenvaluesOnly);
  SignatureReport rep;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()[i];
    if (ev > tol)
      ++rep.signature;
    else if (ev < -tol)
      --rep.signature;
    else
      ++rep.degeneracy;
  }
  return rep;
}

int signature_nondegenerate(const QuadraticForm& q, double tol) {
  const SignatureReport rep = signature(q, tol);
  if (rep.degeneracy > 0)
    fail(ErrKind::Degenerate, "quadratic form has " + std::to_string(rep.degeneracy) +
                                  " near-zero eigenvalue(s)");
  return rep.signature;
}

Mat conjugate_symplectic(const SympSpace& space, const Mat& c, const Mat& f, double tol) {
  require_anti_symplectic_involution(space, c, tol);
  require_symplectic(space, f, tol);
  Mat g = c * f * c;
  require_symplectic(space, g, std::max(tol, 1e-7));
  return g;
}

Mat random_symmetric(Rng& rng, int dim, double amplitude) {
  Mat s(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      const double v = rng.uniform(-amplitude, amplitude);
      s(i, j) = v;
      s(j, i) = v;
    }
  return s;
}

Mat random_symplectic(const SympSpace& space, Rng& rng, double amplitude) {
  const Mat s = random_symmetric(rng, space.dim(), amplitude);
  return matrix_exp(space.hamiltonian_matrix(s));
}

namespace {

/// Greedy isotropic completion from the standard basis. For the standard form
/// this recovers the horizontal x-plane; for product forms with sign twists
/// the x-plane is not isotropic and the seed must come from the form itself.
Mat lagrangian_seed(const SympSpace& space) {
  const int d = space.dim();
  Mat q = Mat::Zero(d, space.n);
  int got = 0;
  for (int i = 0; i < d && got < space.n; ++i) {
    Vec v = Vec::Unit(d, i);
    if (got > 0) {
      Mat b(d, 2 * got);
      b << q.leftCols(got), space.form * q.leftCols(got);
      const Mat ob = orthonormalized(b);
      v -= ob * (ob.transpose() * v);
    }
    if (v.norm() < 1e-6) continue;
    q.col(got++) = v / v.norm();
  }
  if (got < space.n) fail(ErrKind::Internal, "isotropic completion stalled");
  return q;
}

}  // namespace

LagrangianFrame random_lagrangian(const SympSpace& space, Rng& rng, double amplitude) {
  const Mat g = random_symplectic(space, rng, amplitude);
  return LagrangianFrame{g * lagrangian_seed(space)};
}

Mat matrix_exp(const Mat& a) { return a.exp(); }

Mat orthonormalized(const Mat& a) {
  if (a.cols() == 0) return a;
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ() * Mat::Identity(a.rows(), a.cols());
  return q;
}

}  // namespace symidx
