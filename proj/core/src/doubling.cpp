#include "symidx/doubling.hpp"

namespace symidx {

namespace {

// Fixed generic symmetric direction used for the one-shot regularizing
// perturbation; seeded once so every run retries identically.
Mat generic_direction(int dim) {
  Rng rng(0x5EEDED5EEDED5EEDULL);
  return random_symmetric(rng, dim, 1.0);
}

void require_starts_at_identity(const SymplecticPathSpec& spec) {
  const Mat s = spec.start_or_identity();
  if ((s - Mat::Identity(s.rows(), s.cols())).lpNorm<Eigen::Infinity>() > 1e-9)
    fail(ErrKind::OutOfRange, "path must start at the identity");
}

/// Segments of t -> c F(T - t) X c for the involution c, as conjugated,
/// time-reversed generators: (S, d) -> (c^T S c, d) in reverse order.
std::vector<PathSegment> mirrored_segments(const SymplecticPathSpec& spec, const Mat& c) {
  std::vector<PathSegment> out;
  for (auto it = spec.segments.rbegin(); it != spec.segments.rend(); ++it)
    out.push_back({Mat(c.transpose() * it->generator * c), it->duration});
  return out;
}

double min_singular(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().minCoeff();
}

}  // namespace

Mat HalfPathData::involution_or_default() const {
  if (involution.size() == 0) return conjugation_involution(half.space.n);
  return involution;
}

DoubledPath double_path(const HalfPathData& h) {
  const SympSpace& space = h.half.space;
  const Mat c = h.involution_or_default();
  require_anti_symplectic_involution(space, c, 1e-7);
  require_starts_at_identity(h.half);

  PathEvaluator ev(h.half);
  const Mat f1 = ev(ev.duration());

  DoubledPath d;
  d.involution = c;
  d.full.space = space;
  d.full.start = Mat::Identity(space.dim(), space.dim());
  d.full.segments = h.half.segments;
  const auto mirrored = mirrored_segments(h.half, c);
  d.full.segments.insert(d.full.segments.end(), mirrored.begin(), mirrored.end());
  d.monodromy = c * f1.inverse() * c * f1;
  return d;
}

SymplecticPathSpec reflected_half(const HalfPathData& h) {
  const SympSpace& space = h.half.space;
  const Mat c = h.involution_or_default();
  require_anti_symplectic_involution(space, c, 1e-7);
  require_starts_at_identity(h.half);
  SymplecticPathSpec out;
  out.space = space;
  out.start = Mat::Identity(space.dim(), space.dim());
  out.segments = mirrored_segments(h.half, c);
  return out;
}

QuadraticForm defect_form(const DoubledPath& d, double* asymmetry_out) {
  const SympSpace& space = d.full.space;
  const Mat one = Mat::Identity(space.dim(), space.dim());
  const Mat raw = (one - d.monodromy).transpose() * space.form * d.involution;
  if (asymmetry_out) *asymmetry_out = 0.5 * (raw - raw.transpose()).lpNorm<Eigen::Infinity>();
  return QuadraticForm{0.5 * (raw + raw.transpose()), Mat::Identity(space.dim(), space.dim())};
}

namespace {

DefectReport verify_index_theorem_once(const HalfPathData& h, const IndexOpts& opts) {
  const SympSpace& space = h.half.space;
  const Mat c = h.involution_or_default();
  PathEvaluator ev(h.half);
  const Mat f1 = ev(ev.duration());
  const LagrangianFrame rn = horizontal_frame(space.n);

  const Mat f1_minus = c * f1.inverse() * c;
  if (intersection_dimension(LagrangianFrame{f1 * rn.columns}, rn, opts.tol) > 0)
    fail(ErrKind::Nondegeneracy, "F_1 R^n meets R^n");
  if (intersection_dimension(LagrangianFrame{f1_minus * rn.columns}, rn, opts.tol) > 0)
    fail(ErrKind::Nondegeneracy, "reflected endpoint F^-_1 R^n meets R^n");

  const DoubledPath d = double_path(h);
  if (min_singular(Mat::Identity(space.dim(), space.dim()) - d.monodromy) <= opts.tol)
    fail(ErrKind::Nondegeneracy, "monodromy has eigenvalue 1");

  const QuadraticForm q = defect_form(d);
  const SignatureReport q_rep = signature(q, opts.tol);
  if (q_rep.degeneracy > 0) fail(ErrKind::Nondegeneracy, "defect form Q is degenerate");

  DefectReport rep;
  rep.mu_plus = cz_lagrangian(h.half, opts).value;
  rep.mu_minus = cz_lagrangian(reflected_half(h), opts).value;
  rep.mu_loop = cz_periodic(d.full, opts).value;
  rep.q_signature = q_rep.signature;
  rep.defect = rep.mu_plus + rep.mu_minus - rep.mu_loop - HalfInt::from_twice(q_rep.signature);
  rep.pass = rep.defect == HalfInt{};
  return rep;
}

HalfPathData perturbed_copy(const HalfPathData& h, double eps) {
  HalfPathData p = h;
  PathSegment lead{generic_direction(h.half.space.dim()), eps};
  p.half.segments.insert(p.half.segments.begin(), lead);
  return p;
}

}  // namespace

DefectReport verify_index_theorem(const HalfPathData& h, const IndexOpts& opts) {
  try {
    return verify_index_theorem_once(h, opts);
  } catch (const Error& e) {
    if (e.kind() != ErrKind::IrregularCrossing && e.kind() != ErrKind::Unresolved) throw;
    DefectReport rep = verify_index_theorem_once(perturbed_copy(h, 1e-4), opts);
    rep.perturbed = true;
    return rep;
  }
}

bool verify_reflection(const HalfPathData& h, const IndexOpts& opts) {
  const HalfInt plus = cz_lagrangian(h.half, opts).value;
  HalfPathData refl = h;
  refl.half = reflected_half(h);
  const HalfInt minus = cz_lagrangian(refl.half, opts).value;
  return plus == minus;
}

DoubledPath diagonal_double(const SymplecticPathSpec& phi) {
  require_starts_at_identity(phi);
  PathEvaluator ev(phi);
  const double T = ev.duration();
  const int d2 = phi.space.dim();

  std::vector<double> cuts = ev.breakpoints();
  for (double t : ev.breakpoints()) cuts.push_back(T - t);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double x, double y) { return std::abs(x - y) < 1e-13; }),
             cuts.end());

  DoubledPath out;
  out.involution = swap_involution(d2);
  out.full.space = SympSpace::direct_sum(phi.space, phi.space, 1, -1);
  out.full.start = Mat::Identity(2 * d2, 2 * d2);
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    Mat s = Mat::Zero(2 * d2, 2 * d2);
    s.topLeftCorner(d2, d2) = ev.generator_right(mid);
    // Second factor runs phi backwards; in the sign-reversed block the
    // generator is the original one evaluated at T - t.
    s.bottomRightCorner(d2, d2) = ev.generator_right(T - mid);
    out.full.segments.push_back({s, cuts[i + 1] - cuts[i]});
  }
  const Mat phi2 = ev(T);
  Mat monodromy = Mat::Zero(2 * d2, 2 * d2);
  monodromy.topLeftCorner(d2, d2) = phi2;
  monodromy.bottomRightCorner(d2, d2) = phi2.inverse();
  out.monodromy = monodromy;
  return out;
}

DiagonalReport verify_diagonal(const SymplecticPathSpec& phi, const IndexOpts& opts) {
  PathEvaluator ev(phi);
  const double T = ev.duration();
  const Mat phi2 = ev(T);
  if (min_singular(Mat::Identity(phi2.rows(), phi2.cols()) - phi2) <= opts.tol)
    fail(ErrKind::Nondegeneracy, "endpoint phi_2 has eigenvalue 1");

  const DoubledPath d = diagonal_double(phi);

  DiagonalReport rep;
  const QuadraticForm q = defect_form(d);
  const SignatureReport q_rep = signature(q, opts.tol);
  if (q_rep.degeneracy > 0) fail(ErrKind::Nondegeneracy, "diagonal defect form is degenerate");
  rep.q_signature = q_rep.signature;
  rep.sign_q_zero = q_rep.signature == 0;

  rep.mu_loop = cz_periodic(d.full, opts).value;
  const LagrangianFrame diag = diagonal_frame(phi.space.dim());
  rep.mu_half = cz_lagrangian(subpath(d.full, 0.0, 0.5 * T), opts, &diag).value;
  rep.mu_periodic = cz_periodic(phi, opts).value;

  rep.loop_equals_twice_half = rep.mu_loop == 2 * rep.mu_half;
  rep.half_equals_factor_index = rep.mu_half == rep.mu_periodic;
  rep.pass = rep.sign_q_zero && rep.loop_equals_twice_half && rep.half_equals_factor_index;
  return rep;
}

}  // namespace symidx
