#include "symidx/maslov.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace symidx {

namespace {

std::string fmt_time(double t) {
  std::ostringstream os;
  os.precision(12);
  os << t;
  return os.str();
}

void check_symmetric(const Mat& s, double tol = 1e-10) {
  if (s.rows() != s.cols())
    fail(ErrKind::DimensionMismatch, "generator is not square");
  if ((s - s.transpose()).lpNorm<Eigen::Infinity>() > tol)
    fail(ErrKind::Internal, "generator is not symmetric");
}

}  // namespace

double SymplecticPathSpec::total_duration() const {
  double t = 0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

Mat SymplecticPathSpec::start_or_identity() const {
  if (start.size() == 0) return Mat::Identity(space.dim(), space.dim());
  return start;
}

SymplecticPathSpec SymplecticPathSpec::single(int n, const Mat& generator,
                                              double duration) {
  SymplecticPathSpec spec;
  spec.space = SympSpace::standard(n);
  spec.segments.push_back({generator, duration});
  return spec;
}

PathEvaluator::PathEvaluator(const SymplecticPathSpec& spec) : spec_(&spec) {
  if (spec.segments.empty())
    fail(ErrKind::OutOfRange, "path needs at least one segment");
  const int d = spec.space.dim();
  const Mat omega_inv = spec.space.form_inverse();
  breaks_.push_back(0.0);
  prefix_.push_back(spec.start_or_identity());
  if (prefix_.back().rows() != d)
    fail(ErrKind::DimensionMismatch, "start matrix does not match the space");
  for (const auto& seg : spec.segments) {
    if (!(seg.duration > 0))
      fail(ErrKind::OutOfRange, "segment duration must be positive");
    if (seg.generator.rows() != d)
      fail(ErrKind::DimensionMismatch, "generator does not match the space");
    check_symmetric(seg.generator);
    ham_.push_back(omega_inv * seg.generator);
    prefix_.push_back(matrix_exp(seg.duration * ham_.back()) * prefix_.back());
    breaks_.push_back(breaks_.back() + seg.duration);
  }
}

int PathEvaluator::segment_right(double t) const {
  const int k = static_cast<int>(
      std::upper_bound(breaks_.begin(), breaks_.end(), t) - breaks_.begin() - 1);
  return std::clamp(k, 0, static_cast<int>(ham_.size()) - 1);
}

int PathEvaluator::segment_left(double t) const {
  const int k = static_cast<int>(
      std::lower_bound(breaks_.begin(), breaks_.end(), t) - breaks_.begin() - 1);
  return std::clamp(k, 0, static_cast<int>(ham_.size()) - 1);
}

Mat PathEvaluator::operator()(double t) const {
  const double T = duration();
  const double slack = 1e-9 * std::max(1.0, T);
  if (t < -slack || t > T + slack)
    fail(ErrKind::OutOfRange, "time " + fmt_time(t) + " outside [0, " + fmt_time(T) + "]");
  t = std::clamp(t, 0.0, T);
  const int k = segment_right(t);
  return matrix_exp((t - breaks_[k]) * ham_[k]) * prefix_[k];
}

Mat PathEvaluator::generator_left(double t) const {
  return spec_->segments[segment_left(t)].generator;
}

Mat PathEvaluator::generator_right(double t) const {
  return spec_->segments[segment_right(t)].generator;
}

// --- crossing detection ----------------------------------------------------

namespace {

/// Shared scan problem: two moving Lagrangians with a relative one-sided
/// generator (S1 - S2 restricted to the intersection is the crossing form).
struct MovingPair {
  const SympSpace* space;
  std::function<Mat(double)> frame1;
  std::function<Mat(double)> frame2;
  std::function<Mat(double, int)> rel_gen;  // side: -1 left, +1 right
  std::vector<double> breakpoints;
  double duration;
};

/// Smallest singular value of the concatenated orthonormalized frames;
/// continuous in t, zero exactly at intersections, scale-free.
double gap_value(const MovingPair& mp, double t) {
  const Mat q1 = orthonormalized(mp.frame1(t));
  const Mat q2 = orthonormalized(mp.frame2(t));
  Mat cat(q1.rows(), q1.cols() + q2.cols());
  cat << q1, q2;
  Eigen::JacobiSVD<Mat> svd(cat);
  return svd.singularValues().minCoeff();
}

std::pair<double, double> golden_min(const MovingPair& mp, double a, double b) {
  const double gr = 0.6180339887498949;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = gap_value(mp, c), fd = gap_value(mp, d);
  const double width_tol = 1e-14 * std::max(1.0, mp.duration);
  for (int k = 0; k < 200 && (b - a) > width_tol; ++k) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a);
      fc = gap_value(mp, c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a);
      fd = gap_value(mp, d);
    }
  }
  const double t = 0.5 * (a + b);
  return {t, gap_value(mp, t)};
}

/// Boundary of the crossing set between an outside point and an inside one.
double bisect_edge(const MovingPair& mp, double outside, double inside, double accept) {
  for (int k = 0; k < 80 && std::abs(inside - outside) > 1e-14; ++k) {
    const double mid = 0.5 * (outside + inside);
    if (gap_value(mp, mid) <= accept)
      inside = mid;
    else
      outside = mid;
  }
  return inside;
}

struct Hit {
  double enter, exit;
  bool plateau;
};

std::vector<Hit> detect_hits(const MovingPair& mp, const IndexOpts& opts) {
  const double T = mp.duration;
  std::vector<double> ts;
  ts.reserve(opts.grid + 8);
  for (int i = 0; i <= opts.grid; ++i)
    ts.push_back(T * static_cast<double>(i) / opts.grid);
  for (double b : mp.breakpoints)
    if (b > 0 && b < T) ts.push_back(b);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [&](double a, double b) { return std::abs(a - b) < 1e-14 * std::max(1.0, T); }),
           ts.end());

  const size_t m = ts.size();
  std::vector<double> g(m);
  for (size_t i = 0; i < m; ++i) g[i] = gap_value(mp, ts[i]);
  const double accept = opts.tol;
  std::vector<char> isx(m);
  for (size_t i = 0; i < m; ++i) isx[i] = g[i] <= accept;

  std::vector<Hit> hits;
  size_t i = 0;
  while (i < m) {
    if (!isx[i]) { ++i; continue; }
    size_t j = i;
    while (j + 1 < m && isx[j + 1]) ++j;
    if (j == i) {
      hits.push_back({ts[i], ts[i], false});
    } else {
      double enter = ts[i], exit = ts[j];
      if (i > 0) enter = bisect_edge(mp, ts[i - 1], ts[i], accept);
      if (j + 1 < m) exit = bisect_edge(mp, ts[j + 1], ts[j], accept);
      hits.push_back({enter, exit, true});
    }
    i = j + 1;
  }

  // Near-tangential zeros do not change sign of anything scannable, so all
  // remaining crossings are caught as dips of the gap function.
  for (i = 1; i + 1 < m; ++i) {
    if (isx[i - 1] || isx[i] || isx[i + 1]) continue;
    if (g[i] <= g[i - 1] && g[i] <= g[i + 1] && g[i] < 0.5) {
      const auto [t0, v0] = golden_min(mp, ts[i - 1], ts[i + 1]);
      if (v0 <= accept) {
        hits.push_back({t0, t0, false});
      } else if (v0 <= 3e-7) {
        // Too deep to certify as a miss, too shallow to certify as a
        // crossing: the frames' conditioning has eaten the margin.
        fail(ErrKind::Unresolved, "gap dip at t=" + fmt_time(t0) + " bottoms out at " +
                                      std::to_string(v0) +
                                      ", between the crossing tolerance and the miss margin");
      }
    }
  }

  std::sort(hits.begin(), hits.end(),
            [](const Hit& a, const Hit& b) { return a.enter < b.enter; });
  const double resolution = T / opts.grid;
  std::vector<Hit> merged;
  for (const auto& h : hits) {
    if (!merged.empty()) {
      Hit& prev = merged.back();
      const double sep = h.enter - prev.exit;
      if (sep < resolution) {
        if (!h.plateau && !prev.plateau && sep < 1e-9 * std::max(1.0, T)) {
          continue;  // duplicate detection of the same point crossing
        }
        fail(ErrKind::Unresolved,
             "crossings at t=" + fmt_time(prev.exit) + " and t=" + fmt_time(h.enter) +
                 " closer than the grid resolution");
      }
    }
    merged.push_back(h);
  }
  return merged;
}

std::vector<Crossing> crossings_with_forms(const MovingPair& mp, const IndexOpts& opts) {
  const double T = mp.duration;
  const double edge_eps = 1e-9 * std::max(1.0, T);
  std::vector<Crossing> out;
  for (const Hit& h : detect_hits(mp, opts)) {
    Crossing c;
    c.time = h.enter;
    c.time_exit = h.exit;
    c.plateau = h.plateau;
    c.basis = intersection_basis(LagrangianFrame{mp.frame1(h.enter)},
                                 LagrangianFrame{mp.frame2(h.enter)}, opts.tol);
    if (c.basis.cols() == 0)
      fail(ErrKind::Internal, "detected crossing with empty intersection at t=" +
                                  fmt_time(h.enter));
    c.dim = static_cast<int>(c.basis.cols());

    bool degenerate_side = false;
    if (h.enter > edge_eps) {
      const Mat s = mp.rel_gen(h.enter, -1);
      Mat gamma = c.basis.transpose() * s * c.basis;
      gamma = 0.5 * (gamma + gamma.transpose()).eval();
      QuadraticForm q{gamma, c.basis};
      const SignatureReport rep = signature(q, opts.tol);
      c.form_left = q;
      c.sign_left = rep.signature;
      if (rep.degeneracy > 0) degenerate_side = true;
    }
    if (h.exit < T - edge_eps) {
      Mat basis_exit = c.basis;
      if (h.plateau)
        basis_exit = intersection_basis(LagrangianFrame{mp.frame1(h.exit)},
                                        LagrangianFrame{mp.frame2(h.exit)}, opts.tol);
      const Mat s = mp.rel_gen(h.exit, +1);
      Mat gamma = basis_exit.transpose() * s * basis_exit;
      gamma = 0.5 * (gamma + gamma.transpose()).eval();
      QuadraticForm q{gamma, basis_exit};
      const SignatureReport rep = signature(q, opts.tol);
      c.form_right = q;
      c.sign_right = rep.signature;
      if (rep.degeneracy > 0) degenerate_side = true;
    }
    if (!c.form_left && !c.form_right) degenerate_side = true;  // whole-path plateau
    c.regular = !degenerate_side;
    c.contribution_twice = c.sign_left + c.sign_right;
    out.push_back(std::move(c));
  }
  return out;
}

HalfInt sum_contributions(const std::vector<Crossing>& xs) {
  long long twice = 0;
  for (const auto& c : xs) {
    if (!c.regular)
      fail(ErrKind::IrregularCrossing,
           "degenerate crossing form at t=" + fmt_time(c.time));
    twice += c.contribution_twice;
  }
  return HalfInt::from_twice(twice);
}

MovingPair make_fixed_pair(std::shared_ptr<PathEvaluator> ev, const LagrangianFrame& seed,
                           const LagrangianFrame& reference) {
  const SympSpace& space = ev->spec().space;
  if (seed.columns.rows() != space.dim() || reference.columns.rows() != space.dim())
    fail(ErrKind::DimensionMismatch, "frames do not match the path space");
  if (seed.columns.cols() != space.n || reference.columns.cols() != space.n)
    fail(ErrKind::DimensionMismatch, "frames are not half-dimensional");
  MovingPair mp;
  mp.space = &space;
  Mat seed_cols = seed.columns;
  Mat ref_cols = reference.columns;
  mp.frame1 = [ev, seed_cols](double t) { return Mat((*ev)(t)*seed_cols); };
  mp.frame2 = [ref_cols](double) { return ref_cols; };
  mp.rel_gen = [ev](double t, int side) {
    return side < 0 ? ev->generator_left(t) : ev->generator_right(t);
  };
  mp.breakpoints = ev->breakpoints();
  mp.duration = ev->duration();
  return mp;
}

}  // namespace

std::vector<Crossing> find_crossings(const LagrangianPath& path,
                                     const LagrangianFrame& reference,
                                     const IndexOpts& opts) {
  auto ev = std::make_shared<PathEvaluator>(path.carrier);
  return crossings_with_forms(make_fixed_pair(ev, path.seed, reference), opts);
}

QuadraticForm crossing_form(const LagrangianPath& path, const LagrangianFrame& reference,
                            double t0, int side, double tol) {
  PathEvaluator ev(path.carrier);
  const Mat frame_t0 = ev(t0) * path.seed.columns;
  const Mat basis = intersection_basis(LagrangianFrame{frame_t0}, reference, tol);
  if (basis.cols() == 0)
    fail(ErrKind::Degenerate, "no intersection at t=" + fmt_time(t0));
  const Mat s = side < 0 ? ev.generator_left(t0) : ev.generator_right(t0);
  Mat gamma = basis.transpose() * s * basis;
  gamma = 0.5 * (gamma + gamma.transpose()).eval();
  return QuadraticForm{gamma, basis};
}

QuadraticForm crossing_form_via_complement(const LagrangianPath& path,
                                           const LagrangianFrame& reference, double t0,
                                           const LagrangianFrame& complement,
                                           double tol) {
  PathEvaluator ev(path.carrier);
  const SympSpace& space = path.carrier.space;
  const Mat frame_t0 = ev(t0) * path.seed.columns;
  const Mat basis = intersection_basis(LagrangianFrame{frame_t0}, reference, tol);
  if (basis.cols() == 0)
    fail(ErrKind::Degenerate, "no intersection at t=" + fmt_time(t0));
  const Mat lam = orthonormalized(frame_t0);
  Mat split(space.dim(), space.dim());
  split << lam, complement.columns;
  const auto lu = split.partialPivLu();
  if (std::abs(lu.determinant()) < 1e-12)
    fail(ErrKind::Transversality, "complement is not transverse to the path");
  const Mat a = space.hamiltonian_matrix(ev.generator_right(t0));
  const int k = static_cast<int>(basis.cols());
  Mat gamma(k, k);
  for (int j = 0; j < k; ++j) {
    const Vec coeffs = lu.solve(a * basis.col(j));
    const Vec w_dot = complement.columns * coeffs.tail(space.n);
    for (int i = 0; i < k; ++i) gamma(i, j) = space.pairing(basis.col(i), w_dot);
  }
  gamma = 0.5 * (gamma + gamma.transpose()).eval();
  return QuadraticForm{gamma, basis};
}

HalfInt maslov_index(const LagrangianPath& path, const LagrangianFrame& reference,
                     const IndexOpts& opts, std::vector<Crossing>* crossings_out) {
  auto ev = std::make_shared<PathEvaluator>(path.carrier);
  auto xs = crossings_with_forms(make_fixed_pair(ev, path.seed, reference), opts);
  const HalfInt result = sum_contributions(xs);
  if (crossings_out) *crossings_out = std::move(xs);
  return result;
}

HalfInt maslov_index_pair(const LagrangianPath& path1, const LagrangianPath& path2,
                          const IndexOpts& opts, std::vector<Crossing>* crossings_out) {
  auto ev1 = std::make_shared<PathEvaluator>(path1.carrier);
  auto ev2 = std::make_shared<PathEvaluator>(path2.carrier);
  if (path1.carrier.space.dim() != path2.carrier.space.dim())
    fail(ErrKind::DimensionMismatch, "paths live in different spaces");
  if (std::abs(ev1->duration() - ev2->duration()) > 1e-12)
    fail(ErrKind::DimensionMismatch, "paths have different durations");
  MovingPair mp;
  mp.space = &path1.carrier.space;
  Mat seed1 = path1.seed.columns, seed2 = path2.seed.columns;
  mp.frame1 = [ev1, seed1](double t) { return Mat((*ev1)(t)*seed1); };
  mp.frame2 = [ev2, seed2](double t) { return Mat((*ev2)(t)*seed2); };
  mp.rel_gen = [ev1, ev2](double t, int side) {
    return side < 0 ? Mat(ev1->generator_left(t) - ev2->generator_left(t))
                    : Mat(ev1->generator_right(t) - ev2->generator_right(t));
  };
  mp.breakpoints = ev1->breakpoints();
  for (double b : ev2->breakpoints()) mp.breakpoints.push_back(b);
  mp.duration = ev1->duration();
  auto xs = crossings_with_forms(mp, opts);
  const HalfInt result = sum_contributions(xs);
  if (crossings_out) *crossings_out = std::move(xs);
  return result;
}

// --- path algebra ----------------------------------------------------------

SymplecticPathSpec subpath(const SymplecticPathSpec& spec, double a, double b) {
  PathEvaluator ev(spec);
  const double T = ev.duration();
  if (a < -1e-12 || b > T + 1e-12 || !(a < b))
    fail(ErrKind::OutOfRange, "invalid subpath window");
  SymplecticPathSpec out;
  out.space = spec.space;
  out.start = ev(a);
  double t0 = 0;
  for (const auto& seg : spec.segments) {
    const double lo = std::max(a, t0), hi = std::min(b, t0 + seg.duration);
    if (hi - lo > 1e-13) out.segments.push_back({seg.generator, hi - lo});
    t0 += seg.duration;
  }
  if (out.segments.empty())
    fail(ErrKind::OutOfRange, "subpath window does not meet any segment");
  return out;
}

SymplecticPathSpec reverse_path(const SymplecticPathSpec& spec) {
  PathEvaluator ev(spec);
  SymplecticPathSpec out;
  out.space = spec.space;
  out.start = ev(ev.duration());
  for (auto it = spec.segments.rbegin(); it != spec.segments.rend(); ++it)
    out.segments.push_back({Mat(-it->generator), it->duration});
  return out;
}

SymplecticPathSpec conjugate_path(const SymplecticPathSpec& spec, const Mat& g) {
  require_symplectic(spec.space, g, 1e-7);
  const Mat gi = g.inverse();
  SymplecticPathSpec out;
  out.space = spec.space;
  out.start = g * spec.start_or_identity();
  for (const auto& seg : spec.segments)
    out.segments.push_back({Mat(gi.transpose() * seg.generator * gi), seg.duration});
  return out;
}

SymplecticPathSpec concatenate(const SymplecticPathSpec& a, const SymplecticPathSpec& b,
                               double tol) {
  PathEvaluator ea(a);
  const Mat end_a = ea(ea.duration());
  const Mat start_b = b.start_or_identity();
  if ((end_a - start_b).lpNorm<Eigen::Infinity>() > std::max(tol, 1e-7))
    fail(ErrKind::Mismatch, "second path does not start at the first path's endpoint");
  SymplecticPathSpec out;
  out.space = a.space;
  out.start = a.start_or_identity();
  out.segments = a.segments;
  out.segments.insert(out.segments.end(), b.segments.begin(), b.segments.end());
  return out;
}

SymplecticPathSpec direct_sum_paths(const SymplecticPathSpec& a,
                                    const SymplecticPathSpec& b, int sign_a,
                                    int sign_b) {
  PathEvaluator ea(a), eb(b);
  if (std::abs(ea.duration() - eb.duration()) > 1e-12)
    fail(ErrKind::DimensionMismatch, "direct sum requires equal durations");
  std::vector<double> cuts = ea.breakpoints();
  for (double t : eb.breakpoints()) cuts.push_back(t);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double x, double y) { return std::abs(x - y) < 1e-13; }),
             cuts.end());
  SymplecticPathSpec out;
  out.space = SympSpace::direct_sum(a.space, b.space, sign_a, sign_b);
  const int da = a.space.dim(), db = b.space.dim();
  Mat start = Mat::Zero(da + db, da + db);
  start.topLeftCorner(da, da) = a.start_or_identity();
  start.bottomRightCorner(db, db) = b.start_or_identity();
  out.start = start;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    Mat s = Mat::Zero(da + db, da + db);
    s.topLeftCorner(da, da) = ea.generator_right(mid);
    s.bottomRightCorner(db, db) = eb.generator_right(mid);
    out.segments.push_back({s, cuts[i + 1] - cuts[i]});
  }
  return out;
}

SymplecticPathSpec rescale_path(const SymplecticPathSpec& spec, double factor) {
  if (!(factor > 0)) fail(ErrKind::OutOfRange, "rescale factor must be positive");
  SymplecticPathSpec out;
  out.space = spec.space;
  out.start = spec.start;
  for (const auto& seg : spec.segments)
    out.segments.push_back({Mat(seg.generator / factor), seg.duration * factor});
  return out;
}

SymplecticPathSpec graph_path(const SymplecticPathSpec& spec) {
  SymplecticPathSpec out;
  out.space = SympSpace::direct_sum(spec.space, spec.space, 1, -1);
  const int d = spec.space.dim();
  Mat start = Mat::Zero(2 * d, 2 * d);
  start.topLeftCorner(d, d) = spec.start_or_identity();
  start.bottomRightCorner(d, d) = Mat::Identity(d, d);
  out.start = start;
  for (const auto& seg : spec.segments) {
    Mat s = Mat::Zero(2 * d, 2 * d);
    s.topLeftCorner(d, d) = seg.generator;
    out.segments.push_back({s, seg.duration});
  }
  return out;
}

}  // namespace symidx
