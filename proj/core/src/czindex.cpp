#include "symidx/czindex.hpp"

namespace symidx {

IndexReport cz_lagrangian(const SymplecticPathSpec& path, const IndexOpts& opts,
                          const LagrangianFrame* reference) {
  const LagrangianFrame ref =
      reference ? *reference : horizontal_frame(path.space.n);
  LagrangianPath lp{path, ref};
  IndexReport rep;
  rep.flavor = IndexFlavor::Lagrangian;
  rep.value = maslov_index(lp, ref, opts, &rep.crossings);
  return rep;
}

IndexReport cz_periodic(const SymplecticPathSpec& path, const IndexOpts& opts,
                        bool demand_nondegenerate_end) {
  if (demand_nondegenerate_end) {
    PathEvaluator ev(path);
    const Mat f_end = ev(ev.duration());
    const Mat gap = Mat::Identity(f_end.rows(), f_end.cols()) - f_end;
    Eigen::JacobiSVD<Mat> svd(gap);
    if (svd.singularValues().minCoeff() <= opts.tol)
      fail(ErrKind::DegenerateEndpoint, "endpoint has eigenvalue 1 within tolerance");
  }
  const SymplecticPathSpec doubled = graph_path(path);
  const LagrangianFrame diag = diagonal_frame(path.space.dim());
  LagrangianPath lp{doubled, diag};
  IndexReport rep;
  rep.flavor = IndexFlavor::Periodic;
  rep.value = maslov_index(lp, diag, opts, &rep.crossings);
  return rep;
}

namespace {

/// Symplectic basis [U | W] with U spanning aux's complement form*aux and W
/// spanning aux, normalized so that P^T Omega P is the standard form.
Mat chart_basis(const SympSpace& space, const LagrangianFrame& aux) {
  const Mat u = orthonormalized(space.form * aux.columns);
  Mat w = aux.columns;
  const Mat pairing_block = u.transpose() * space.form * w;
  w = w * pairing_block.inverse();
  Mat p(space.dim(), space.dim());
  p << u, w;
  return p;
}

/// Coordinates of a Lagrangian transverse to aux as a symmetric graph matrix
/// in the chart basis.
Mat graph_matrix(const SympSpace& space, const Mat& chart, const LagrangianFrame& l,
                 double tol) {
  const Mat coords = chart.partialPivLu().solve(l.columns);
  const Mat x = coords.topRows(space.n);
  const Mat y = coords.bottomRows(space.n);
  const auto lu = x.transpose().partialPivLu();
  if (std::abs(lu.determinant()) < tol)
    fail(ErrKind::Transversality, "input Lagrangian is not transverse to the chart");
  Mat g = lu.solve(y.transpose()).transpose();  // g = y x^{-1}
  return 0.5 * (g + g.transpose()).eval();
}

/// sin of the smallest principal angle between two spans; the quantitative
/// version of transversality used to keep charts well conditioned.
double frame_gap(const Mat& x, const Mat& y) {
  const Mat qx = orthonormalized(x);
  const Mat qy = orthonormalized(y);
  Mat cat(qx.rows(), qx.cols() + qy.cols());
  cat << qx, qy;
  Eigen::JacobiSVD<Mat> svd(cat);
  return svd.singularValues().minCoeff();
}

}  // namespace

SymplecticPathSpec chart_path(const SympSpace& space, const LagrangianFrame& c,
                              const LagrangianFrame& d, const LagrangianFrame& aux,
                              double tol) {
  const Mat chart = chart_basis(space, aux);
  const Mat gc = graph_matrix(space, chart, c, tol);
  const Mat gd = graph_matrix(space, chart, d, tol);
  const Mat delta = gd - gc;
  Mat shear = Mat::Zero(space.dim(), space.dim());
  shear.bottomLeftCorner(space.n, space.n) = delta;
  const Mat n = chart * shear * chart.partialPivLu().solve(Mat::Identity(space.dim(), space.dim()));
  Mat s = space.form * n;
  s = 0.5 * (s + s.transpose()).eval();
  SymplecticPathSpec spec;
  spec.space = space;
  spec.segments.push_back({s, 1.0});
  spec.start = Mat::Identity(space.dim(), space.dim());
  return spec;
}

HalfInt hormander(const SympSpace& space, const LagrangianFrame& a,
                  const LagrangianFrame& b, const LagrangianFrame& c,
                  const LagrangianFrame& d, Rng& rng, const IndexOpts& opts) {
  if (intersection_dimension(c, d, opts.tol) == space.n) return HalfInt{};  // constant path

  // A reference frame that is nearly but not exactly parallel to a path
  // endpoint pins a crossing within numerical resolution of the endpoint;
  // whether it lands inside the parameter interval is then chart noise, so
  // refuse rather than return a coin flip.  Exact coincidences are fine: the
  // endpoint crossing machinery handles them one-sidedly.
  for (const LagrangianFrame* ref : {&a, &b})
    for (const LagrangianFrame* end : {&c, &d}) {
      const double gap = frame_gap(ref->columns, end->columns);
      if (gap > 10.0 * opts.tol && gap < 1e-4)
        fail(ErrKind::Unresolved,
             "reference frame nearly parallel to a path endpoint");
    }

  Error last(ErrKind::Internal, "unreachable");
  for (int attempt = 0; attempt < 64; ++attempt) {
    const LagrangianFrame aux = random_lagrangian(space, rng);
    // A margin, not mere transversality: a nearly tangent chart makes the
    // moving Lagrangian sweep too fast for the crossing scan to resolve.
    const double margin = 0.1;
    if (frame_gap(aux.columns, a.columns) < margin) continue;
    if (frame_gap(aux.columns, b.columns) < margin) continue;
    if (frame_gap(aux.columns, c.columns) < margin) continue;
    if (frame_gap(aux.columns, d.columns) < margin) continue;
    try {
      const SymplecticPathSpec path = chart_path(space, c, d, aux, opts.tol);
      // The scan resolves crossings only when the total angle swept stays
      // small next to the grid count; an ill-conditioned chart can hide a
      // full crossing between two samples at any fixed grid.
      const double swept = (space.form_inverse() * path.segments[0].generator)
                               .cwiseAbs()
                               .maxCoeff() *
                           path.segments[0].duration;
      if (swept > 0.02 * opts.grid) continue;
      const LagrangianPath lp{path, c};
      const HalfInt mu_b = maslov_index(lp, b, opts);
      const HalfInt mu_a = maslov_index(lp, a, opts);
      return mu_b - mu_a;
    } catch (const Error& e) {
      if (e.kind() != ErrKind::IrregularCrossing && e.kind() != ErrKind::Unresolved &&
          e.kind() != ErrKind::Transversality)
        throw;
      last = e;  // retry in a fresh chart
    }
  }
  fail(ErrKind::Transversality,
       std::string("no usable auxiliary Lagrangian after 64 attempts (") + last.what() +
           ")");
}

HalfInt hormander_signature(const SympSpace& space, const LagrangianFrame& l,
                            const LagrangianFrame& k, const LagrangianFrame& lp,
                            double tol) {
  if (intersection_dimension(l, k, tol) > 0 || intersection_dimension(l, lp, tol) > 0 ||
      intersection_dimension(k, lp, tol) > 0)
    fail(ErrKind::Transversality, "inputs are not pairwise transverse");

  // Decompose each L' column over [K | L]; v = K-part, f(v) = L-part.
  Mat split(space.dim(), space.dim());
  split << k.columns, l.columns;
  const Mat coords = split.partialPivLu().solve(lp.columns);
  const Mat ka = coords.topRows(space.n);     // K-coefficients
  const Mat lb = coords.bottomRows(space.n);  // L-coefficients
  const auto lu = ka.partialPivLu();
  if (std::abs(lu.determinant()) < 1e-12)
    fail(ErrKind::Transversality, "graph map is not invertible");
  // Q'(y) = Omega(K y, L * lb * ka^{-1} y) on K-coordinates y.
  const Mat f_coeff = lb * lu.solve(Mat::Identity(space.n, space.n)).eval();
  Mat q = k.columns.transpose() * space.form * l.columns * f_coeff;
  q = 0.5 * (q + q.transpose()).eval();
  const SignatureReport rep = signature(QuadraticForm{q, k.columns}, tol);
  if (rep.degeneracy > 0)
    fail(ErrKind::Degenerate, "signature form is degenerate");
  return HalfInt::from_twice(rep.signature);
}

}  // namespace symidx
