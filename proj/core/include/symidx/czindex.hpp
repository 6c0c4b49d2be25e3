#pragma once

#include "symidx/maslov.hpp"

namespace symidx {

/// Which index flavor an IndexReport carries.
enum class IndexFlavor { Lagrangian, Periodic };

struct IndexReport {
  HalfInt value;
  std::vector<Crossing> crossings;
  IndexFlavor flavor = IndexFlavor::Lagrangian;
};

/// Boundary-value Conley-Zehnder index: mu(F(t) R^n, R^n).
/// An optional reference replaces R^n (used by the diagonal construction,
/// whose fixed Lagrangian is the diagonal instead of the x-plane).
IndexReport cz_lagrangian(const SymplecticPathSpec& path, const IndexOpts& opts = {},
                          const LagrangianFrame* reference = nullptr);

/// Periodic Conley-Zehnder index: mu((F(t), 1) diag, diag) in the doubled
/// space with form Omega (+) (-Omega).
IndexReport cz_periodic(const SymplecticPathSpec& path, const IndexOpts& opts = {},
                        bool demand_nondegenerate_end = false);

/// Hormander index s(A, B; C, D) = mu(path, B) - mu(path, A) for a path
/// from C to D, realized as a single graph segment in a chart fixed by a
/// random auxiliary Lagrangian transverse to all four inputs.
HalfInt hormander(const SympSpace& space, const LagrangianFrame& a,
                  const LagrangianFrame& b, const LagrangianFrame& c,
                  const LagrangianFrame& d, Rng& rng, const IndexOpts& opts = {});

/// Closed-form route: with L, K, L' pairwise transverse, write L' as the
/// graph of f : K -> L and return half the signature of Q'(v) = Omega(v, f v)
/// on K.  Agrees with hormander(L, K, K, L').
HalfInt hormander_signature(const SympSpace& space, const LagrangianFrame& l,
                            const LagrangianFrame& k, const LagrangianFrame& lp,
                            double tol = kDefaultTol);

/// Path from C to D through the graph chart of an auxiliary Lagrangian T
/// with complement form*T: a single exponential shear segment.
/// Exposed for the path-independence suite.
SymplecticPathSpec chart_path(const SympSpace& space, const LagrangianFrame& c,
                              const LagrangianFrame& d, const LagrangianFrame& aux,
                              double tol = kDefaultTol);

}  // namespace symidx
