#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "symidx/symlin.hpp"

namespace symidx {

/// Piecewise-exponential path of symplectic matrices.  On segment k the path
/// evolves as F(t) = exp((t - t_k) * form^{-1} S_k) * F(t_k), so the whole
/// path is determined by the symmetric generators and exact derivatives are
/// available at every time.
struct PathSegment {
  Mat generator;    // symmetric 2n x 2n
  double duration;  // > 0
};

struct SymplecticPathSpec {
  SympSpace space;
  std::vector<PathSegment> segments;
  Mat start;  // symplectic; identity if empty

  double total_duration() const;
  Mat start_or_identity() const;

  /// One-segment path in the standard space.
  static SymplecticPathSpec single(int n, const Mat& generator, double duration);
};

/// Caches segment-boundary matrices so repeated evaluation during crossing
/// scans costs one partial exponential per call.
class PathEvaluator {
public:
  explicit PathEvaluator(const SymplecticPathSpec& spec);

  Mat operator()(double t) const;

  /// Generator of the segment just left / right of t (clamped at the ends).
  Mat generator_left(double t) const;
  Mat generator_right(double t) const;

  const std::vector<double>& breakpoints() const { return breaks_; }
  double duration() const { return breaks_.back(); }
  const SymplecticPathSpec& spec() const { return *spec_; }

private:
  int segment_left(double t) const;
  int segment_right(double t) const;

  const SymplecticPathSpec* spec_;
  std::vector<double> breaks_;  // t_0 = 0 < ... < t_K = T
  std::vector<Mat> prefix_;     // F(t_k)
  std::vector<Mat> ham_;        // form^{-1} S_k
};

/// A path of Lagrangians obtained by pushing a seed frame along a path.
struct LagrangianPath {
  SymplecticPathSpec carrier;
  LagrangianFrame seed;
};

struct IndexOpts {
  double tol = kDefaultTol;
  int grid = 4096;
};

/// A time (or closed interval, for persistent intersections) at which the
/// moving Lagrangian meets the reference.  The crossing form is evaluated
/// one-sidedly: an interior crossing of a smooth arc has equal sides and
/// contributes sign(form); endpoints and plateau edges contribute half from
/// the present side only.
struct Crossing {
  double time = 0.0;       // entry time
  double time_exit = 0.0;  // == time except for plateaus
  bool plateau = false;
  int dim = 0;  // intersection dimension at entry
  Mat basis;    // orthonormal intersection basis at entry
  std::optional<QuadraticForm> form_left;   // absent at t = 0 / plateau edge
  std::optional<QuadraticForm> form_right;  // absent at t = T
  int sign_left = 0;
  int sign_right = 0;
  bool regular = true;
  int contribution_twice = 0;
};

std::vector<Crossing> find_crossings(const LagrangianPath& path,
                                     const LagrangianFrame& reference,
                                     const IndexOpts& opts = {});

/// Crossing form at t0 on the intersection with the reference; side = +1
/// uses the generator to the right of t0, side = -1 the one to the left.
/// Equals the restriction of the segment generator to the intersection.
QuadraticForm crossing_form(const LagrangianPath& path, const LagrangianFrame& reference,
                            double t0, int side = +1, double tol = kDefaultTol);

/// Independent route to the crossing form through an explicit transverse
/// complement W: decompose the first-order motion along Lambda(t0) (+) W and
/// pair against the intersection.  Used to check complement-independence.
QuadraticForm crossing_form_via_complement(const LagrangianPath& path,
                                           const LagrangianFrame& reference, double t0,
                                           const LagrangianFrame& complement,
                                           double tol = kDefaultTol);

/// Robbin-Salamon index of the path against a fixed reference: interior
/// crossings count sign(form), endpoint crossings half.
HalfInt maslov_index(const LagrangianPath& path, const LagrangianFrame& reference,
                     const IndexOpts& opts = {},
                     std::vector<Crossing>* crossings_out = nullptr);

/// Robbin-Salamon index of a pair of moving Lagrangians; the relative
/// crossing form is the difference of the two one-sided forms.
HalfInt maslov_index_pair(const LagrangianPath& path1, const LagrangianPath& path2,
                          const IndexOpts& opts = {},
                          std::vector<Crossing>* crossings_out = nullptr);

// --- path algebra ---------------------------------------------------------

/// Restriction to [a, b], reissued on [0, b - a] with start F(a).
SymplecticPathSpec subpath(const SymplecticPathSpec& spec, double a, double b);

/// Time reversal: t -> T - t (generators negate, segment order flips).
SymplecticPathSpec reverse_path(const SymplecticPathSpec& spec);

/// G F(t) G^{-1}-type transport of the whole path by a fixed symplectic G
/// (start becomes G * start, generators G^{-T} S G^{-1}).
SymplecticPathSpec conjugate_path(const SymplecticPathSpec& spec, const Mat& g);

/// Concatenation (second path must start where the first ends).
SymplecticPathSpec concatenate(const SymplecticPathSpec& a, const SymplecticPathSpec& b,
                               double tol = kDefaultTol);

/// Block direct sum with per-block form signs; breakpoints are refined to a
/// common partition.
SymplecticPathSpec direct_sum_paths(const SymplecticPathSpec& a,
                                    const SymplecticPathSpec& b, int sign_a = 1,
                                    int sign_b = 1);

/// Durations scaled by `factor`, generators by 1/factor: same geometric path.
SymplecticPathSpec rescale_path(const SymplecticPathSpec& spec, double factor);

/// The path t -> (F(t), 1) acting on the doubled space (R^{4n}, Omega_0),
/// whose orbit of the diagonal computes the periodic index.
SymplecticPathSpec graph_path(const SymplecticPathSpec& spec);

}  // namespace symidx
