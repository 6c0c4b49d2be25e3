#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symidx/doubling.hpp"

namespace symidx {

struct SuiteOptions {
  std::uint64_t seed = 0xC0FFEE;
  int trials = 50;
  IndexOpts index;
};

struct SuiteResult {
  std::string name;
  int pass = 0;
  int fail = 0;
  int skip = 0;
  std::vector<std::string> notes;  // deterministic failure/skip descriptions

  bool ok() const { return fail == 0; }
};

/// Closed-form rotation indices checked exactly (no randomness):
/// mu(e^{i pi t} R, R) over [0,1] and [0,2], boundary and periodic indices
/// of e^{i pi t / 2} and e^{2 pi i t}.
SuiteResult suite_rotation_oracles(const SuiteOptions& o);

/// Index axioms on random paths: concatenation, symplectic invariance,
/// direct-sum and reparametrization behavior, reversal, the zero property,
/// and independence of the crossing form from the chosen complement.
SuiteResult suite_maslov_properties(const SuiteOptions& o);

/// The two four/five-Lagrangian identities, path independence, agreement of
/// the signature route with the path route, and the sign flip under the
/// factor-swap map.
SuiteResult suite_hormander(const SuiteOptions& o);

/// Randomized check of mu_+ + mu_- - mu_loop = sign(Q)/2 on half paths for
/// n in {1,2,3}; degenerate draws are skips, never failures.
SuiteResult suite_index_theorem(const SuiteOptions& o);

/// Boundary indices of a half path and its reflected half agree; reflection
/// is involutive on the path itself.
SuiteResult suite_reflection(const SuiteOptions& o);

/// Diagonal doubles: sign(Q) = 0, mu_loop = 2 mu_half, mu_half equals the
/// periodic index of the factor; additivity over split factors.
SuiteResult suite_diagonal(const SuiteOptions& o);

/// Linear-algebra layer invariants (determinant, graphs, signatures,
/// complements, conjugation).
SuiteResult suite_symlin(const SuiteOptions& o);

/// Exact ring arithmetic: the golden pushforward, split Seidel values,
/// non-monotonicity witness, involution and additivity laws, text round-trip.
SuiteResult suite_novikov(const SuiteOptions& o);

std::vector<SuiteResult> run_all_suites(const SuiteOptions& o);

}  // namespace symidx
