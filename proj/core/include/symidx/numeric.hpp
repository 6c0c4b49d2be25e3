#pragma once

#include <cstdint>
#include <string>

#include "symidx/errors.hpp"

namespace symidx {

/// Exact half-integer, stored as twice its value.
///
/// Every index computed here (Robbin-Salamon, Conley-Zehnder, Hormander)
/// is a half-integer assembled from signature counts, so the arithmetic
/// stays in integers end to end.
struct HalfInt {
  long long twice = 0;

  static HalfInt from_twice(long long t) { return HalfInt{t}; }
  static HalfInt whole(long long v) { return HalfInt{2 * v}; }

  bool is_integer() const { return twice % 2 == 0; }
  double value() const { return 0.5 * static_cast<double>(twice); }

  HalfInt operator+(HalfInt o) const { return HalfInt{twice + o.twice}; }
  HalfInt operator-(HalfInt o) const { return HalfInt{twice - o.twice}; }
  HalfInt operator-() const { return HalfInt{-twice}; }
  HalfInt& operator+=(HalfInt o) { twice += o.twice; return *this; }
  bool operator==(const HalfInt&) const = default;

  /// "0", "2", "1/2", "-3/2"
  std::string str() const;
};

HalfInt operator*(long long k, HalfInt h);

/// Deterministic 64-bit generator (splitmix64).  All randomized suites draw
/// from an explicit instance seeded by the caller; there is no ambient
/// randomness anywhere in the library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform in [lo, hi), reproducible across platforms (no libstdc++
  /// distribution involved).
  double uniform(double lo, double hi);

  /// Derive an independent stream for trial `index` of a suite keyed by
  /// `master`; reproducible regardless of evaluation order.
  static Rng for_trial(std::uint64_t master, std::uint64_t index);

private:
  std::uint64_t state_;
};

}  // namespace symidx
