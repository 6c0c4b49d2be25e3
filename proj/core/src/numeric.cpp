#include "symidx/numeric.hpp"

namespace symidx {

std::string HalfInt::str() const {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

HalfInt operator*(long long k, HalfInt h) { return HalfInt{k * h.twice}; }

std::uint64_t Rng::next_u64() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Rng Rng::for_trial(std::uint64_t master, std::uint64_t index) {
  Rng mix(master ^ (0x632be59bd9b4e019ULL * (index + 1)));
  return Rng(mix.next_u64());
}

}  // namespace symidx
