#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace rwl1::num {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace detail

// Counter-based generator: the (seed, substream) pair fully determines
// the sequence, and distinct substreams start from decorrelated states.
// One stream per task; instances are cheap to construct.
class RandomStream {
public:
  RandomStream(std::uint64_t seed, std::uint64_t substream_id)
      : state_(detail::mix64(seed ^ detail::mix64(substream_id + 0x632be59bd9b4e019ULL))),
        cached_normal_(0.0), has_cached_normal_(false) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on (0,1); never returns 0 so log() stays finite.
  double uniform01() {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

  double normal() {
    if (has_cached_normal_) {
      has_cached_normal_ = false;
      return cached_normal_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    cached_normal_ = r * std::sin(t);
    has_cached_normal_ = true;
    return r * std::cos(t);
  }

  // Unbiased integer in [0, n) via rejection.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: n must be positive");
    const std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r > bound);
    return r % n;
  }

private:
  std::uint64_t state_;
  double cached_normal_;
  bool has_cached_normal_;
};

} // namespace rwl1::num
