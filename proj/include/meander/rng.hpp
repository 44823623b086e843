#ifndef MEANDER_RNG_HPP
#define MEANDER_RNG_HPP

#include <cmath>
#include <cstdint>

namespace meander {

// Splittable counter-seeded generator (splitmix64 core, Steele et al. 2014).
// A stream is addressed by (master_seed, stream_index); identical addresses
// reproduce identical sequences bit-exactly on every platform. Streams are
// decorrelated by double avalanche mixing of the address. All samplers in
// this project draw from RngStream only -- std::random distributions are
// implementation-defined and would break cross-run reproducibility.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : state_(mix(master_seed ^ mix(0x9E3779B97F4A7C15ULL * (stream_index + 1)))),
        have_cached_normal_(false),
        cached_normal_(0.0) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // uniform on [0,1), 53-bit resolution
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform on (0,1], safe under log()
  double uniform_pos() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Box-Muller; second value cached so a pair costs two uniforms
  double normal() {
    if (have_cached_normal_) {
      have_cached_normal_ = false;
      return cached_normal_;
    }
    const double u1 = uniform_pos();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_normal_ = r * std::sin(a);
    have_cached_normal_ = true;
    return r * std::cos(a);
  }

  // Marsaglia-Tsang (2000) rejection sampler, shape >= 1.
  double gamma(double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_pos();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // law of c/Gamma(shape,1); scale applied multiplicatively
  double inverse_gamma(double shape, double scale) { return scale / gamma(shape); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  bool have_cached_normal_;
  double cached_normal_;
};

}  // namespace meander

#endif  // MEANDER_RNG_HPP
