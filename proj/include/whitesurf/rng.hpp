#pragma once

// Seeded randomness with results that do not depend on the standard library
// implementation (std distributions are implementation-defined).

#include <cstdint>
#include <random>

#include "whitesurf/field.hpp"
#include "whitesurf/plane.hpp"

namespace whitesurf {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, n) by rejection sampling; n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n);
    std::uint64_t v;
    do v = eng_();
    while (v >= limit);
    return v % n;
  }

  /// Uniform in [lo, hi].
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// Uniform element of a finite field; over Q an integer in [-50, 50].
  Scalar element(const Field& f) {
    if (f.is_finite()) return Scalar::from_code(below(f.order()));
    return f.from_int(range(-50, 50));
  }

  Scalar nonzero(const Field& f) {
    Scalar s;
    do s = element(f);
    while (f.is_zero(s));
    return s;
  }

  /// Uniform point of P^2 over a finite field; over Q a random integer point.
  ProjPoint point(const Field& f) {
    if (f.is_finite()) return plane_point(f, below(plane_size(f.order())));
    while (true) {
      Scalar x = element(f), y = element(f), z = element(f);
      if (f.is_zero(x) && f.is_zero(y) && f.is_zero(z)) continue;
      return ProjPoint::make(f, x, y, z);
    }
  }

  /// Derive an independent seed for a sub-task.
  std::uint64_t fork() { return eng_() ^ 0x9e3779b97f4a7c15ULL; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace whitesurf
