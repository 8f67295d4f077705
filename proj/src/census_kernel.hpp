#pragma once

// Collision search for the values of a few plane forms over F_q, up to a
// common scalar. Arithmetic runs on discrete logarithms (Zech tables).

#include <cstdint>
#include <span>
#include <vector>

#include "whitesurf/plane.hpp"

namespace whitesurf::detail {

struct Bucket {
  std::vector<std::uint64_t> key;      // canonical value vector, element codes
  std::vector<std::uint64_t> members;  // plane point indices, ascending
};

struct CollisionResult {
  std::vector<Bucket> buckets;         // sorted by key
  std::vector<std::uint64_t> all_zero; // points where every form vanishes
};

/// Points of P^2(F) whose value vectors (f_0(a) : ... : f_{n-1}(a)) agree
/// projectively. All forms share one degree; F must have a log table.
CollisionResult collide(const Field& f, std::span<const CurveForm> forms);

}  // namespace whitesurf::detail
