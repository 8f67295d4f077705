#pragma once

// Hilbert functions and numerical characters of reduced point schemes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "whitesurf/plane.hpp"

namespace whitesurf {

/// h(0), ..., h(t_reg) with h(t_reg) = deg Z the first stable value.
using HilbertProfile = std::vector<std::size_t>;
/// (n_0, ..., n_{s-1}).
using NumericalCharacter = std::vector<int>;

/// Throws std::invalid_argument for non-reduced schemes.
HilbertProfile hilbert_function(const Field& f, const PointScheme& z);

/// h(t) read from a profile, extended by its stable value.
std::size_t hilbert_at(const HilbertProfile& h, int t);

/// n_0 >= ... >= n_{s-1} >= s.
bool is_valid_character(const NumericalCharacter& chi);

/// Character after a random coordinate change; retried while the result
/// fails its own invariants or the round trip. Throws Error when the retry
/// budget is exhausted.
NumericalCharacter character_of(const Field& f, const PointScheme& z, std::uint64_t seed = 0, int retries = 8);

HilbertProfile hilbert_from_character(const NumericalCharacter& chi);
std::size_t degree_of_character(const NumericalCharacter& chi);
long long superabundance(const NumericalCharacter& chi, int d);
bool is_uniform(const NumericalCharacter& chi);
std::string to_string(const NumericalCharacter& chi);

struct SplitReport {
  bool applicable = false;  // a gap exists
  bool transversal = false; // a reduced split was found
  std::string diagnostic;
  int t = 0;
  CurveForm curve;          // the degree-t curve T
  PointScheme on_curve;     // Z' = Z on T
  PointScheme off_curve;    // Z''
  NumericalCharacter chi_off;
  NumericalCharacter expected;  // (n_{t+i} - t)_i
  bool matches = false;
};

/// Gap splitting at the first t with n_{t-1} > n_t + 1.
SplitReport ep_split(const Field& f, const PointScheme& z, std::uint64_t seed = 0);

}  // namespace whitesurf
