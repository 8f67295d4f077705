#pragma once

// The acceptance suite: one pass/fail verdict per criterion, shared by the
// `acceptance` test binary and `whitesurf verify-all`.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "whitesurf/charnum.hpp"
#include "whitesurf/surface.hpp"
#include "whitesurf/trisec.hpp"

namespace whitesurf {

/// One seeded White trial: configuration, generic q, census and the
/// invariants of the projection from the first proper trisecant found.
struct TrialRecord {
  std::uint64_t seed = 0;
  WhiteConfig config;
  ProjPoint q;
  std::vector<std::pair<ProjPoint, ProjPoint>> pairs;  // proper pairs over F_p
  std::optional<NumericalCharacter> character;
  std::optional<CensusReport> census;
  std::size_t h0_z5 = 0;
  std::size_t triple_kernel_dim = 0;
  std::optional<std::size_t> quadric_dim;
  std::optional<bool> segre_product;
  double seconds = 0;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240501;
  int trials = 20;
  std::uint64_t trial_prime = 1009;                  // criteria 1-4, 8
  std::vector<std::uint64_t> census_primes{31, 61};  // criterion 5
  std::vector<std::uint64_t> excess_primes{31, 61, 127};
  std::function<void(const CriterionResult&)> on_result;
  std::function<void(const std::string&)> on_warning;
};

struct AcceptanceOutcome {
  std::vector<CriterionResult> results;
  std::vector<std::string> warnings;
  std::vector<TrialRecord> records;
  bool all_pass() const;
};

/// One White trial over F_p: random configuration, generic q, census at
/// maxext 1 and the projection invariants at the first proper pair (left
/// unset when the census finds no rational pair). Throws Error on
/// generation or genericity failure.
TrialRecord white_trial(std::uint64_t seed, std::uint64_t p);

AcceptanceOutcome run_acceptance(const AcceptanceOptions& opt);

}  // namespace whitesurf
