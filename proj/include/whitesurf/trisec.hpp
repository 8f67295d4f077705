#pragma once

// Trisecant lines through a surface point, found as collisions of the
// projection of Phi(P^2) from Phi(q) into P^4.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "whitesurf/surface.hpp"

namespace whitesurf {

/// Phi(a) projected from Phi(q) into P^4, canonical; nullopt is the
/// at-center value (Phi(a) = Phi(q)). Throws std::invalid_argument for a in P.
std::optional<Vector> project_from_q(const SurfaceEmbedding& emb, const ProjPoint& q, const ProjPoint& a);

/// Rejects q in P, q on a contracted line, Phi(q) equal to a 4-fold point,
/// q on a line of the surface (a line through 4 base points), and Phi(q) in
/// the plane of a conic of the surface (the image of a line through 3 base
/// points). Returns the reason or an empty string.
std::string q_rejection(const SurfaceEmbedding& emb, const std::vector<ContractedLine>& lines, const ProjPoint& q);
/// First generic F_p point drawn from the seed; throws
/// Error(genericity_rejected) after `attempts` draws.
ProjPoint choose_q(const SurfaceEmbedding& emb, std::uint64_t seed, int attempts = 64);

enum class ClassKind { improper, proper, quadrisecant, other };
std::string to_string(ClassKind k);

struct CollisionClass {
  int level = 1;                       // extension degree where the line first appears
  std::vector<std::uint64_t> key;      // canonical P^4 image, element codes over F_{p^level}
  ClassKind kind = ClassKind::other;
  std::size_t member_count = 0;
  std::vector<ProjPoint> members;      // at most kMaxMembers, enumeration order
  std::size_t distinct_images = 0;
  std::optional<std::size_t> contracted_line;  // index into contracted_lines()
  Vector image;                        // shared Phi-image for improper classes

  static constexpr std::size_t kMaxMembers = 32;
};

struct LevelStats {
  int k = 1;
  std::uint64_t points = 0;      // plane points enumerated over F_{p^k}
  std::size_t buckets = 0;       // exact collision classes of size >= 2 at this level
  // Cumulative distinct lines over all levels <= k.
  std::size_t proper = 0, improper = 0, quadrisecant = 0, other = 0;
};

struct CensusReport {
  std::string config_id;
  ProjPoint q;
  std::uint64_t p = 0;
  int maxext = 1;
  std::vector<LevelStats> levels;
  std::vector<CollisionClass> classes;  // sorted by (level, key)
  std::size_t proper = 0, improper = 0, quadrisecant = 0, other = 0;
  std::size_t contracted_line_hits = 0;
  std::size_t at_center = 0;  // points off P and q with Phi(a) = Phi(q)
  bool lower_bound = true;    // lines needing larger extensions are invisible

  std::size_t lines() const { return proper + improper; }
};

struct CensusOptions {
  std::uint64_t budget = std::uint64_t{1} << 24;  // bound on p^(2 maxext)
};

/// Throws Error(budget_exceeded) and Error(genericity_rejected).
CensusReport census(const SurfaceEmbedding& emb, const ProjPoint& q, std::uint64_t p, int maxext,
                    CensusOptions opt = {});

enum class ExcessVerdict { finite, excess, indeterminate };
std::string to_string(ExcessVerdict v);

struct ExcessEvidence {
  std::uint64_t p = 0;
  std::vector<std::size_t> proper_counts;
  double mean = 0;
};

struct ExcessReport {
  ExcessVerdict verdict = ExcessVerdict::indeterminate;
  std::vector<ExcessEvidence> table;
  std::string note;
};

/// Census at `trials` generic points per prime (maxext 1) on the reduction
/// of an integral configuration.
ExcessReport excess_probe(const WhiteConfig& cfg, std::span<const std::uint64_t> primes, int trials,
                          std::uint64_t seed = 0, CensusOptions opt = {});

}  // namespace whitesurf
