#pragma once

// White configurations of 15 plane points, the quintic embedding into P^5,
// and divisor arithmetic on the blown-up plane.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "whitesurf/plane.hpp"

namespace whitesurf {

enum class Provenance { random, polygonal, segre };
std::string to_string(Provenance p);

struct WhiteConfig {
  Field field = Field::rationals();
  std::vector<ProjPoint> points;
  Provenance provenance = Provenance::random;
  std::uint64_t seed = 0;
  std::vector<CurveForm> lines;  // polygonal and Segre: the 6 lines
  Vector params;                 // Segre: the 6 tangency parameters

  PointScheme scheme() const { return PointScheme::simple(points); }
};

struct GenOptions {
  bool allow_aligned = false;  // permit 5 collinear points (singular model)
  int attempts = 200;
};

/// Throws Error(generation_failed) when the resample budget runs out.
WhiteConfig gen_random_config(std::uint64_t seed, const Field& f, GenOptions opt = {});
WhiteConfig gen_polygonal(std::uint64_t seed, const Field& f, GenOptions opt = {});
WhiteConfig gen_segre(const Field& f, std::span<const Scalar> t);
WhiteConfig gen_segre_random(std::uint64_t seed, const Field& f, GenOptions opt = {});

/// The 15 pairwise intersections of 6 lines, in pair order (i<j).
std::vector<ProjPoint> polygon_points(const Field& f, std::span<const CurveForm> lines);

/// h0(P,4) == 0 and h0(P,5) == 6.
bool is_white(const Field& f, std::span<const ProjPoint> pts);
/// Some line carries at least 5 of the points.
bool has_aligned_five(const Field& f, std::span<const ProjPoint> pts);
/// The lines are tangent to a common conic (dual points on a conic).
bool lines_on_common_conic(const Field& f, std::span<const CurveForm> lines);

/// Reduction of an integral configuration over Q modulo p. Throws
/// Error(genericity_rejected) if the reduction is degenerate or not White.
WhiteConfig reduce_mod(const WhiteConfig& cfg, std::uint64_t p);

struct SurfaceEmbedding {
  WhiteConfig config;
  std::vector<CurveForm> basis;  // 6 canonical quintics
};

/// Throws Error(genericity_rejected) when h0(P,5) != 6.
SurfaceEmbedding embedding(const WhiteConfig& cfg);
/// Phi(a) in P^5, unnormalized. Throws std::invalid_argument for a in P.
Vector phi(const SurfaceEmbedding& emb, const ProjPoint& a);
/// Canonical P^5 representative; nullopt when all quintics vanish at a.
std::optional<Vector> phi_canonical(const Field& f, std::span<const CurveForm> basis, std::span<const Scalar> a);

struct ContractedLine {
  CurveForm line;
  std::vector<std::size_t> point_indices;
  Vector image;  // the 4-fold point, canonical in P^5
};

/// All lines through at least 5 of the base points, in canonical order.
std::vector<ContractedLine> contracted_lines(const SurfaceEmbedding& emb);

struct DivisorClass {
  long long a = 0;
  std::vector<long long> m;  // class a L - sum m_i E_i

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

DivisorClass divisor(long long a, std::size_t n, long long m_each);
long long pairing(const DivisorClass& x, const DivisorClass& y);
/// K = -3L + sum E_i.
DivisorClass canonical_class(std::size_t n);
/// 1 + (D.D + D.K)/2; throws on odd D.D + D.K or length mismatch.
long long adjunction_genus(const DivisorClass& d, std::size_t n);
/// (degX - 4 - delta) H - K.
DivisorClass double_locus_class(long long deg_x, long long delta, const DivisorClass& h);
std::string to_string(const DivisorClass& d);

}  // namespace whitesurf
