#pragma once

// Linear systems |I_Z(d)| of plane curves with assigned base points, and the
// residual-cycle machinery built on them.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "whitesurf/plane.hpp"

namespace whitesurf {

std::size_t h0(const Field& f, const PointScheme& z, int d);
/// d(d+3)/2 minus the number of conditions; may be negative.
long long virtual_dim(const PointScheme& z, int d);
/// (h0 - 1) - max(virtual_dim, -1).
long long irregularity(const Field& f, const PointScheme& z, int d);

struct LinearSystem {
  int d = 0;
  PointScheme z;
  std::vector<CurveForm> basis;  // canonical kernel basis

  static LinearSystem make(const Field& f, const PointScheme& z, int d);
  std::size_t dim() const { return basis.size(); }
};

/// h0(P+q+a+b, 5) >= 4. Throws std::invalid_argument on coincident inputs.
bool is_associated_pair(const Field& f, const PointScheme& p, const ProjPoint& q, const ProjPoint& a,
                        const ProjPoint& b);

struct ResidualResult {
  std::optional<PointScheme> cycle;
  std::string diagnostic;
  bool ok() const { return cycle.has_value(); }
};

/// Rational common zeros of D and D2 off Z, accepted only when exactly
/// d^2 - deg Z of them are found. Throws when D and D2 are proportional or
/// do not both vanish on Z.
ResidualResult residual_cycle(const Field& f, const CurveForm& d1, const CurveForm& d2, const PointScheme& z);
/// Same, reusing the rational points of D1.
ResidualResult residual_cycle(const Field& f, const CurveForm& d1, const CurveForm& d2, const PointScheme& z,
                              const std::vector<ProjPoint>& points_of_d1);

struct DualityReport {
  bool residual_ok = false;
  std::string diagnostic;
  long long s = 0;
  std::size_t h0_residual = 0;
  bool holds = false;
  PointScheme residual;
};

DualityReport duality_check(const Field& f, const CurveForm& d1, const CurveForm& d2, const PointScheme& z, int d);
DualityReport duality_check(const Field& f, const CurveForm& d1, const CurveForm& d2, const PointScheme& z, int d,
                            const std::vector<ProjPoint>& points_of_d1);

struct WitnessResult {
  std::optional<CurveForm> curve;
  std::size_t h0 = 0;
  /// Set when the witness meets Cm exactly in P'+Q' over the working field
  /// (checked only over finite fields).
  bool intersection_verified = false;
};

/// Curve of degree n1+n2-n through P'+Q' cutting Cm in exactly P'+Q'.
/// All cycles must be reduced and supported on Cm.
WitnessResult residuation_witness(const Field& f, const CurveForm& cm, const PointScheme& p, const PointScheme& pp,
                                  const PointScheme& q, const PointScheme& qp, int n1, int n2, int n);

struct CubicResult {
  std::optional<CurveForm> cubic;
  std::size_t h0 = 0;
};

/// The cubic through 9 simple points when h0(Q,3) = 1.
CubicResult unique_cubic(const Field& f, const PointScheme& q);

/// Degree-e curves through the residual of Z in D1.D2, computed by linkage:
/// C qualifies iff C.I_Z(d) lies in the ideal (D1, D2) in degree d+e.
/// Needs no rational residual points.
std::vector<CurveForm> linkage_curves(const Field& f, const CurveForm& d1, const CurveForm& d2, const PointScheme& z,
                                      int e);

/// Product of three lines recovered from a cubic, or nullopt.
std::optional<std::array<CurveForm, 3>> split_into_lines(const Field& f, const CurveForm& cubic);

struct TriangleResult {
  bool found = false;
  CurveForm d2;
  CurveForm cubic;
  std::array<CurveForm, 3> lines;
  std::size_t scanned = 0;
};

/// Scans members D2 of the subsystem complementary to D (the first basis
/// element of |I_{P+q}(5)|) in enumeration order, up to `budget` members,
/// and returns the first one whose residual cubic is a triangle.
TriangleResult triangle_search(const Field& f, const PointScheme& p, const ProjPoint& q, std::size_t budget);

}  // namespace whitesurf
