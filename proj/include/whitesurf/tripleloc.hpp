#pragma once

// Projection of the White surface from a trisecant line: the P^3 model by
// the quintics through Z = P + q + {a, b}, and its triple curve.

#include <optional>
#include <vector>

#include "whitesurf/surface.hpp"

namespace whitesurf {

struct ProjectionModel {
  Field field = Field::rationals();
  PointScheme z;                 // 18 simple points
  std::vector<CurveForm> basis4; // canonical basis of H0(I_Z(5))
  std::optional<CurveForm> gamma;
};

/// Throws Error(genericity_rejected) unless h0(Z,5) = 4.
ProjectionModel projection_model(const Field& f, const PointScheme& p, const ProjPoint& q, const ProjPoint& a,
                                 const ProjPoint& b);

struct TripleCurveResult {
  std::optional<CurveForm> gamma;
  std::size_t kernel_dim = 0;
};

/// Degree-9 curves double at every point of Z (a 54 x 55 system). Throws
/// Error(generic) when the kernel is zero.
TripleCurveResult triple_curve(const ProjectionModel& model);

/// gamma equals the product of the 6 polygon lines with <q,a>, <q,b>, <a,b>.
bool segre_factor_check(const Field& f, const CurveForm& gamma, const WhiteConfig& cfg, const ProjPoint& q,
                        const ProjPoint& a, const ProjPoint& b);

struct TwistedCubicReport {
  int extension = 1;            // F_{p^k} used for sampling
  std::size_t samples = 0;      // sampled points of gamma off Z
  std::size_t images = 0;       // distinct images in P^3
  std::size_t quadric_dim = 0;  // quadrics through the images
  std::size_t linear_dim = 0;   // planes through the images
  std::vector<std::size_t> fiber_histogram;  // [s] = number of images with s samples
  std::size_t max_fiber = 0;
  bool is_twisted_cubic = false;
};

/// Samples rational points of gamma over F_{p^k}, k = 1..maxext, until at
/// least `min_samples` images are available. Throws Error(generic) when the
/// ladder is exhausted.
TwistedCubicReport twisted_cubic_check(const ProjectionModel& model, const CurveForm& gamma, int maxext = 2,
                                       std::size_t min_samples = 10, std::size_t max_samples = 400);

}  // namespace whitesurf
