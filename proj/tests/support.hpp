#pragma once

// Shared fixtures for the unit tests.

#include <optional>
#include <vector>

#include "whitesurf/error.hpp"
#include "whitesurf/linsys.hpp"
#include "whitesurf/rng.hpp"
#include "whitesurf/surface.hpp"
#include "whitesurf/trisec.hpp"

namespace whitesurf::testing {

struct PairFixture {
  WhiteConfig cfg;
  SurfaceEmbedding emb;
  ProjPoint q, a, b;
  CensusReport census;
};

/// First seed from `seed` on whose random White configuration over F_p the
/// census at a generic q finds a rational proper pair.
inline PairFixture find_pair(std::uint64_t seed, std::uint64_t p, Provenance kind = Provenance::random) {
  const Field f = Field::prime(p);
  for (std::uint64_t s = seed;; ++s) {
    try {
      WhiteConfig cfg = kind == Provenance::random    ? gen_random_config(s, f)
                        : kind == Provenance::segre ? gen_segre_random(s, f)
                                                      : gen_polygonal(s, f);
      SurfaceEmbedding emb = embedding(cfg);
      const ProjPoint q = choose_q(emb, s);
      CensusReport cr = census(emb, q, p, 1);
      for (const auto& c : cr.classes)
        if (c.kind == ClassKind::proper)
          return {std::move(cfg), std::move(emb), q, c.members[0], c.members[1], std::move(cr)};
    } catch (const Error&) {
    }
  }
}

inline CurveForm product(const Field& f, const std::vector<CurveForm>& ls) {
  CurveForm r = ls.front();
  for (std::size_t i = 1; i < ls.size(); ++i) r = multiply(f, r, ls[i]);
  return r;
}

/// Two families of n lines with n^2 distinct rational meeting points, none
/// on a line of the other family other than its own two.
struct LineGrid {
  std::vector<CurveForm> rows, cols;
  std::vector<ProjPoint> points;  // points[i*n+j] = rows[i] . cols[j]
};

inline LineGrid line_grid(const Field& f, Rng& rng, int n) {
  while (true) {
    LineGrid g;
    for (int i = 0; i < n; ++i) {
      g.rows.push_back(CurveForm::linear(f, rng.element(f), rng.element(f), rng.nonzero(f)).canonical(f));
      g.cols.push_back(CurveForm::linear(f, rng.element(f), rng.element(f), rng.nonzero(f)).canonical(f));
    }
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        if (proportional(f, g.rows[i], g.cols[j])) {
          ok = false;
          break;
        }
        const ProjPoint m = meet(f, g.rows[i], g.cols[j]);
        for (const auto& e : g.points) ok = ok && !(e == m);
        g.points.push_back(m);
      }
    for (int i = 0; i < n && ok; ++i)
      for (int k = i + 1; k < n && ok; ++k)
        ok = !proportional(f, g.rows[i], g.rows[k]) && !proportional(f, g.cols[i], g.cols[k]);
    if (ok) return g;
  }
}

}  // namespace whitesurf::testing
