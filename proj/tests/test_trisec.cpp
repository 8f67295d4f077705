#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "support.hpp"
#include "whitesurf/trisec.hpp"

using namespace whitesurf;
using whitesurf::testing::find_pair;

namespace {

ErrorKind error_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::generic;
}

WhiteConfig integral(const std::function<WhiteConfig(std::uint64_t)>& gen, std::span<const std::uint64_t> primes,
                     std::uint64_t seed) {
  for (;; ++seed) {
    try {
      WhiteConfig cfg = gen(seed);
      for (auto p : primes) (void)reduce_mod(cfg, p);
      return cfg;
    } catch (const Error&) {
    }
  }
}

}  // namespace

TEST(ProjectFromQ, AtCenterAndBasePoints) {
  const Field f = Field::prime(61);
  const WhiteConfig cfg = gen_random_config(1, f);
  const SurfaceEmbedding emb = embedding(cfg);
  const ProjPoint q = choose_q(emb, 1);
  EXPECT_FALSE(project_from_q(emb, q, q).has_value());
  EXPECT_THROW(project_from_q(emb, q, cfg.points[3]), std::invalid_argument);
}

TEST(ProjectFromQProperty, EqualProjectionsIffCollinear) {
  const auto fx = find_pair(3, 1009);
  const Field& f = fx.cfg.field;
  auto collinear = [&](const ProjPoint& a, const ProjPoint& b) {
    Matrix m(f, 0, 6);
    for (const auto* x : {&fx.q, &a, &b}) m.append_row(phi(fx.emb, *x));
    return rank(m) <= 2;
  };
  EXPECT_EQ(project_from_q(fx.emb, fx.q, fx.a), project_from_q(fx.emb, fx.q, fx.b));
  EXPECT_TRUE(collinear(fx.a, fx.b));
  Rng rng(4);
  int tested = 0;
  for (int t = 0; t < 100; ++t) {
    const ProjPoint a = t % 10 == 0 ? fx.a : rng.point(f), b = t % 10 == 0 ? fx.b : rng.point(f);
    if (a == b || a == fx.q || b == fx.q || fx.cfg.scheme().contains(a) || fx.cfg.scheme().contains(b)) continue;
    const auto pa = project_from_q(fx.emb, fx.q, a), pb = project_from_q(fx.emb, fx.q, b);
    ASSERT_TRUE(pa && pb);
    EXPECT_EQ(*pa == *pb, collinear(a, b));
    ++tested;
  }
  EXPECT_GT(tested, 90);
}

TEST(ProjectFromQProperty, ScalingInvariance) {
  const Field f = Field::prime(61);
  const WhiteConfig cfg = gen_random_config(2, f);
  const SurfaceEmbedding emb = embedding(cfg);
  const ProjPoint q = choose_q(emb, 2);
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const ProjPoint a = rng.point(f);
    if (a == q || cfg.scheme().contains(a)) continue;
    // Scaled coordinates of the same plane point give the same canonical image.
    const Scalar c = rng.nonzero(f);
    const ProjPoint scaled = ProjPoint::make(f, f.mul(c, a[0]), f.mul(c, a[1]), f.mul(c, a[2]));
    EXPECT_EQ(project_from_q(emb, q, a), project_from_q(emb, q, scaled));
    const auto img = phi_canonical(f, emb.basis, a.coords());
    const std::array<Scalar, 3> sc{f.mul(c, a[0]), f.mul(c, a[1]), f.mul(c, a[2])};
    EXPECT_EQ(img, phi_canonical(f, emb.basis, sc));
  }
}

TEST(QRejection, Reasons) {
  const Field f = Field::prime(61);
  const WhiteConfig cfg = gen_polygonal(3, f);
  const SurfaceEmbedding emb = embedding(cfg);
  const auto lines = contracted_lines(emb);
  EXPECT_FALSE(q_rejection(emb, lines, cfg.points[0]).empty());
  for (const auto& p : points_on_curve(f, lines[0].line)) {
    if (cfg.scheme().contains(p)) continue;
    EXPECT_FALSE(q_rejection(emb, lines, p).empty());
    EXPECT_EQ(error_kind([&] { census(emb, p, 61, 1); }), ErrorKind::genericity_rejected);
    break;
  }
  const ProjPoint q = choose_q(emb, 3);
  EXPECT_TRUE(q_rejection(emb, lines, q).empty());
}

TEST(QRejection, FourPointLinesAndConicPlanes) {
  // Points 0..3 on one line and 4..6 on another; the rest random.
  const Field f = Field::prime(1009);
  Rng rng(6);
  for (std::uint64_t seed = 1;; ++seed) {
    const WhiteConfig base = gen_random_config(seed, f);
    WhiteConfig cfg = base;
    const CurveForm l4 = line_through(f, cfg.points[0], cfg.points[1]);
    const CurveForm l3 = line_through(f, cfg.points[4], cfg.points[5]);
    auto on4 = points_on_curve(f, l4), on3 = points_on_curve(f, l3);
    cfg.points[2] = on4[100];
    cfg.points[3] = on4[200];
    cfg.points[6] = on3[300];
    if (std::set<ProjPoint>(cfg.points.begin(), cfg.points.end()).size() != 15 || !is_white(f, cfg.points)) continue;
    const SurfaceEmbedding emb = embedding(cfg);
    const auto lines = contracted_lines(emb);
    ASSERT_TRUE(lines.empty());
    int checked = 0;
    for (const auto& p : on4) {
      if (cfg.scheme().contains(p)) continue;
      EXPECT_FALSE(q_rejection(emb, lines, p).empty());
      if (++checked == 5) break;
    }
    // Off the 3-point line, q with Phi(q) in the plane of its conic: the
    // quartics through the other 12 points have extra base points.
    std::vector<ProjPoint> rest;
    for (std::size_t i = 0; i < 15; ++i)
      if (i != 4 && i != 5 && i != 6) rest.push_back(cfg.points[i]);
    const PointScheme r = PointScheme::simple(rest);
    const std::size_t h = h0(f, r, 4);
    int conic_plane = 0;
    for (int t = 0; t < 200 && conic_plane == 0; ++t) {
      const ProjPoint a = rng.point(f);
      if (cfg.scheme().contains(a) || f.is_zero(evaluate(f, l3, a))) continue;
      if (h0(f, r.with(a), 4) == h) {
        ++conic_plane;
        EXPECT_FALSE(q_rejection(emb, lines, a).empty());
      }
    }
    const ProjPoint q = choose_q(emb, seed);
    EXPECT_TRUE(q_rejection(emb, lines, q).empty());
    EXPECT_FALSE(f.is_zero(evaluate(f, l4, q)));
    EXPECT_NE(h0(f, r.with(q), 4), h);
    break;
  }
}

TEST(Census, PolygonalHasSixImproperLines) {
  for (std::uint64_t p : {31, 61}) {
    const Field f = Field::prime(p);
    const WhiteConfig cfg = gen_polygonal(4, f);
    const SurfaceEmbedding emb = embedding(cfg);
    const auto lines = contracted_lines(emb);
    const ProjPoint q = choose_q(emb, 4);
    const CensusReport r = census(emb, q, p, 2);
    EXPECT_EQ(r.improper, 6u);
    EXPECT_EQ(r.proper, 0u);
    EXPECT_EQ(r.quadrisecant, 0u);
    std::set<std::size_t> hit;
    for (const auto& c : r.classes) {
      if (c.kind != ClassKind::improper) continue;
      ASSERT_TRUE(c.contracted_line.has_value());
      hit.insert(*c.contracted_line);
      EXPECT_EQ(c.image, lines[*c.contracted_line].image);
      EXPECT_EQ(c.level, 1);
    }
    EXPECT_EQ(hit.size(), 6u);
  }
}

TEST(Census, BudgetAndDeterminism) {
  const Field f = Field::prime(31);
  const WhiteConfig cfg = gen_random_config(5, f);
  const SurfaceEmbedding emb = embedding(cfg);
  const ProjPoint q = choose_q(emb, 5);
  EXPECT_EQ(error_kind([&] { census(emb, q, 31, 3); }), ErrorKind::budget_exceeded);
  EXPECT_EQ(error_kind([&] { census(emb, cfg.points[0], 31, 1); }), ErrorKind::genericity_rejected);
  const CensusReport a = census(emb, q, 31, 2), b = census(emb, q, 31, 2);
  ASSERT_EQ(a.classes.size(), b.classes.size());
  for (std::size_t i = 0; i < a.classes.size(); ++i) {
    EXPECT_EQ(a.classes[i].key, b.classes[i].key);
    EXPECT_EQ(a.classes[i].members, b.classes[i].members);
  }
  EXPECT_EQ(a.proper, b.proper);
  EXPECT_TRUE(a.lower_bound);
  EXPECT_EQ(a.levels.size(), 2u);
  EXPECT_GT(a.levels[1].points, a.levels[0].points);
}

TEST(CensusProperty, RandomConfigurations) {
  // Bounded by 6, no quadrisecants, pairs associated, monotone in the ladder.
  for (std::uint64_t p : {31, 61}) {
    const Field f = Field::prime(p);
    const int maxext = p == 31 ? 2 : 1;
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
      WhiteConfig cfg;
      try {
        cfg = gen_random_config(seed, f);
      } catch (const Error&) {
        continue;
      }
      const SurfaceEmbedding emb = embedding(cfg);
      ProjPoint q;
      try {
        q = choose_q(emb, seed);
      } catch (const Error&) {
        continue;
      }
      const CensusReport r = census(emb, q, p, maxext);
      EXPECT_LE(r.lines(), 6u) << "p=" << p << " seed=" << seed;
      EXPECT_EQ(r.quadrisecant, 0u);
      EXPECT_EQ(r.improper, 0u);
      std::size_t tally = 0;
      for (const auto& c : r.classes) {
        tally += c.kind == ClassKind::proper;
        if (c.kind != ClassKind::proper || c.level != 1) continue;
        ASSERT_EQ(c.member_count, 2u);
        EXPECT_TRUE(is_associated_pair(f, cfg.scheme(), q, c.members[0], c.members[1]));
      }
      EXPECT_EQ(tally, r.proper);
      for (std::size_t k = 1; k < r.levels.size(); ++k) EXPECT_GE(r.levels[k].proper, r.levels[k - 1].proper);
      if (maxext == 2) {
        const CensusReport r1 = census(emb, q, p, 1);
        EXPECT_EQ(r1.proper, r.levels[0].proper);
      }
    }
  }
}

TEST(ExcessProbe, Verdicts) {
  const Field qf = Field::rationals();
  const std::vector<std::uint64_t> primes{31, 61, 127};
  const WhiteConfig segre = integral([&](std::uint64_t s) { return gen_segre_random(s, qf); }, primes, 1);
  const ExcessReport es = excess_probe(segre, primes, 16, 7);
  EXPECT_EQ(es.verdict, ExcessVerdict::excess) << es.note;
  ASSERT_EQ(es.table.size(), 3u);
  EXPECT_GT(es.table[2].mean, es.table[0].mean);

  const WhiteConfig rnd = integral([&](std::uint64_t s) { return gen_random_config(s, qf); }, primes, 1);
  EXPECT_EQ(excess_probe(rnd, primes, 16, 8).verdict, ExcessVerdict::finite);

  const WhiteConfig poly = integral([&](std::uint64_t s) { return gen_polygonal(s, qf); }, primes, 1);
  const ExcessReport ep = excess_probe(poly, primes, 16, 9);
  EXPECT_EQ(ep.verdict, ExcessVerdict::finite);
  for (const auto& ev : ep.table)
    for (auto c : ev.proper_counts) EXPECT_EQ(c, 0u);

  EXPECT_THROW(excess_probe(rnd, std::vector<std::uint64_t>{31}, 4), std::invalid_argument);
}
