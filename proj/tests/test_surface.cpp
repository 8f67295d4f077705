#include <gtest/gtest.h>

#include <set>

#include "whitesurf/error.hpp"
#include "whitesurf/linsys.hpp"
#include "whitesurf/rng.hpp"
#include "whitesurf/surface.hpp"

using namespace whitesurf;

namespace {

std::size_t on_line(const Field& f, const CurveForm& l, const std::vector<ProjPoint>& pts) {
  std::size_t n = 0;
  for (const auto& p : pts) n += f.is_zero(evaluate(f, l, p));
  return n;
}

}  // namespace

TEST(GenRandom, WhiteInvariants) {
  const Field f = Field::prime(1009);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const WhiteConfig cfg = gen_random_config(seed, f);
    ASSERT_EQ(cfg.points.size(), 15u);
    EXPECT_EQ(std::set<ProjPoint>(cfg.points.begin(), cfg.points.end()).size(), 15u);
    EXPECT_EQ(h0(f, cfg.scheme(), 4), 0u);
    EXPECT_EQ(h0(f, cfg.scheme(), 5), 6u);
    EXPECT_TRUE(is_white(f, cfg.points));
    EXPECT_FALSE(has_aligned_five(f, cfg.points));
    EXPECT_EQ(cfg.provenance, Provenance::random);
    EXPECT_TRUE(contracted_lines(embedding(cfg)).empty());
  }
}

TEST(GenRandom, Deterministic) {
  const Field f = Field::prime(1009);
  EXPECT_EQ(gen_random_config(42, f).points, gen_random_config(42, f).points);
  EXPECT_NE(gen_random_config(42, f).points, gen_random_config(43, f).points);
  EXPECT_EQ(gen_polygonal(42, f).lines, gen_polygonal(42, f).lines);
  EXPECT_EQ(gen_segre_random(42, f).params, gen_segre_random(42, f).params);
}

TEST(GenRandom, TinyFieldExhaustsBudget) {
  // F_5 has only 31 points; almost every 15-subset lies on a quartic or has
  // 5 aligned points.
  GenOptions opt;
  opt.attempts = 3;
  EXPECT_THROW(
      {
        try {
          gen_random_config(1, Field::prime(5), opt);
        } catch (const Error& e) {
          EXPECT_EQ(e.kind(), ErrorKind::generation_failed);
          throw;
        }
      },
      Error);
}

TEST(GenPolygonal, SixLinesThroughFivePointsEach) {
  const Field f = Field::prime(1009);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const WhiteConfig cfg = gen_polygonal(seed, f);
    ASSERT_EQ(cfg.lines.size(), 6u);
    EXPECT_TRUE(is_white(f, cfg.points));
    EXPECT_EQ(cfg.points, polygon_points(f, cfg.lines));
    for (const auto& l : cfg.lines) EXPECT_EQ(on_line(f, l, cfg.points), 5u);
    const SurfaceEmbedding emb = embedding(cfg);
    const auto cl = contracted_lines(emb);
    ASSERT_EQ(cl.size(), 6u);
    std::size_t matched = 0;
    for (const auto& c : cl) {
      EXPECT_EQ(c.point_indices.size(), 5u);
      for (const auto& l : cfg.lines) matched += proportional(f, c.line, l);
    }
    EXPECT_EQ(matched, 6u);
    std::set<Vector> images;
    for (std::size_t i = 0; i < cl.size(); ++i) {
      images.insert(cl[i].image);
      for (std::size_t j = i + 1; j < cl.size(); ++j) {
        const ProjPoint m = meet(f, cl[i].line, cl[j].line);
        EXPECT_TRUE(cfg.scheme().contains(m));
      }
    }
    EXPECT_EQ(images.size(), 6u);
  }
}

TEST(GenPolygonal, ContractedLineImagesAreConstant) {
  const Field f = Field::prime(1009);
  const WhiteConfig cfg = gen_polygonal(9, f);
  const SurfaceEmbedding emb = embedding(cfg);
  for (const auto& c : contracted_lines(emb)) {
    int tested = 0;
    for (const auto& p : points_on_curve(f, c.line)) {
      if (cfg.scheme().contains(p)) continue;
      const auto img = phi_canonical(f, emb.basis, p.coords());
      ASSERT_TRUE(img.has_value());
      EXPECT_EQ(*img, c.image);
      if (++tested == 25) break;
    }
  }
}

TEST(GenSegre, TangentsAndPoints) {
  const Field f = Field::prime(31);
  Vector t;
  for (long long v : {1, 2, 3, 5, 8, 13}) t.push_back(f.from_int(v));
  const WhiteConfig cfg = gen_segre(f, t);
  EXPECT_EQ(cfg.provenance, Provenance::segre);
  ASSERT_EQ(cfg.lines.size(), 6u);
  EXPECT_TRUE(is_white(f, cfg.points));
  EXPECT_TRUE(lines_on_common_conic(f, cfg.lines));
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(cfg.lines[i], tangent_line_to_conic(f, t[i]));
    // Tangency: restricted to the line, xz - y^2 has zero discriminant.
    const CurveForm& l = cfg.lines[i];
    const Scalar a = f.div(l.coeff(1, 0, 0), l.coeff(0, 0, 1)), b = f.div(l.coeff(0, 1, 0), l.coeff(0, 0, 1));
    EXPECT_TRUE(f.is_zero(f.sub(f.mul(b, b), f.mul(f.from_int(4), a))));
  }
  std::size_t k = 0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j, ++k) {
      const ProjPoint& p = cfg.points[k];
      std::size_t through = 0;
      for (std::size_t m = 0; m < 6; ++m) through += f.is_zero(evaluate(f, cfg.lines[m], p));
      EXPECT_EQ(through, 2u);
      EXPECT_TRUE(f.is_zero(evaluate(f, cfg.lines[i], p)));
      EXPECT_TRUE(f.is_zero(evaluate(f, cfg.lines[j], p)));
    }
  EXPECT_EQ(contracted_lines(embedding(cfg)).size(), 6u);
}

TEST(GenSegre, RejectsBadParameters) {
  const Field f = Field::prime(31);
  Vector five{f.from_int(1), f.from_int(2), f.from_int(3), f.from_int(4), f.from_int(5)};
  EXPECT_THROW(gen_segre(f, five), std::invalid_argument);
  five.push_back(f.from_int(5));
  EXPECT_THROW(gen_segre(f, five), std::invalid_argument);
}

TEST(GenSegre, RandomParametersAreWhite) {
  for (std::uint64_t p : {31, 61, 1009}) {
    const Field f = Field::prime(p);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const WhiteConfig cfg = gen_segre_random(seed, f);
      EXPECT_TRUE(is_white(f, cfg.points));
      EXPECT_EQ(cfg.params.size(), 6u);
      EXPECT_EQ(std::set<Scalar>(cfg.params.begin(), cfg.params.end()).size(), 6u);
    }
  }
}

TEST(GenPolygonal, GeneralPolygonIsNotTangentToAConic) {
  const Field f = Field::prime(1009);
  int tangential = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) tangential += lines_on_common_conic(f, gen_polygonal(seed, f).lines);
  EXPECT_EQ(tangential, 0);
}

TEST(ReduceMod, RationalConfigurations) {
  const Field q = Field::rationals();
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const WhiteConfig cfg = gen_random_config(seed, q);
    EXPECT_TRUE(is_white(q, cfg.points));
    for (std::uint64_t p : {31, 61, 127, 1009}) {
      try {
        const WhiteConfig r = reduce_mod(cfg, p);
        EXPECT_EQ(r.field, Field::prime(p));
        EXPECT_TRUE(is_white(r.field, r.points));
        for (std::size_t i = 0; i < 15; ++i)
          for (std::size_t c = 0; c < 3; ++c) {
            // The leading 1 survives reduction, so canonical forms correspond.
            EXPECT_EQ(r.points[i][c], r.field.from_rational(cfg.points[i][c].rational()));
          }
      } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::genericity_rejected);
      }
    }
  }
  const WhiteConfig over31 = gen_random_config(1, Field::prime(31));
  EXPECT_EQ(reduce_mod(over31, 31).points, over31.points);
  EXPECT_THROW(reduce_mod(over31, 61), std::invalid_argument);
}

TEST(Embedding, PhiProperties) {
  const Field f = Field::prime(1009);
  const WhiteConfig cfg = gen_random_config(5, f);
  const SurfaceEmbedding emb = embedding(cfg);
  ASSERT_EQ(emb.basis.size(), 6u);
  for (const auto& b : emb.basis)
    for (const auto& p : cfg.points) EXPECT_TRUE(f.is_zero(evaluate(f, b, p)));
  EXPECT_THROW(phi(emb, cfg.points[0]), std::invalid_argument);
  Rng rng(6);
  std::set<Vector> images;
  int n = 0;
  while (n < 200) {
    const ProjPoint a = rng.point(f);
    if (cfg.scheme().contains(a)) continue;
    const auto img = phi_canonical(f, emb.basis, a.coords());
    ASSERT_TRUE(img.has_value());
    images.insert(*img);
    ++n;
  }
  EXPECT_EQ(images.size(), 200u);
  // Move the last point onto the quartic through the other 14.
  WhiteConfig quartic = cfg;
  const std::vector<ProjPoint> first14(cfg.points.begin(), cfg.points.begin() + 14);
  const LinearSystem q4 = LinearSystem::make(f, PointScheme::simple(first14), 4);
  ASSERT_EQ(q4.dim(), 1u);
  for (std::uint64_t i = 0;; ++i) {
    const ProjPoint p = plane_point(f, i);
    if (f.is_zero(evaluate(f, q4.basis.front(), p)) && !cfg.scheme().contains(p)) {
      quartic.points[14] = p;
      break;
    }
  }
  try {
    embedding(quartic);
    FAIL() << "no error for a configuration on a quartic";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::genericity_rejected);
  }
}

TEST(Lattice, PairingAndGenus) {
  const DivisorClass h = divisor(5, 15, 1);
  EXPECT_EQ(pairing(h, h), 10);
  EXPECT_EQ(adjunction_genus(h, 15), 6);
  const DivisorClass hs = divisor(5, 18, 1);
  EXPECT_EQ(pairing(hs, hs), 7);
  EXPECT_EQ(adjunction_genus(hs, 18), 6);
  const DivisorClass l = divisor(1, 15, 0);
  DivisorClass e = divisor(0, 15, 0);
  e.m[3] = -1;
  EXPECT_EQ(pairing(l, e), 0);
  EXPECT_EQ(pairing(e, e), -1);
  const DivisorClass gamma = divisor(9, 18, 2);
  EXPECT_EQ(pairing(gamma, gamma), 9);
  EXPECT_EQ(pairing(gamma, canonical_class(18)), 9);
  EXPECT_EQ(adjunction_genus(gamma, 18), 10);
  EXPECT_THROW(pairing(h, hs), std::invalid_argument);
  EXPECT_THROW(adjunction_genus(h, 18), std::invalid_argument);
  EXPECT_EQ(to_string(h), "5L - 1E[1..15]");
}

TEST(Lattice, DoubleLocus) {
  DivisorClass h = divisor(5, 18, 0);
  for (std::size_t i = 0; i < 15; ++i) h.m[i] = 1;
  const DivisorClass d = double_locus_class(10, 3, h);
  EXPECT_EQ(d.a, 18);
  for (std::size_t i = 0; i < 18; ++i) EXPECT_EQ(d.m[i], i < 15 ? 4 : 1);
  // delta = 0 is the classical (d - 4)H - K.
  const DivisorClass k = canonical_class(18);
  const DivisorClass d0 = double_locus_class(10, 0, h);
  EXPECT_EQ(d0.a, 6 * h.a - k.a);
  for (long long delta = 0; delta < 5; ++delta) {
    const DivisorClass a = double_locus_class(10, delta, h), b = double_locus_class(10, delta + 1, h);
    EXPECT_EQ(b.a - a.a, -h.a);
    for (std::size_t i = 0; i < 18; ++i) EXPECT_EQ(b.m[i] - a.m[i], -h.m[i]);
  }
  EXPECT_THROW(double_locus_class(10, -1, h), std::invalid_argument);
}
