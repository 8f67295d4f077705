#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"
#include "whitesurf/charnum.hpp"

using namespace whitesurf;

namespace {

std::vector<ProjPoint> distinct_points(const Field& f, Rng& rng, std::size_t n, std::vector<ProjPoint> pts = {}) {
  while (pts.size() < n) {
    const ProjPoint a = rng.point(f);
    if (std::find(pts.begin(), pts.end(), a) == pts.end()) pts.push_back(a);
  }
  return pts;
}

/// n distinct rational points of the curve C, drawn at random.
std::vector<ProjPoint> points_on(const Field& f, Rng& rng, const CurveForm& c, std::size_t n) {
  auto all = points_on_curve(f, c);
  for (std::size_t i = all.size() - 1; i > 0; --i) std::swap(all[i], all[rng.below(i + 1)]);
  all.resize(n);
  return all;
}

HilbertProfile measured(const Field& f, const PointScheme& z, int upto) {
  HilbertProfile h;
  for (int t = 0; t <= upto; ++t) h.push_back(monomial_count(t) - h0(f, z, t));
  return h;
}

}  // namespace

TEST(HilbertFunction, Examples) {
  const Field f = Field::prime(1009);
  PointScheme one;
  one.add(ProjPoint::make(f, 1, 2, 3));
  EXPECT_EQ(hilbert_function(f, one), (HilbertProfile{1}));
  EXPECT_EQ(hilbert_at(hilbert_function(f, one), 7), 1u);
  Rng rng(1);
  const PointScheme five = PointScheme::simple(distinct_points(f, rng, 5));
  EXPECT_EQ(hilbert_function(f, five), (HilbertProfile{1, 3, 5}));
  PointScheme fat;
  fat.add(ProjPoint::make(f, 1, 0, 0), 2);
  EXPECT_THROW(hilbert_function(f, fat), std::invalid_argument);
}

TEST(HilbertFunction, WhiteEighteenCycle) {
  const auto fx = whitesurf::testing::find_pair(7, 1009);
  const Field& f = fx.cfg.field;
  const PointScheme z = fx.cfg.scheme().with(fx.q).with(fx.a).with(fx.b);
  EXPECT_EQ(hilbert_function(f, z), (HilbertProfile{1, 3, 6, 10, 15, 17, 18}));
  const NumericalCharacter chi = character_of(f, z, 3);
  EXPECT_EQ(chi, (NumericalCharacter{7, 6, 5, 5, 5}));
  EXPECT_EQ(hilbert_from_character(chi), hilbert_function(f, z));
}

TEST(CharacterOf, Examples) {
  const Field f = Field::prime(1009);
  PointScheme one;
  one.add(ProjPoint::make(f, 0, 1, 5));
  EXPECT_EQ(character_of(f, one), (NumericalCharacter{1}));
  Rng rng(2);
  EXPECT_EQ(character_of(f, PointScheme::simple(distinct_points(f, rng, 5))), (NumericalCharacter{3, 3}));
  // 5 collinear points and one more.
  const CurveForm l = CurveForm::linear(f, f.one(), f.from_int(2), f.from_int(3));
  auto pts = points_on(f, rng, l, 5);
  pts = distinct_points(f, rng, 6, pts);
  EXPECT_EQ(character_of(f, PointScheme::simple(pts)), (NumericalCharacter{5, 2}));
}

TEST(HilbertFromCharacter, Examples) {
  EXPECT_EQ(hilbert_from_character({1}), (HilbertProfile{1}));
  EXPECT_EQ(hilbert_from_character({3, 3}), (HilbertProfile{1, 3, 5}));
  EXPECT_EQ(hilbert_from_character({7, 6, 5, 5, 5}), (HilbertProfile{1, 3, 6, 10, 15, 17, 18}));
  EXPECT_EQ(hilbert_at(hilbert_from_character({7, 6, 5, 5, 5}), 9), 18u);
}

TEST(DegreeOfCharacter, Examples) {
  EXPECT_EQ(degree_of_character({1}), 1u);
  EXPECT_EQ(degree_of_character({3, 3}), 5u);
  EXPECT_EQ(degree_of_character({7, 6, 5, 5, 5}), 18u);
  EXPECT_EQ(degree_of_character({5, 2}), 6u);
}

TEST(Superabundance, Examples) {
  const NumericalCharacter w{7, 6, 5, 5, 5};
  EXPECT_EQ(superabundance(w, 5), 1);
  EXPECT_EQ(superabundance(w, 6), 0);
  EXPECT_EQ(superabundance(w, 9), 0);
  EXPECT_EQ(superabundance({3, 3}, 2), 0);
  EXPECT_EQ(superabundance({5, 2}, 1), 3);
}

TEST(IsUniform, Examples) {
  EXPECT_TRUE(is_uniform({7, 6, 5, 5, 5}));
  EXPECT_FALSE(is_uniform({5, 3}));
  EXPECT_TRUE(is_uniform({3, 3}));
  EXPECT_TRUE(is_valid_character({3, 3}));
  EXPECT_FALSE(is_valid_character({3, 4}));
  EXPECT_FALSE(is_valid_character({2, 2, 2}));
  EXPECT_EQ(to_string(NumericalCharacter{7, 6, 5, 5, 5}), "(7,6,5,5,5)");
}

TEST(CharnumProperty, RoundTripOnRandomSchemes) {
  const Field f = Field::prime(1009);
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng.below(25);
    std::vector<ProjPoint> pts;
    // A third of the schemes put many points on a line or conic.
    if (t % 3 == 1 && n >= 4) {
      const CurveForm l = CurveForm::linear(f, rng.element(f), rng.element(f), rng.nonzero(f));
      pts = points_on(f, rng, l, std::min<std::size_t>(n, 3 + rng.below(n - 2)));
    } else if (t % 3 == 2 && n >= 6) {
      pts = points_on(f, rng, base_conic(f), std::min<std::size_t>(n, 5 + rng.below(n - 4)));
    }
    const PointScheme z = PointScheme::simple(distinct_points(f, rng, n, pts));
    const NumericalCharacter chi = character_of(f, z, rng.next());
    ASSERT_TRUE(is_valid_character(chi)) << to_string(chi);
    const HilbertProfile h = hilbert_function(f, z);
    EXPECT_EQ(hilbert_from_character(chi), h) << to_string(chi);
    EXPECT_EQ(degree_of_character(chi), n);
    EXPECT_EQ(h.back(), n);
    const HilbertProfile m = measured(f, z, static_cast<int>(h.size()) + 1);
    for (std::size_t d = 0; d < m.size(); ++d) EXPECT_EQ(m[d], hilbert_at(h, static_cast<int>(d)));
    // Index of specialty: the last degree with superabundance is n_0 - 2.
    int last = -1;
    for (int d = 0; d <= 30; ++d)
      if (superabundance(chi, d) > 0) last = d;
    EXPECT_EQ(last, chi.front() - 2) << to_string(chi);
  }
}

TEST(CharnumProperty, SuperabundanceMatchesIrregularity) {
  const Field f = Field::prime(1009);
  Rng rng(4);
  int generic = 0;
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng.below(22);
    const PointScheme z = PointScheme::simple(distinct_points(f, rng, n));
    const NumericalCharacter chi = character_of(f, z, rng.next());
    for (int d = 1; d <= 7; ++d) {
      const long long h1 = static_cast<long long>(n) - static_cast<long long>(hilbert_at(hilbert_function(f, z), d));
      EXPECT_EQ(superabundance(chi, d), h1);
      if (virtual_dim(z, d) >= -1) {
        EXPECT_EQ(superabundance(chi, d), irregularity(f, z, d));
        ++generic;
      }
    }
  }
  EXPECT_GT(generic, 100);
}

TEST(EpSplit, FiveCollinearAndOne) {
  const Field f = Field::prime(1009);
  Rng rng(5);
  const CurveForm l = CurveForm::linear(f, f.from_int(4), f.neg(f.one()), f.from_int(9));
  const auto on = points_on(f, rng, l, 5);
  const auto pts = distinct_points(f, rng, 6, on);
  const SplitReport rep = ep_split(f, PointScheme::simple(pts), 6);
  ASSERT_TRUE(rep.applicable);
  ASSERT_TRUE(rep.transversal) << rep.diagnostic;
  EXPECT_EQ(rep.t, 1);
  EXPECT_TRUE(proportional(f, rep.curve, l));
  EXPECT_EQ(rep.on_curve, PointScheme::simple(on));
  EXPECT_EQ(rep.off_curve.size(), 1u);
  EXPECT_EQ(rep.chi_off, (NumericalCharacter{1}));
  EXPECT_EQ(rep.expected, (NumericalCharacter{1}));
  EXPECT_TRUE(rep.matches);
}

TEST(EpSplit, UniformIsNotApplicable) {
  const Field f = Field::prime(1009);
  Rng rng(6);
  const SplitReport rep = ep_split(f, PointScheme::simple(distinct_points(f, rng, 10)));
  EXPECT_FALSE(rep.applicable);
  EXPECT_FALSE(rep.diagnostic.empty());
}

TEST(EpSplitProperty, ConstructedGaps) {
  // k points on a curve T of degree t plus a few generic points: for k large
  // the character has a gap at t and Z'' is the generic part.
  const Field f = Field::prime(1009);
  Rng rng(7);
  int valid = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int t = 1 + static_cast<int>(rng.below(2));
    const CurveForm T = t == 1 ? CurveForm::linear(f, rng.element(f), rng.element(f), rng.nonzero(f))
                               : base_conic(f);
    const std::size_t k = (t == 1 ? 6 : 11) + rng.below(4);
    const std::size_t extra = 1 + rng.below(3);
    auto pts = points_on(f, rng, T, k);
    pts = distinct_points(f, rng, k + extra, pts);
    const SplitReport rep = ep_split(f, PointScheme::simple(pts), rng.next());
    ASSERT_TRUE(rep.applicable) << to_string(character_of(f, PointScheme::simple(pts)));
    if (!rep.transversal) continue;
    ++valid;
    EXPECT_TRUE(rep.matches) << to_string(rep.chi_off) << " vs " << to_string(rep.expected);
    EXPECT_EQ(rep.on_curve.size() + rep.off_curve.size(), pts.size());
    for (const auto& it : rep.on_curve.items()) EXPECT_TRUE(f.is_zero(evaluate(f, rep.curve, it.point)));
  }
  EXPECT_GT(valid, 25);
}
