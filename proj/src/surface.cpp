#include "whitesurf/surface.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "whitesurf/error.hpp"
#include "whitesurf/linsys.hpp"
#include "whitesurf/rng.hpp"

namespace whitesurf {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::random:
      return "random";
    case Provenance::polygonal:
      return "polygonal";
    case Provenance::segre:
      return "segre";
  }
  return "?";
}

bool is_white(const Field& f, std::span<const ProjPoint> pts) {
  const PointScheme z = PointScheme::simple(pts);
  return h0(f, z, 4) == 0 && h0(f, z, 5) == 6;
}

bool has_aligned_five(const Field& f, std::span<const ProjPoint> pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const CurveForm l = line_through(f, pts[i], pts[j]);
      std::size_t on = 0;
      for (const auto& pt : pts)
        if (f.is_zero(evaluate(f, l, pt))) ++on;
      if (on >= 5) return true;
    }
  return false;
}

bool lines_on_common_conic(const Field& f, std::span<const CurveForm> lines) {
  PointScheme dual;
  for (const auto& l : lines) dual.add(ProjPoint::make(f, l.coeffs[0], l.coeffs[1], l.coeffs[2]));
  return h0(f, dual, 2) > 0;
}

std::vector<ProjPoint> polygon_points(const Field& f, std::span<const CurveForm> lines) {
  std::vector<ProjPoint> pts;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) pts.push_back(meet(f, lines[i], lines[j]));
  return pts;
}

namespace {

bool distinct(std::span<const ProjPoint> pts) {
  std::set<ProjPoint> s(pts.begin(), pts.end());
  return s.size() == pts.size();
}

bool three_concurrent(const Field& f, std::span<const CurveForm> lines) {
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      for (std::size_t k = j + 1; k < lines.size(); ++k) {
        Matrix m(f, 3, 3);
        for (std::size_t c = 0; c < 3; ++c) {
          m(0, c) = lines[i].coeffs[c];
          m(1, c) = lines[j].coeffs[c];
          m(2, c) = lines[k].coeffs[c];
        }
        if (f.is_zero(determinant(m))) return true;
      }
  return false;
}

// How many lines carry at least 5 of the points, and whether each carries
// exactly 5.
std::pair<std::size_t, bool> five_lines(const Field& f, std::span<const ProjPoint> pts) {
  std::set<std::vector<Scalar>> seen;
  std::size_t count = 0;
  bool exact = true;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const CurveForm l = line_through(f, pts[i], pts[j]);
      if (!seen.insert(l.coeffs).second) continue;
      std::size_t on = 0;
      for (const auto& pt : pts)
        if (f.is_zero(evaluate(f, l, pt))) ++on;
      if (on >= 5) {
        ++count;
        exact = exact && on == 5;
      }
    }
  return {count, exact};
}

bool polygonal_ok(const Field& f, std::span<const CurveForm> lines, std::span<const ProjPoint> pts) {
  if (three_concurrent(f, lines) || !distinct(pts)) return false;
  if (lines_on_common_conic(f, lines)) return false;
  const auto [count, exact] = five_lines(f, pts);
  return count == 6 && exact && is_white(f, pts);
}

CurveForm random_line(const Field& f, Rng& rng) {
  while (true) {
    CurveForm l = CurveForm::linear(f, rng.element(f), rng.element(f), rng.element(f));
    if (!l.is_zero(f)) return l.canonical(f);
  }
}

}  // namespace

WhiteConfig gen_random_config(std::uint64_t seed, const Field& f, GenOptions opt) {
  Rng rng(seed);
  for (int attempt = 0; attempt < opt.attempts; ++attempt) {
    std::vector<ProjPoint> pts;
    std::set<ProjPoint> seen;
    while (pts.size() < 15) {
      ProjPoint p = rng.point(f);
      if (seen.insert(p).second) pts.push_back(p);
    }
    if (!is_white(f, pts)) continue;
    if (!opt.allow_aligned && has_aligned_five(f, pts)) continue;
    WhiteConfig cfg;
    cfg.field = f;
    cfg.points = std::move(pts);
    cfg.provenance = Provenance::random;
    cfg.seed = seed;
    return cfg;
  }
  throw Error(ErrorKind::generation_failed, "random White configuration: resample budget exhausted");
}

WhiteConfig gen_polygonal(std::uint64_t seed, const Field& f, GenOptions opt) {
  if (f.characteristic() == 2) throw std::invalid_argument("characteristic 2");
  Rng rng(seed);
  for (int attempt = 0; attempt < opt.attempts; ++attempt) {
    std::vector<CurveForm> lines;
    for (int i = 0; i < 6; ++i) lines.push_back(random_line(f, rng));
    std::set<std::vector<Scalar>> uniq;
    for (const auto& l : lines) uniq.insert(l.coeffs);
    if (uniq.size() != 6 || three_concurrent(f, lines)) continue;
    auto pts = polygon_points(f, lines);
    if (!polygonal_ok(f, lines, pts)) continue;
    WhiteConfig cfg;
    cfg.field = f;
    cfg.points = std::move(pts);
    cfg.provenance = Provenance::polygonal;
    cfg.seed = seed;
    cfg.lines = std::move(lines);
    return cfg;
  }
  throw Error(ErrorKind::generation_failed, "polygonal configuration: resample budget exhausted");
}

WhiteConfig gen_segre(const Field& f, std::span<const Scalar> t) {
  if (f.characteristic() == 2) throw std::invalid_argument("characteristic 2");
  std::set<Scalar> uniq(t.begin(), t.end());
  if (t.size() != 6 || uniq.size() != 6) throw std::invalid_argument("Segre configurations need 6 distinct parameters");
  WhiteConfig cfg;
  cfg.field = f;
  cfg.provenance = Provenance::segre;
  cfg.params.assign(t.begin(), t.end());
  const Scalar two = f.from_int(2);
  for (std::size_t i = 0; i < 6; ++i) cfg.lines.push_back(tangent_line_to_conic(f, t[i]));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j)
      cfg.points.push_back(ProjPoint::make(f, two, f.add(t[i], t[j]), f.mul(two, f.mul(t[i], t[j]))));
  if (!distinct(cfg.points) || !is_white(f, cfg.points))
    throw Error(ErrorKind::generation_failed, "Segre parameters violate the White condition");
  return cfg;
}

WhiteConfig gen_segre_random(std::uint64_t seed, const Field& f, GenOptions opt) {
  Rng rng(seed);
  for (int attempt = 0; attempt < opt.attempts; ++attempt) {
    Vector t;
    std::set<Scalar> uniq;
    while (t.size() < 6) {
      Scalar s = rng.element(f);
      if (uniq.insert(s).second) t.push_back(s);
    }
    try {
      WhiteConfig cfg = gen_segre(f, t);
      cfg.seed = seed;
      if (five_lines(f, cfg.points).first != 6) continue;
      return cfg;
    } catch (const Error&) {
      continue;
    }
  }
  throw Error(ErrorKind::generation_failed, "Segre configuration: resample budget exhausted");
}

WhiteConfig reduce_mod(const WhiteConfig& cfg, std::uint64_t p) {
  if (cfg.field.is_finite()) {
    if (cfg.field.characteristic() == p && cfg.field.degree() == 1) return cfg;
    throw std::invalid_argument("reduce_mod needs a configuration over Q");
  }
  const Field fp = Field::prime(p);
  auto reject = [&](const std::string& why) {
    return Error(ErrorKind::genericity_rejected, "reduction mod " + std::to_string(p) + ": " + why);
  };
  auto red = [&](const Scalar& s) {
    try {
      return fp.from_rational(s.rational());
    } catch (const std::domain_error&) {
      throw reject("denominator divisible by p");
    }
  };
  WhiteConfig out;
  out.field = fp;
  out.provenance = cfg.provenance;
  out.seed = cfg.seed;
  try {
    for (const auto& pt : cfg.points) out.points.push_back(ProjPoint::make(fp, red(pt[0]), red(pt[1]), red(pt[2])));
    for (const auto& l : cfg.lines) {
      CurveForm r{1, {red(l.coeffs[0]), red(l.coeffs[1]), red(l.coeffs[2])}};
      if (r.is_zero(fp)) throw reject("line vanishes");
      out.lines.push_back(r.canonical(fp));
    }
  } catch (const std::invalid_argument&) {
    throw reject("degenerate point");
  }
  for (const auto& s : cfg.params) out.params.push_back(red(s));
  if (!distinct(out.points)) throw reject("points collide");
  if (!is_white(fp, out.points)) throw reject("not White");
  switch (cfg.provenance) {
    case Provenance::random:
      if (has_aligned_five(fp, out.points)) throw reject("five points aligned");
      break;
    case Provenance::polygonal:
      if (!polygonal_ok(fp, out.lines, out.points)) throw reject("lines not general");
      break;
    case Provenance::segre: {
      std::set<Scalar> uniq(out.params.begin(), out.params.end());
      if (uniq.size() != 6 || five_lines(fp, out.points).first != 6) throw reject("parameters collide");
      break;
    }
  }
  return out;
}

SurfaceEmbedding embedding(const WhiteConfig& cfg) {
  const Field& f = cfg.field;
  const PointScheme z = cfg.scheme();
  if (h0(f, z, 4) != 0) throw Error(ErrorKind::genericity_rejected, "configuration lies on a quartic");
  LinearSystem sys = LinearSystem::make(f, z, 5);
  if (sys.dim() != 6)
    throw Error(ErrorKind::genericity_rejected, "h0(P,5) = " + std::to_string(sys.dim()) + ", expected 6");
  return SurfaceEmbedding{cfg, std::move(sys.basis)};
}

Vector phi(const SurfaceEmbedding& emb, const ProjPoint& a) {
  for (const auto& p : emb.config.points)
    if (p == a) throw std::invalid_argument("phi is undefined at a base point");
  Vector v;
  for (const auto& g : emb.basis) v.push_back(evaluate(emb.config.field, g, a));
  return v;
}

std::optional<Vector> phi_canonical(const Field& f, std::span<const CurveForm> basis, std::span<const Scalar> a) {
  Vector v;
  for (const auto& g : basis) v.push_back(evaluate(f, g, a));
  auto it = std::find_if(v.begin(), v.end(), [&](const Scalar& s) { return !f.is_zero(s); });
  if (it == v.end()) return std::nullopt;
  const Scalar iv = f.inv(*it);
  for (auto& s : v) s = f.mul(s, iv);
  return v;
}

std::vector<ContractedLine> contracted_lines(const SurfaceEmbedding& emb) {
  const Field& f = emb.config.field;
  const auto& pts = emb.config.points;
  std::vector<ContractedLine> out;
  std::set<std::vector<Scalar>> seen;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      CurveForm l = line_through(f, pts[i], pts[j]);
      if (!seen.insert(l.coeffs).second) continue;
      ContractedLine cl;
      for (std::size_t k = 0; k < pts.size(); ++k)
        if (f.is_zero(evaluate(f, l, pts[k]))) cl.point_indices.push_back(k);
      if (cl.point_indices.size() < 5) continue;
      // A point of the line off the configuration: pts[i] + k pts[j].
      for (long long k = 1;; ++k) {
        Scalar c[3];
        for (std::size_t u = 0; u < 3; ++u) c[u] = f.add(pts[i][u], f.mul(f.from_int(k), pts[j][u]));
        if (f.is_zero(c[0]) && f.is_zero(c[1]) && f.is_zero(c[2])) continue;
        const ProjPoint a = ProjPoint::make(f, c[0], c[1], c[2]);
        if (std::find(pts.begin(), pts.end(), a) != pts.end()) continue;
        auto img = phi_canonical(f, emb.basis, a.coords());
        if (!img) throw std::logic_error("contracted line meets the base locus");
        cl.image = std::move(*img);
        break;
      }
      cl.line = std::move(l);
      out.push_back(std::move(cl));
    }
  std::sort(out.begin(), out.end(),
            [](const ContractedLine& a, const ContractedLine& b) { return a.line.coeffs < b.line.coeffs; });
  return out;
}

DivisorClass divisor(long long a, std::size_t n, long long m_each) {
  return DivisorClass{a, std::vector<long long>(n, m_each)};
}

long long pairing(const DivisorClass& x, const DivisorClass& y) {
  if (x.m.size() != y.m.size()) throw std::invalid_argument("divisor classes over different blow-ups");
  long long s = x.a * y.a;
  for (std::size_t i = 0; i < x.m.size(); ++i) s -= x.m[i] * y.m[i];
  return s;
}

DivisorClass canonical_class(std::size_t n) { return divisor(-3, n, -1); }

long long adjunction_genus(const DivisorClass& d, std::size_t n) {
  if (d.m.size() != n) throw std::invalid_argument("class length does not match the blow-up");
  const long long v = pairing(d, d) + pairing(d, canonical_class(n));
  if (v % 2 != 0) throw std::invalid_argument("odd D.D + D.K");
  return 1 + v / 2;
}

DivisorClass double_locus_class(long long deg_x, long long delta, const DivisorClass& h) {
  if (delta < 0) throw std::invalid_argument("negative delta");
  const long long c = deg_x - 4 - delta;
  const DivisorClass k = canonical_class(h.m.size());
  DivisorClass out{c * h.a - k.a, {}};
  for (std::size_t i = 0; i < h.m.size(); ++i) out.m.push_back(c * h.m[i] - k.m[i]);
  return out;
}

std::string to_string(const DivisorClass& d) {
  std::ostringstream os;
  os << d.a << "L";
  std::size_t i = 0;
  while (i < d.m.size()) {
    std::size_t j = i;
    while (j + 1 < d.m.size() && d.m[j + 1] == d.m[i]) ++j;
    const long long m = d.m[i];
    if (m != 0) {
      os << (m > 0 ? " - " : " + ") << (m > 0 ? m : -m) << "E";
      if (i == j)
        os << (i + 1);
      else
        os << "[" << (i + 1) << ".." << (j + 1) << "]";
    }
    i = j + 1;
  }
  return os.str();
}

}  // namespace whitesurf
