#include "whitesurf/trisec.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "census_kernel.hpp"
#include "whitesurf/error.hpp"
#include "whitesurf/linsys.hpp"
#include "whitesurf/rng.hpp"

namespace whitesurf {

std::string to_string(ClassKind k) {
  switch (k) {
    case ClassKind::improper:
      return "improper";
    case ClassKind::proper:
      return "proper";
    case ClassKind::quadrisecant:
      return "quadrisecant";
    case ClassKind::other:
      return "other";
  }
  return "?";
}

std::string to_string(ExcessVerdict v) {
  switch (v) {
    case ExcessVerdict::finite:
      return "finite";
    case ExcessVerdict::excess:
      return "excess";
    case ExcessVerdict::indeterminate:
      return "indeterminate";
  }
  return "?";
}

namespace {

struct Center {
  Vector v;       // canonical Phi(q)
  std::size_t j;  // pivot coordinate, v[j] = 1
};

Center center_of(const SurfaceEmbedding& emb, const ProjPoint& q) {
  const Field& f = emb.config.field;
  auto v = phi_canonical(f, emb.basis, q.coords());
  if (!v) throw Error(ErrorKind::genericity_rejected, "Phi(q) is undefined");
  std::size_t j = 0;
  while (f.is_zero((*v)[j])) ++j;
  return Center{std::move(*v), j};
}

// The five forms f_i - v_i f_j (i != j); their common zeros off P are the
// points with Phi(a) = Phi(q).
std::vector<CurveForm> projected_forms(const SurfaceEmbedding& emb, const Center& c) {
  const Field& f = emb.config.field;
  std::vector<CurveForm> out;
  for (std::size_t i = 0; i < emb.basis.size(); ++i) {
    if (i == c.j) continue;
    CurveForm g = emb.basis[i];
    for (std::size_t k = 0; k < g.coeffs.size(); ++k)
      g.coeffs[k] = f.sub(g.coeffs[k], f.mul(c.v[i], emb.basis[c.j].coeffs[k]));
    out.push_back(std::move(g));
  }
  return out;
}

std::optional<Vector> canonical_vector(const Field& f, Vector v) {
  auto it = std::find_if(v.begin(), v.end(), [&](const Scalar& s) { return !f.is_zero(s); });
  if (it == v.end()) return std::nullopt;
  const Scalar iv = f.inv(*it);
  for (auto& s : v) s = f.mul(s, iv);
  return v;
}

}  // namespace

std::optional<Vector> project_from_q(const SurfaceEmbedding& emb, const ProjPoint& q, const ProjPoint& a) {
  const Field& f = emb.config.field;
  for (const auto& p : emb.config.points)
    if (p == a) throw std::invalid_argument("project_from_q: a is a base point");
  const Center c = center_of(emb, q);
  Vector w = phi(emb, a);
  Vector out;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (i != c.j) out.push_back(f.sub(w[i], f.mul(c.v[i], w[c.j])));
  return canonical_vector(f, std::move(out));
}

std::string q_rejection(const SurfaceEmbedding& emb, const std::vector<ContractedLine>& lines, const ProjPoint& q) {
  const Field& f = emb.config.field;
  for (const auto& p : emb.config.points)
    if (p == q) return "q is a base point";
  for (const auto& cl : lines)
    if (f.is_zero(evaluate(f, cl.line, q))) return "q lies on a contracted line";
  auto v = phi_canonical(f, emb.basis, q.coords());
  if (!v) return "Phi(q) is undefined";
  for (const auto& cl : lines)
    if (cl.image == *v) return "Phi(q) is a 4-fold point";
  // A line through 4 base points maps to a line on the surface. A line
  // through exactly 3 maps to a conic spanning a plane; Phi(q) in that plane
  // (q off the line) puts a pencil of trisecants through it. Such q are the
  // extra base points of the quartics through the other 12 points.
  const auto& pts = emb.config.points;
  std::set<std::vector<Scalar>> seen;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const CurveForm l = line_through(f, pts[i], pts[j]).canonical(f);
      if (!seen.insert(l.coeffs).second) continue;
      PointScheme rest;
      for (const auto& p : pts)
        if (!f.is_zero(evaluate(f, l, p))) rest.add(p);
      const bool on = f.is_zero(evaluate(f, l, q));
      if (rest.size() == pts.size() - 4 && on) return "q lies on a line of the surface";
      if (rest.size() != pts.size() - 3 || on) continue;
      if (h0(f, rest.with(q), 4) == h0(f, rest, 4)) return "Phi(q) lies in the plane of a conic on the surface";
    }
  return {};
}

ProjPoint choose_q(const SurfaceEmbedding& emb, std::uint64_t seed, int attempts) {
  const auto lines = contracted_lines(emb);
  Rng rng(seed);
  for (int i = 0; i < attempts; ++i) {
    ProjPoint q = rng.point(emb.config.field);
    if (q_rejection(emb, lines, q).empty()) return q;
  }
  throw Error(ErrorKind::genericity_rejected, "no generic q found");
}

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (~std::uint64_t{0}) / b) return ~std::uint64_t{0};
    r *= b;
  }
  return r;
}

}  // namespace

CensusReport census(const SurfaceEmbedding& emb_in, const ProjPoint& q_in, std::uint64_t p, int maxext,
                    CensusOptions opt) {
  if (maxext < 1 || maxext > 3) throw std::invalid_argument("maxext must be 1, 2 or 3");
  if (!is_prime(p) || p == 2) throw std::invalid_argument("census needs an odd prime");
  if (ipow(p, 2 * maxext) > opt.budget)
    throw Error(ErrorKind::budget_exceeded, "p^(2 maxext) = " + std::to_string(p) + "^" + std::to_string(2 * maxext) +
                                                " exceeds the evaluation budget " + std::to_string(opt.budget));

  // Work over F_p.
  const Field& f0 = emb_in.config.field;
  SurfaceEmbedding emb = [&] {
    if (f0.kind() == FieldKind::rational) return embedding(reduce_mod(emb_in.config, p));
    if (f0.kind() == FieldKind::prime && f0.characteristic() == p) return emb_in;
    throw std::invalid_argument("census needs a configuration over Q or F_p");
  }();
  const Field fp = emb.config.field;
  ProjPoint q = q_in;
  if (f0.kind() == FieldKind::rational) {
    try {
      q = ProjPoint::make(fp, fp.from_rational(q_in[0].rational()), fp.from_rational(q_in[1].rational()),
                          fp.from_rational(q_in[2].rational()));
    } catch (const std::exception&) {
      throw Error(ErrorKind::genericity_rejected, "q does not reduce mod p");
    }
  }
  const auto lines = contracted_lines(emb);
  if (auto why = q_rejection(emb, lines, q); !why.empty()) throw Error(ErrorKind::genericity_rejected, why);

  const Center c = center_of(emb, q);
  const auto forms = projected_forms(emb, c);
  const PointScheme base = emb.config.scheme();

  CensusReport rep;
  rep.q = q;
  rep.p = p;
  rep.maxext = maxext;
  std::ostringstream id;
  id << to_string(emb.config.provenance) << "-" << emb.config.seed << "-" << fp.name();
  rep.config_id = id.str();

  std::set<std::vector<std::uint64_t>> seen;
  std::set<ProjPoint> center_hits;
  for (int k = 1; k <= maxext; ++k) {
    const Field fk = Field::extension(p, k);
    const auto res = detail::collide(fk, forms);
    LevelStats st;
    st.k = k;
    st.points = plane_size(fk.order());
    st.buckets = res.buckets.size();
    for (auto idx : res.all_zero) {
      const ProjPoint a = plane_point(fk, idx);
      if (a != q && !base.contains(a)) center_hits.insert(a);
    }
    for (const auto& bk : res.buckets) {
      if (!seen.insert(bk.key).second) continue;
      CollisionClass cls;
      cls.level = k;
      cls.key = bk.key;
      cls.member_count = bk.members.size();
      std::vector<ProjPoint> members;
      members.reserve(bk.members.size());
      for (auto idx : bk.members) members.push_back(plane_point(fk, idx));
      std::set<Vector> images;
      for (const auto& a : members) images.insert(*phi_canonical(fk, emb.basis, a.coords()));
      cls.distinct_images = images.size();
      if (images.size() == 1) {
        for (std::size_t li = 0; li < lines.size(); ++li) {
          const bool on = std::all_of(members.begin(), members.end(),
                                      [&](const ProjPoint& a) { return fk.is_zero(evaluate(fk, lines[li].line, a)); });
          if (on) {
            cls.kind = ClassKind::improper;
            cls.contracted_line = li;
            cls.image = *images.begin();
            break;
          }
        }
      } else if (members.size() == 2) {
        if (is_associated_pair(fk, base, q, members[0], members[1])) cls.kind = ClassKind::proper;
      } else if (images.size() >= 3) {
        cls.kind = ClassKind::quadrisecant;
      }
      if (members.size() > CollisionClass::kMaxMembers) members.resize(CollisionClass::kMaxMembers);
      cls.members = std::move(members);
      switch (cls.kind) {
        case ClassKind::proper:
          ++rep.proper;
          break;
        case ClassKind::improper:
          ++rep.improper;
          ++rep.contracted_line_hits;
          break;
        case ClassKind::quadrisecant:
          ++rep.quadrisecant;
          break;
        case ClassKind::other:
          ++rep.other;
          break;
      }
      rep.classes.push_back(std::move(cls));
    }
    st.proper = rep.proper;
    st.improper = rep.improper;
    st.quadrisecant = rep.quadrisecant;
    st.other = rep.other;
    rep.levels.push_back(st);
  }
  rep.at_center = center_hits.size();
  std::stable_sort(rep.classes.begin(), rep.classes.end(), [](const CollisionClass& a, const CollisionClass& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.key < b.key;
  });
  return rep;
}

ExcessReport excess_probe(const WhiteConfig& cfg, std::span<const std::uint64_t> primes, int trials,
                          std::uint64_t seed, CensusOptions opt) {
  if (primes.size() < 2) throw std::invalid_argument("excess_probe needs at least two primes");
  if (trials < 1) throw std::invalid_argument("excess_probe needs at least one trial");
  std::vector<std::uint64_t> ps(primes.begin(), primes.end());
  std::sort(ps.begin(), ps.end());
  ExcessReport rep;
  Rng rng(seed);
  bool bounded = true;
  for (auto p : ps) {
    const WhiteConfig cp = reduce_mod(cfg, p);
    const SurfaceEmbedding emb = embedding(cp);
    ExcessEvidence ev;
    ev.p = p;
    for (int t = 0; t < trials; ++t) {
      const ProjPoint q = choose_q(emb, rng.fork());
      const CensusReport cr = census(emb, q, p, 1, opt);
      ev.proper_counts.push_back(cr.proper);
      if (cr.proper > 6) bounded = false;
    }
    double s = 0;
    for (auto c : ev.proper_counts) s += static_cast<double>(c);
    ev.mean = s / static_cast<double>(trials);
    rep.table.push_back(std::move(ev));
  }
  if (bounded) {
    rep.verdict = ExcessVerdict::finite;
    rep.note = "every census found at most 6 proper lines";
    return rep;
  }
  bool grows = true;
  std::ostringstream note;
  for (std::size_t i = 0; i + 1 < rep.table.size(); ++i) {
    const auto& a = rep.table[i];
    const auto& b = rep.table[i + 1];
    const double need = 0.5 * static_cast<double>(b.p) / static_cast<double>(a.p);
    const double ratio = a.mean > 0 ? b.mean / a.mean : 0.0;
    note << "c(" << b.p << ")/c(" << a.p << ") = " << ratio << " (need >= " << need << "); ";
    if (a.mean <= 0 || ratio < need) grows = false;
  }
  rep.verdict = grows ? ExcessVerdict::excess : ExcessVerdict::indeterminate;
  rep.note = note.str();
  return rep;
}

}  // namespace whitesurf
