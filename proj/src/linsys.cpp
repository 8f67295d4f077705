#include "whitesurf/linsys.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace whitesurf {

std::size_t h0(const Field& f, const PointScheme& z, int d) {
  if (d < 0) return 0;
  if (d == 0) return z.empty() ? 1 : 0;
  const std::size_t n = monomial_count(d);
  if (z.empty()) return n;
  return n - rank(eval_matrix(f, z, d));
}

long long virtual_dim(const PointScheme& z, int d) {
  return static_cast<long long>(d) * (d + 3) / 2 - static_cast<long long>(z.length());
}

long long irregularity(const Field& f, const PointScheme& z, int d) {
  return (static_cast<long long>(h0(f, z, d)) - 1) - std::max(virtual_dim(z, d), -1LL);
}

LinearSystem LinearSystem::make(const Field& f, const PointScheme& z, int d) {
  LinearSystem sys{d, z, {}};
  if (d < 0) return sys;
  if (d == 0) {
    if (z.empty()) sys.basis.push_back(CurveForm{0, {f.one()}});
    return sys;
  }
  if (z.empty()) {
    for (std::size_t i = 0; i < monomial_count(d); ++i) {
      CurveForm c = CurveForm::zero(f, d);
      c.coeffs[i] = f.one();
      sys.basis.push_back(std::move(c));
    }
    return sys;
  }
  for (auto& v : kernel_basis(eval_matrix(f, z, d))) sys.basis.push_back(CurveForm{d, std::move(v)});
  return sys;
}

bool is_associated_pair(const Field& f, const PointScheme& p, const ProjPoint& q, const ProjPoint& a,
                        const ProjPoint& b) {
  if (q == a || q == b || a == b) throw std::invalid_argument("associated pair inputs coincide");
  if (p.contains(q) || p.contains(a) || p.contains(b)) throw std::invalid_argument("associated pair input is a base point");
  return h0(f, p.with(q).with(a).with(b), 5) >= 4;
}

namespace {

void check_pencil(const Field& f, const CurveForm& d1, const CurveForm& d2, const PointScheme& z) {
  if (!f.is_finite()) throw std::invalid_argument("residual cycles need a finite field");
  if (!z.reduced()) throw std::invalid_argument("residual cycles need a reduced scheme");
  if (d1.degree != d2.degree) throw std::invalid_argument("pencil members of different degree");
  if (d1.is_zero(f) || d2.is_zero(f)) throw std::invalid_argument("zero pencil member");
  if (proportional(f, d1, d2)) throw std::invalid_argument("pencil members coincide");
  for (const auto& it : z.items())
    if (!f.is_zero(evaluate(f, d1, it.point)) || !f.is_zero(evaluate(f, d2, it.point)))
      throw std::invalid_argument("pencil member does not vanish on the scheme");
}

}  // namespace

ResidualResult residual_cycle(const Field& f, const CurveForm& d1, const CurveForm& d2, const PointScheme& z,
                              const std::vector<ProjPoint>& points_of_d1) {
  check_pencil(f, d1, d2, z);
  const long long expected = static_cast<long long>(d1.degree) * d1.degree - static_cast<long long>(z.degree());
  PointScheme y;
  for (const auto& pt : points_of_d1) {
    if (z.contains(pt) || !f.is_zero(evaluate(f, d2, pt))) continue;
    y.add(pt);
    if (static_cast<long long>(y.size()) > expected) break;
  }
  ResidualResult r;
  if (static_cast<long long>(y.size()) != expected) {
    r.diagnostic = "found " + std::to_string(y.size()) + " rational residual points, expected " +
                   std::to_string(expected) + " (points in extensions, tangency or a common component)";
    return r;
  }
  r.cycle = std::move(y);
  return r;
}

ResidualResult residual_cycle(const Field& f, const CurveForm& d1, const CurveForm& d2, const PointScheme& z) {
  check_pencil(f, d1, d2, z);
  return residual_cycle(f, d1, d2, z, points_on_curve(f, d1));
}

DualityReport duality_check(const Field& f, const CurveForm& d1, const CurveForm& d2, const PointScheme& z, int d,
                            const std::vector<ProjPoint>& points_of_d1) {
  DualityReport rep;
  ResidualResult res = residual_cycle(f, d1, d2, z, points_of_d1);
  if (!res.ok()) {
    rep.diagnostic = res.diagnostic;
    return rep;
  }
  rep.residual_ok = true;
  rep.residual = std::move(*res.cycle);
  rep.s = irregularity(f, z, d);
  rep.h0_residual = h0(f, rep.residual, d - 3);
  rep.holds = rep.s == static_cast<long long>(rep.h0_residual);
  return rep;
}

DualityReport duality_check(const Field& f, const CurveForm& d1, const CurveForm& d2, const PointScheme& z, int d) {
  check_pencil(f, d1, d2, z);
  return duality_check(f, d1, d2, z, d, points_on_curve(f, d1));
}

WitnessResult residuation_witness(const Field& f, const CurveForm& cm, const PointScheme& p, const PointScheme& pp,
                                  const PointScheme& q, const PointScheme& qp, int n1, int n2, int n) {
  if (n1 < 0 || n2 < 0 || n < 0 || n1 + n2 < n) throw std::invalid_argument("residuation degrees violate n1 + n2 >= n");
  for (const PointScheme* s : {&p, &pp, &q, &qp}) {
    if (!s->reduced()) throw std::invalid_argument("residuation cycles must be reduced");
    for (const auto& it : s->items())
      if (!f.is_zero(evaluate(f, cm, it.point))) throw std::invalid_argument("cycle point not on Cm");
  }
  PointScheme target = pp;
  for (const auto& it : qp.items()) target.add(it.point);  // throws on overlap
  const int e = n1 + n2 - n;
  WitnessResult out;
  const LinearSystem sys = LinearSystem::make(f, target, e);
  out.h0 = sys.dim();
  if (sys.basis.empty()) return out;
  if (!f.is_finite()) {
    out.curve = sys.basis.front();
    return out;
  }
  const auto on_cm = points_on_curve(f, cm);
  const long long bezout = static_cast<long long>(cm.degree) * e;
  for (const auto& cand : sys.basis) {
    std::size_t meets = 0;
    bool inside = true;
    for (const auto& pt : on_cm) {
      if (!f.is_zero(evaluate(f, cand, pt))) continue;
      ++meets;
      if (!target.contains(pt)) {
        inside = false;
        break;
      }
    }
    if (inside && meets == target.size() && bezout == static_cast<long long>(target.degree())) {
      out.curve = cand;
      out.intersection_verified = true;
      return out;
    }
  }
  out.curve = sys.basis.front();
  return out;
}

CubicResult unique_cubic(const Field& f, const PointScheme& q) {
  if (q.size() != 9 || !q.reduced()) throw std::invalid_argument("unique_cubic needs 9 simple points");
  const LinearSystem sys = LinearSystem::make(f, q, 3);
  CubicResult r;
  r.h0 = sys.dim();
  if (r.h0 == 1) r.cubic = sys.basis.front();
  return r;
}

std::vector<CurveForm> linkage_curves(const Field& f, const CurveForm& d1, const CurveForm& d2, const PointScheme& z,
                                      int e) {
  if (d1.degree != d2.degree) throw std::invalid_argument("pencil members of different degree");
  if (e < 1) throw std::invalid_argument("linkage degree must be positive");
  const int d = d1.degree;
  const int top = d + e;
  const auto me = monomials(e);
  const std::size_t rows = monomial_count(top);
  // Columns of M^T: D1*m and D2*m for monomials m of degree e.
  Matrix mt(f, 0, rows);
  for (const CurveForm* g : {&d1, &d2}) {
    for (std::size_t i = 0; i < me.size(); ++i) {
      CurveForm mono = CurveForm::zero(f, e);
      mono.coeffs[i] = f.one();
      mt.append_row(multiply(f, *g, mono).coeffs);
    }
  }
  const auto left = kernel_basis(mt);  // functionals vanishing on the ideal in degree d+e
  const LinearSystem sys = LinearSystem::make(f, z, d);
  Matrix cond(f, 0, me.size());
  Vector row(me.size());
  for (const auto& g : sys.basis) {
    // Column j of the multiplication map C -> C*g is g * (j-th monomial).
    std::vector<Vector> cols;
    cols.reserve(me.size());
    for (std::size_t j = 0; j < me.size(); ++j) {
      CurveForm mono = CurveForm::zero(f, e);
      mono.coeffs[j] = f.one();
      cols.push_back(multiply(f, g, mono).coeffs);
    }
    for (const auto& fn : left) {
      for (std::size_t j = 0; j < me.size(); ++j) {
        Scalar acc = f.zero();
        for (std::size_t k = 0; k < rows; ++k)
          if (!f.is_zero(fn[k]) && !f.is_zero(cols[j][k])) acc = f.add(acc, f.mul(fn[k], cols[j][k]));
        row[j] = acc;
      }
      cond.append_row(row);
    }
  }
  std::vector<CurveForm> out;
  if (cond.rows() == 0) {
    for (std::size_t j = 0; j < me.size(); ++j) {
      CurveForm mono = CurveForm::zero(f, e);
      mono.coeffs[j] = f.one();
      out.push_back(std::move(mono));
    }
    return out;
  }
  for (auto& v : kernel_basis(cond)) out.push_back(CurveForm{e, std::move(v)});
  return out;
}

namespace {

// A linear factor of c through pts.front(), found among lines joining it to
// the other points.
std::optional<std::pair<CurveForm, CurveForm>> linear_factor(const Field& f, const CurveForm& c,
                                                             const std::vector<ProjPoint>& pts) {
  if (pts.size() < 2) return std::nullopt;
  std::set<std::vector<Scalar>> tried;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CurveForm l = line_through(f, pts.front(), pts[i]);
    if (!tried.insert(l.coeffs).second) continue;
    if (auto quo = divide_by_linear(f, c, l)) return std::make_pair(std::move(l), std::move(*quo));
  }
  return std::nullopt;
}

std::vector<ProjPoint> points_on(const Field& f, const CurveForm& c, const std::vector<ProjPoint>& pool) {
  std::vector<ProjPoint> out;
  for (const auto& pt : pool)
    if (f.is_zero(evaluate(f, c, pt))) out.push_back(pt);
  return out;
}

}  // namespace

std::optional<std::array<CurveForm, 3>> split_into_lines(const Field& f, const CurveForm& cubic) {
  if (cubic.degree != 3) throw std::invalid_argument("split_into_lines needs a cubic");
  if (!f.is_finite()) throw std::invalid_argument("split_into_lines needs a finite field");
  const auto pts = points_on_curve(f, cubic);
  // Three rational lines carry at least q + 1 rational points.
  if (pts.size() < f.order() + 1) return std::nullopt;
  auto first = linear_factor(f, cubic, pts);
  if (!first) return std::nullopt;
  const auto conic_pts = points_on(f, first->second, pts);
  auto second = linear_factor(f, first->second, conic_pts);
  if (!second) return std::nullopt;
  return std::array<CurveForm, 3>{first->first, second->first, second->second.canonical(f)};
}

TriangleResult triangle_search(const Field& f, const PointScheme& p, const ProjPoint& q, std::size_t budget) {
  if (!f.is_finite()) throw std::invalid_argument("triangle_search needs a finite field");
  const PointScheme z = p.with(q);
  const LinearSystem sys = LinearSystem::make(f, z, 5);
  if (sys.dim() < 2) throw std::invalid_argument("system through P+q has no pencil");
  const CurveForm& d = sys.basis.front();
  const std::vector<CurveForm> rest(sys.basis.begin() + 1, sys.basis.end());
  const std::size_t n = rest.size();
  const std::uint64_t qn = f.order();
  TriangleResult out;
  // Projective points of P^{n-1}: leading 1 at position j, free tail after it,
  // visited in lexicographic order of the canonical representative.
  Vector c(n);
  for (std::size_t lead = n; lead-- > 0 && out.scanned < budget;) {
    const std::size_t tail = n - 1 - lead;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < tail; ++i) count *= qn;
    for (std::uint64_t idx = 0; idx < count && out.scanned < budget; ++idx) {
      std::fill(c.begin(), c.end(), f.zero());
      c[lead] = f.one();
      std::uint64_t r = idx;
      for (std::size_t i = n; i-- > lead + 1;) {
        c[i] = f.element(r % qn);
        r /= qn;
      }
      ++out.scanned;
      const CurveForm d2 = linear_combination(f, rest, c);
      const auto cubics = linkage_curves(f, d, d2, z, 3);
      if (cubics.size() != 1) continue;
      if (auto lines = split_into_lines(f, cubics.front())) {
        out.found = true;
        out.d2 = d2;
        out.cubic = cubics.front();
        out.lines = *lines;
        return out;
      }
    }
  }
  return out;
}

}  // namespace whitesurf
