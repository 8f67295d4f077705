#include "whitesurf/tripleloc.hpp"

#include <map>
#include <stdexcept>

#include "whitesurf/error.hpp"
#include "whitesurf/linsys.hpp"

namespace whitesurf {

ProjectionModel projection_model(const Field& f, const PointScheme& p, const ProjPoint& q, const ProjPoint& a,
                                 const ProjPoint& b) {
  ProjectionModel m;
  m.field = f;
  m.z = p.with(q).with(a).with(b);
  LinearSystem sys = LinearSystem::make(f, m.z, 5);
  if (sys.dim() != 4)
    throw Error(ErrorKind::genericity_rejected, "h0(Z,5) = " + std::to_string(sys.dim()) + ", expected 4");
  m.basis4 = std::move(sys.basis);
  return m;
}

TripleCurveResult triple_curve(const ProjectionModel& model) {
  const Field& f = model.field;
  const auto ker = kernel_basis(eval_matrix(f, model.z.with_multiplicity(2), 9));
  if (ker.empty()) throw Error(ErrorKind::generic, "no nonic is double along Z");
  TripleCurveResult r;
  r.kernel_dim = ker.size();
  if (ker.size() == 1) r.gamma = CurveForm{9, ker.front()};
  return r;
}

bool segre_factor_check(const Field& f, const CurveForm& gamma, const WhiteConfig& cfg, const ProjPoint& q,
                        const ProjPoint& a, const ProjPoint& b) {
  if (cfg.lines.size() != 6) return false;
  CurveForm prod = line_through(f, q, a);
  prod = multiply(f, prod, line_through(f, q, b));
  prod = multiply(f, prod, line_through(f, a, b));
  for (const auto& l : cfg.lines) prod = multiply(f, prod, l);
  return proportional(f, prod, gamma);
}

TwistedCubicReport twisted_cubic_check(const ProjectionModel& model, const CurveForm& gamma, int maxext,
                                       std::size_t min_samples, std::size_t max_samples) {
  const Field& f0 = model.field;
  if (!f0.is_finite()) throw std::invalid_argument("twisted_cubic_check needs a finite field");
  const int top = f0.kind() == FieldKind::prime ? maxext : 1;
  for (int k = 1; k <= top; ++k) {
    const Field fk = k == 1 ? f0 : Field::extension(f0.characteristic(), k);
    TwistedCubicReport rep;
    rep.extension = k;
    std::map<Vector, std::size_t> fibers;
    for (const auto& pt : points_on_curve(fk, gamma)) {
      if (rep.samples >= max_samples) break;
      if (model.z.contains(pt)) continue;
      auto img = phi_canonical(fk, model.basis4, pt.coords());
      if (!img) continue;
      ++rep.samples;
      ++fibers[*img];
    }
    rep.images = fibers.size();
    if (rep.images < min_samples) continue;
    Matrix quad(fk, 0, 10), lin(fk, 0, 4);
    Vector row(10);
    for (const auto& [v, n] : fibers) {
      lin.append_row(v);
      std::size_t c = 0;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j) row[c++] = fk.mul(v[i], v[j]);
      quad.append_row(row);
      rep.max_fiber = std::max(rep.max_fiber, n);
      if (rep.fiber_histogram.size() <= n) rep.fiber_histogram.resize(n + 1, 0);
      ++rep.fiber_histogram[n];
    }
    rep.quadric_dim = 10 - rank(quad);
    rep.linear_dim = 4 - rank(lin);
    rep.is_twisted_cubic = rep.quadric_dim == 3 && rep.linear_dim == 0;
    return rep;
  }
  throw Error(ErrorKind::generic, "too few rational points on the triple curve");
}

}  // namespace whitesurf
