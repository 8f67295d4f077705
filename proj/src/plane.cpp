#include "whitesurf/plane.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace whitesurf {

std::size_t monomial_count(int d) { return d < 0 ? 0 : static_cast<std::size_t>((d + 1) * (d + 2) / 2); }

std::size_t monomial_index(int a, int b, int c) {
  const int d = a + b + c;
  return static_cast<std::size_t>((d - a) * (d - a + 1) / 2 + (d - a - b));
}

std::vector<Monomial> monomials(int d) {
  std::vector<Monomial> out;
  out.reserve(monomial_count(d));
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
  return out;
}

ProjPoint ProjPoint::make(const Field& f, Scalar x, Scalar y, Scalar z) {
  ProjPoint p;
  p.c_ = {std::move(x), std::move(y), std::move(z)};
  for (auto& c : p.c_)
    if (!f.contains(c)) throw std::invalid_argument("coordinate outside the field");
  int j = 0;
  while (j < 3 && f.is_zero(p.c_[static_cast<std::size_t>(j)])) ++j;
  if (j == 3) throw std::invalid_argument("degenerate point (0:0:0)");
  const Scalar iv = f.inv(p.c_[static_cast<std::size_t>(j)]);
  for (auto& c : p.c_) c = f.mul(c, iv);
  return p;
}

ProjPoint ProjPoint::make(const Field& f, long long x, long long y, long long z) {
  return make(f, f.from_int(x), f.from_int(y), f.from_int(z));
}

int ProjPoint::chart() const {
  for (int j = 0; j < 3; ++j) {
    const Scalar& s = c_[static_cast<std::size_t>(j)];
    if (s.is_rational() ? sgn(s.rational()) != 0 : s.code() != 0) return j;
  }
  return 3;
}

std::uint64_t plane_size(std::uint64_t q) { return q * q + q + 1; }

ProjPoint plane_point(const Field& f, std::uint64_t index) {
  const std::uint64_t q = f.order();
  if (!f.is_finite() || index >= plane_size(q)) throw std::out_of_range("plane point index");
  if (index == 0) return ProjPoint::make(f, f.zero(), f.zero(), f.one());
  if (index <= q) return ProjPoint::make(f, f.zero(), f.one(), f.element(index - 1));
  const std::uint64_t r = index - 1 - q;
  return ProjPoint::make(f, f.one(), f.element(r / q), f.element(r % q));
}

CurveForm CurveForm::zero(const Field& f, int d) {
  if (d < 0) throw std::invalid_argument("negative degree");
  return CurveForm{d, Vector(monomial_count(d), f.zero())};
}

CurveForm CurveForm::linear(const Field& f, Scalar a, Scalar b, Scalar c) {
  (void)f;
  return CurveForm{1, {std::move(a), std::move(b), std::move(c)}};
}

bool CurveForm::is_zero(const Field& f) const {
  return std::all_of(coeffs.begin(), coeffs.end(), [&](const Scalar& s) { return f.is_zero(s); });
}

CurveForm CurveForm::canonical(const Field& f) const {
  auto it = std::find_if(coeffs.begin(), coeffs.end(), [&](const Scalar& s) { return !f.is_zero(s); });
  if (it == coeffs.end()) throw std::invalid_argument("zero form has no canonical scaling");
  const Scalar iv = f.inv(*it);
  CurveForm out{degree, {}};
  out.coeffs.reserve(coeffs.size());
  for (const auto& s : coeffs) out.coeffs.push_back(f.mul(s, iv));
  return out;
}

CurveForm multiply(const Field& f, const CurveForm& p, const CurveForm& q) {
  CurveForm out = CurveForm::zero(f, p.degree + q.degree);
  const auto mp = monomials(p.degree), mq = monomials(q.degree);
  for (std::size_t i = 0; i < mp.size(); ++i) {
    if (f.is_zero(p.coeffs[i])) continue;
    for (std::size_t j = 0; j < mq.size(); ++j) {
      if (f.is_zero(q.coeffs[j])) continue;
      auto& slot = out.coeffs[monomial_index(mp[i].a + mq[j].a, mp[i].b + mq[j].b, mp[i].c + mq[j].c)];
      slot = f.add(slot, f.mul(p.coeffs[i], q.coeffs[j]));
    }
  }
  return out;
}

CurveForm linear_combination(const Field& f, std::span<const CurveForm> forms, std::span<const Scalar> c) {
  if (forms.empty() || forms.size() != c.size()) throw std::invalid_argument("linear_combination size mismatch");
  CurveForm out = CurveForm::zero(f, forms[0].degree);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].degree != out.degree) throw std::invalid_argument("mixed degrees");
    if (f.is_zero(c[i])) continue;
    for (std::size_t j = 0; j < out.coeffs.size(); ++j)
      out.coeffs[j] = f.add(out.coeffs[j], f.mul(c[i], forms[i].coeffs[j]));
  }
  return out;
}

bool proportional(const Field& f, const CurveForm& p, const CurveForm& q) {
  if (p.degree != q.degree || p.is_zero(f) || q.is_zero(f)) return false;
  return p.canonical(f) == q.canonical(f);
}

PointScheme PointScheme::simple(std::span<const ProjPoint> pts) {
  PointScheme z;
  for (const auto& p : pts) z.add(p, 1);
  return z;
}

void PointScheme::add(const ProjPoint& p, int mult) {
  if (mult < 1) throw std::invalid_argument("multiplicity must be positive");
  if (contains(p)) throw std::invalid_argument("repeated point in scheme");
  items_.push_back({p, mult});
}

PointScheme PointScheme::with(const ProjPoint& p, int mult) const {
  PointScheme z = *this;
  z.add(p, mult);
  return z;
}

PointScheme PointScheme::with_multiplicity(int mult) const {
  PointScheme z = *this;
  for (auto& it : z.items_) it.mult = mult;
  return z;
}

PointScheme PointScheme::without(std::size_t index) const {
  PointScheme z = *this;
  z.items_.erase(z.items_.begin() + static_cast<std::ptrdiff_t>(index));
  return z;
}

std::vector<ProjPoint> PointScheme::points() const {
  std::vector<ProjPoint> out;
  out.reserve(items_.size());
  for (const auto& it : items_) out.push_back(it.point);
  return out;
}

std::size_t PointScheme::length() const {
  std::size_t n = 0;
  for (const auto& it : items_) n += static_cast<std::size_t>(it.mult * (it.mult + 1) / 2);
  return n;
}

std::size_t PointScheme::degree() const {
  std::size_t n = 0;
  for (const auto& it : items_) n += static_cast<std::size_t>(it.mult);
  return n;
}

bool PointScheme::reduced() const {
  return std::all_of(items_.begin(), items_.end(), [](const Item& it) { return it.mult == 1; });
}

bool PointScheme::contains(const ProjPoint& p) const {
  return std::any_of(items_.begin(), items_.end(), [&](const Item& it) { return it.point == p; });
}

namespace {

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

Matrix eval_matrix(const Field& f, const PointScheme& z, int d) {
  if (d < 1) throw std::invalid_argument("eval_matrix needs degree >= 1");
  const auto mons = monomials(d);
  Matrix m(f, 0, mons.size());
  Vector row(mons.size());
  for (const auto& it : z.items()) {
    if (it.mult > d + 1) throw std::invalid_argument("multiplicity exceeds degree + 1");
    const int j = it.point.chart();
    if (j == 3) throw std::invalid_argument("degenerate point");
    int u = -1, v = -1;
    for (int k = 0; k < 3; ++k) {
      if (k == j) continue;
      (u < 0 ? u : v) = k;
    }
    const Scalar& u0 = it.point[static_cast<std::size_t>(u)];
    const Scalar& v0 = it.point[static_cast<std::size_t>(v)];
    for (int order = 0; order < it.mult; ++order) {
      for (int alpha = order; alpha >= 0; --alpha) {
        const int beta = order - alpha;
        for (std::size_t c = 0; c < mons.size(); ++c) {
          const int e[3] = {mons[c].a, mons[c].b, mons[c].c};
          const int e1 = e[u], e2 = e[v];
          if (e1 < alpha || e2 < beta) {
            row[c] = f.zero();
            continue;
          }
          Scalar val = f.from_int(binom(e1, alpha) * binom(e2, beta));
          val = f.mul(val, f.pow(u0, static_cast<std::uint64_t>(e1 - alpha)));
          val = f.mul(val, f.pow(v0, static_cast<std::uint64_t>(e2 - beta)));
          row[c] = std::move(val);
        }
        m.append_row(row);
      }
    }
  }
  return m;
}

Scalar evaluate(const Field& f, const CurveForm& c, std::span<const Scalar> xyz) {
  const int d = c.degree;
  // Powers of each coordinate up to d.
  std::array<std::vector<Scalar>, 3> pw;
  for (std::size_t k = 0; k < 3; ++k) {
    pw[k].resize(static_cast<std::size_t>(d) + 1);
    pw[k][0] = f.one();
    for (int e = 1; e <= d; ++e) pw[k][static_cast<std::size_t>(e)] = f.mul(pw[k][static_cast<std::size_t>(e) - 1], xyz[k]);
  }
  Scalar acc = f.zero();
  std::size_t i = 0;
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b, ++i) {
      if (f.is_zero(c.coeffs[i])) continue;
      const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b),
                 uc = static_cast<std::size_t>(d - a - b);
      acc = f.add(acc, f.mul(c.coeffs[i], f.mul(pw[0][ua], f.mul(pw[1][ub], pw[2][uc]))));
    }
  return acc;
}

Scalar evaluate(const Field& f, const CurveForm& c, const ProjPoint& p) {
  return evaluate(f, c, std::span<const Scalar>(p.coords().data(), 3));
}

CurveForm line_through(const Field& f, const ProjPoint& a, const ProjPoint& b) {
  if (a == b) throw std::invalid_argument("line_through needs distinct points");
  const auto& u = a.coords();
  const auto& v = b.coords();
  CurveForm l = CurveForm::linear(f, f.sub(f.mul(u[1], v[2]), f.mul(u[2], v[1])),
                                  f.sub(f.mul(u[2], v[0]), f.mul(u[0], v[2])),
                                  f.sub(f.mul(u[0], v[1]), f.mul(u[1], v[0])));
  return l.canonical(f);
}

CurveForm tangent_line_to_conic(const Field& f, const Scalar& t) {
  if (f.characteristic() == 2) throw std::invalid_argument("characteristic 2");
  return CurveForm::linear(f, f.mul(t, t), f.neg(f.mul(f.from_int(2), t)), f.one()).canonical(f);
}

CurveForm base_conic(const Field& f) {
  CurveForm c = CurveForm::zero(f, 2);
  c.coeffs[monomial_index(1, 0, 1)] = f.one();
  c.coeffs[monomial_index(0, 2, 0)] = f.neg(f.one());
  return c;
}

ProjPoint meet(const Field& f, const CurveForm& l1, const CurveForm& l2) {
  if (l1.degree != 1 || l2.degree != 1) throw std::invalid_argument("meet needs lines");
  const auto& u = l1.coeffs;
  const auto& v = l2.coeffs;
  const Scalar x = f.sub(f.mul(u[1], v[2]), f.mul(u[2], v[1]));
  const Scalar y = f.sub(f.mul(u[2], v[0]), f.mul(u[0], v[2]));
  const Scalar z = f.sub(f.mul(u[0], v[1]), f.mul(u[1], v[0]));
  if (f.is_zero(x) && f.is_zero(y) && f.is_zero(z)) throw std::invalid_argument("meet of equal lines");
  return ProjPoint::make(f, x, y, z);
}

namespace {

// Coefficients of C(x0, y0, z) as a polynomial in z, low degree first.
template <class Add, class Mul>
void univariate_in_z(const CurveForm& c, const std::vector<std::uint64_t>& xp, const std::vector<std::uint64_t>& yp,
                     std::vector<std::uint64_t>& out, std::uint64_t zero, Add add, Mul mul) {
  const int d = c.degree;
  out.assign(static_cast<std::size_t>(d) + 1, zero);
  std::size_t i = 0;
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b, ++i) {
      const std::uint64_t k = c.coeffs[i].code();
      if (k == zero) continue;
      auto& slot = out[static_cast<std::size_t>(d - a - b)];
      slot = add(slot, mul(k, mul(xp[static_cast<std::size_t>(a)], yp[static_cast<std::size_t>(b)])));
    }
}

}  // namespace

std::vector<ProjPoint> points_on_curve(const Field& f, const CurveForm& c) {
  if (!f.is_finite()) throw std::invalid_argument("points_on_curve needs a finite field");
  const std::uint64_t q = f.order();
  const int d = c.degree;
  std::vector<ProjPoint> out;
  std::vector<std::uint64_t> uni, xp(static_cast<std::size_t>(d) + 1), yp(static_cast<std::size_t>(d) + 1);
  std::function<std::uint64_t(std::uint64_t, std::uint64_t)> add, mul;
  if (f.kind() == FieldKind::prime) {
    const std::uint64_t p = q;
    add = [p](std::uint64_t a, std::uint64_t b) {
      const std::uint64_t s = a + b;
      return s >= p ? s - p : s;
    };
    mul = [p](std::uint64_t a, std::uint64_t b) { return (a * b) % p; };
  } else {
    add = [&f](std::uint64_t a, std::uint64_t b) { return f.add(Scalar::from_code(a), Scalar::from_code(b)).code(); };
    mul = [&f](std::uint64_t a, std::uint64_t b) { return f.mul(Scalar::from_code(a), Scalar::from_code(b)).code(); };
  }
  auto powers = [&](std::vector<std::uint64_t>& v, std::uint64_t base) {
    v[0] = 1;
    for (std::size_t e = 1; e < v.size(); ++e) v[e] = mul(v[e - 1], base);
  };
  auto horner = [&](std::uint64_t z) {
    std::uint64_t acc = 0;
    for (std::size_t e = uni.size(); e-- > 0;) acc = add(mul(acc, z), uni[e]);
    return acc;
  };
  // (0:0:1): only the z^d coefficient survives.
  if (c.coeffs.back().code() == 0) out.push_back(ProjPoint::make(f, f.zero(), f.zero(), f.one()));
  powers(xp, 0);
  powers(yp, 1);
  univariate_in_z(c, xp, yp, uni, 0, add, mul);
  for (std::uint64_t z = 0; z < q; ++z)
    if (horner(z) == 0) out.push_back(ProjPoint::make(f, f.zero(), f.one(), f.element(z)));
  powers(xp, 1);
  for (std::uint64_t y = 0; y < q; ++y) {
    powers(yp, y);
    univariate_in_z(c, xp, yp, uni, 0, add, mul);
    if (std::all_of(uni.begin(), uni.end(), [](std::uint64_t v) { return v == 0; })) {
      for (std::uint64_t z = 0; z < q; ++z) out.push_back(ProjPoint::make(f, f.one(), f.element(y), f.element(z)));
      continue;
    }
    for (std::uint64_t z = 0; z < q; ++z)
      if (horner(z) == 0) out.push_back(ProjPoint::make(f, f.one(), f.element(y), f.element(z)));
  }
  return out;
}

std::optional<CurveForm> divide_by_linear(const Field& f, const CurveForm& c, const CurveForm& l) {
  if (l.degree != 1) throw std::invalid_argument("divide_by_linear needs a linear divisor");
  if (l.is_zero(f)) throw std::invalid_argument("division by the zero form");
  if (c.degree < 1) return std::nullopt;
  int lead = 0;
  while (f.is_zero(l.coeffs[static_cast<std::size_t>(lead)])) ++lead;
  const Scalar inv_lead = f.inv(l.coeffs[static_cast<std::size_t>(lead)]);
  const int d = c.degree;
  CurveForm rem = c;
  CurveForm quo = CurveForm::zero(f, d - 1);
  const auto mons = monomials(d);
  // Eliminate monomials by descending exponent of the leading variable; each
  // step only creates monomials with a smaller exponent of that variable.
  for (int e = d; e >= 1; --e) {
    for (std::size_t i = 0; i < mons.size(); ++i) {
      int ex[3] = {mons[i].a, mons[i].b, mons[i].c};
      if (ex[lead] != e || f.is_zero(rem.coeffs[i])) continue;
      const Scalar t = f.mul(rem.coeffs[i], inv_lead);
      ex[lead] -= 1;
      quo.coeffs[monomial_index(ex[0], ex[1], ex[2])] = t;
      for (int w = 0; w < 3; ++w) {
        if (f.is_zero(l.coeffs[static_cast<std::size_t>(w)])) continue;
        int ey[3] = {ex[0], ex[1], ex[2]};
        ey[w] += 1;
        auto& slot = rem.coeffs[monomial_index(ey[0], ey[1], ey[2])];
        slot = f.sub(slot, f.mul(t, l.coeffs[static_cast<std::size_t>(w)]));
      }
    }
  }
  if (!rem.is_zero(f)) return std::nullopt;
  return quo;
}

ProjPoint transform(const Field& f, const Transform3& m, const ProjPoint& p) {
  Scalar out[3];
  for (std::size_t i = 0; i < 3; ++i) {
    Scalar acc = f.zero();
    for (std::size_t j = 0; j < 3; ++j) acc = f.add(acc, f.mul(m[3 * i + j], p[j]));
    out[i] = acc;
  }
  return ProjPoint::make(f, out[0], out[1], out[2]);
}

}  // namespace whitesurf
