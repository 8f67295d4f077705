#include "whitesurf/field.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace whitesurf {

namespace detail {

struct FieldData {
  FieldKind kind = FieldKind::rational;
  std::uint64_t p = 0;
  int k = 1;
  std::uint64_t q = 0;
  std::vector<std::uint64_t> modulus;
  mutable std::once_flag log_once;
  mutable std::unique_ptr<LogTables> logs;
};

}  // namespace detail

namespace {

using Digits = std::array<std::uint64_t, 3>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a * b) % p; }

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
  if (nr == 0) throw std::domain_error("inverse of zero");
  while (nr != 0) {
    std::int64_t qt = r / nr;
    std::int64_t tmp = t - qt * nt;
    t = nt;
    nt = tmp;
    tmp = r - qt * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

// Does the monic polynomial (low-first coefficients) have a root in F_p?
bool has_root(const std::vector<std::uint64_t>& poly, std::uint64_t p) {
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (std::size_t i = poly.size(); i-- > 0;) acc = (mulmod(acc, x, p) + poly[i]) % p;
    if (acc == 0) return true;
  }
  return false;
}

// For degree <= 3 irreducibility is the absence of roots.
std::vector<std::uint64_t> smallest_irreducible(std::uint64_t p, int k) {
  std::vector<std::uint64_t> poly(static_cast<std::size_t>(k) + 1, 0);
  poly[static_cast<std::size_t>(k)] = 1;
  if (k == 1) return poly;  // x
  // Lexicographic order with the constant term most significant.
  const std::size_t n = static_cast<std::size_t>(k);
  std::vector<std::uint64_t> c(n, 0);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) poly[i] = c[i];
    if (!has_root(poly, p)) return poly;
    std::size_t i = n;
    while (i-- > 0) {
      if (++c[i] < p) break;
      c[i] = 0;
      if (i == 0) throw std::logic_error("no irreducible polynomial found");
    }
  }
}

std::shared_ptr<const detail::FieldData> make_rational_data() {
  auto d = std::make_shared<detail::FieldData>();
  d->kind = FieldKind::rational;
  d->modulus = {0, 1};
  return d;
}

Digits decode(const detail::FieldData& d, std::uint64_t code) {
  Digits r{0, 0, 0};
  for (int i = 0; i < d.k; ++i) {
    r[static_cast<std::size_t>(i)] = code % d.p;
    code /= d.p;
  }
  return r;
}

std::uint64_t encode(const detail::FieldData& d, const Digits& c) {
  std::uint64_t code = 0;
  for (int i = d.k; i-- > 0;) code = code * d.p + c[static_cast<std::size_t>(i)];
  return code;
}

std::uint64_t ext_mul(const detail::FieldData& d, std::uint64_t a, std::uint64_t b) {
  const Digits x = decode(d, a), y = decode(d, b);
  std::array<std::uint64_t, 5> prod{0, 0, 0, 0, 0};
  const auto k = static_cast<std::size_t>(d.k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + mulmod(x[i], y[j], d.p)) % d.p;
  // x^k = -sum_{i<k} m_i x^i
  for (std::size_t deg = 2 * k - 2; deg >= k; --deg) {
    const std::uint64_t c = prod[deg];
    if (c == 0) continue;
    prod[deg] = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const std::uint64_t t = mulmod(c, d.modulus[i], d.p);
      prod[deg - k + i] = (prod[deg - k + i] + d.p - t) % d.p;
    }
  }
  Digits r{prod[0], prod[1], prod[2]};
  return encode(d, r);
}

std::uint64_t ext_add(const detail::FieldData& d, std::uint64_t a, std::uint64_t b) {
  const Digits x = decode(d, a), y = decode(d, b);
  Digits r{};
  for (std::size_t i = 0; i < 3; ++i) r[i] = (x[i] + y[i]) % d.p;
  return encode(d, r);
}

std::uint64_t ext_neg(const detail::FieldData& d, std::uint64_t a) {
  Digits x = decode(d, a);
  for (auto& c : x) c = (d.p - c) % d.p;
  return encode(d, x);
}

std::uint64_t ext_pow(const detail::FieldData& d, std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = ext_mul(d, r, a);
    a = ext_mul(d, a, a);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

Field Field::rationals() {
  static const auto data = make_rational_data();
  return Field(data);
}

Field Field::prime(std::uint64_t p) { return extension(p, 1); }

Field Field::extension(std::uint64_t p, int k) {
  if (p <= 2 || !is_prime(p)) throw std::invalid_argument("field characteristic must be an odd prime");
  if (p >= (std::uint64_t{1} << 32)) throw std::invalid_argument("characteristic too large");
  if (k < 1 || k > 3) throw std::invalid_argument("extension degree must be 1, 2 or 3");
  auto d = std::make_shared<detail::FieldData>();
  d->kind = k == 1 ? FieldKind::prime : FieldKind::extension;
  d->p = p;
  d->k = k;
  d->q = 1;
  for (int i = 0; i < k; ++i) d->q *= p;
  d->modulus = smallest_irreducible(p, k);
  return Field(d);
}

Field extension_field(std::uint64_t p, int k) { return Field::extension(p, k); }

FieldKind Field::kind() const { return d_->kind; }
std::uint64_t Field::characteristic() const { return d_->p; }
int Field::degree() const { return d_->k; }
std::uint64_t Field::order() const { return d_->q; }
const std::vector<std::uint64_t>& Field::modulus() const { return d_->modulus; }

std::string Field::name() const {
  switch (d_->kind) {
    case FieldKind::rational:
      return "QQ";
    case FieldKind::prime:
      return "GF(" + std::to_string(d_->p) + ")";
    case FieldKind::extension:
      return "GF(" + std::to_string(d_->p) + "^" + std::to_string(d_->k) + ")";
  }
  return "?";
}

bool operator==(const Field& a, const Field& b) {
  return a.d_ == b.d_ || (a.d_->kind == b.d_->kind && a.d_->p == b.d_->p && a.d_->k == b.d_->k);
}

Scalar Field::zero() const { return is_finite() ? Scalar::from_code(0) : Scalar(mpq_class(0)); }
Scalar Field::one() const { return is_finite() ? Scalar::from_code(1) : Scalar(mpq_class(1)); }

Scalar Field::from_int(long long v) const {
  if (!is_finite()) return Scalar(mpq_class(mpz_class(std::to_string(v))));
  const auto p = static_cast<long long>(d_->p);
  long long r = v % p;
  if (r < 0) r += p;
  return Scalar::from_code(static_cast<std::uint64_t>(r));
}

Scalar Field::from_rational(const mpq_class& q) const {
  if (!is_finite()) return Scalar(q);
  mpz_class pz(std::to_string(d_->p));
  mpz_class num = q.get_num() % pz;
  mpz_class den = q.get_den() % pz;
  if (num < 0) num += pz;
  if (den == 0) throw std::domain_error("denominator divisible by the characteristic");
  const Scalar n = Scalar::from_code(num.get_ui());
  const Scalar dd = Scalar::from_code(den.get_ui());
  return div(n, dd);
}

Scalar Field::from_digits(std::span<const std::uint64_t> digits) const {
  if (!is_finite()) throw std::invalid_argument("from_digits on the rationals");
  if (digits.size() > static_cast<std::size_t>(d_->k)) throw std::invalid_argument("too many digits");
  Digits c{0, 0, 0};
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= d_->p) throw std::invalid_argument("digit out of range");
    c[i] = digits[i];
  }
  return Scalar::from_code(encode(*d_, c));
}

std::vector<std::uint64_t> Field::digits(const Scalar& a) const {
  const Digits c = decode(*d_, a.code());
  return {c.begin(), c.begin() + d_->k};
}

Scalar Field::element(std::uint64_t index) const {
  if (!is_finite() || index >= d_->q) throw std::out_of_range("field element index");
  return Scalar::from_code(index);
}

bool Field::contains(const Scalar& a) const {
  if (!is_finite()) return a.is_rational();
  return !a.is_rational() && a.code() < d_->q;
}

bool Field::is_zero(const Scalar& a) const {
  if (a.is_rational()) return sgn(a.rational()) == 0;
  return a.code() == 0;
}

bool Field::is_one(const Scalar& a) const {
  if (a.is_rational()) return a.rational() == 1;
  return a.code() == 1;
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  switch (d_->kind) {
    case FieldKind::rational:
      return Scalar(mpq_class(a.rational() + b.rational()));
    case FieldKind::prime: {
      std::uint64_t s = a.code() + b.code();
      if (s >= d_->p) s -= d_->p;
      return Scalar::from_code(s);
    }
    case FieldKind::extension:
      return Scalar::from_code(ext_add(*d_, a.code(), b.code()));
  }
  return {};
}

Scalar Field::neg(const Scalar& a) const {
  switch (d_->kind) {
    case FieldKind::rational:
      return Scalar(mpq_class(-a.rational()));
    case FieldKind::prime:
      return Scalar::from_code(a.code() == 0 ? 0 : d_->p - a.code());
    case FieldKind::extension:
      return Scalar::from_code(ext_neg(*d_, a.code()));
  }
  return {};
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (d_->kind == FieldKind::rational) return Scalar(mpq_class(a.rational() - b.rational()));
  return add(a, neg(b));
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  switch (d_->kind) {
    case FieldKind::rational:
      return Scalar(mpq_class(a.rational() * b.rational()));
    case FieldKind::prime:
      return Scalar::from_code(mulmod(a.code(), b.code(), d_->p));
    case FieldKind::extension:
      return Scalar::from_code(ext_mul(*d_, a.code(), b.code()));
  }
  return {};
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero");
  switch (d_->kind) {
    case FieldKind::rational:
      return Scalar(mpq_class(1 / a.rational()));
    case FieldKind::prime:
      return Scalar::from_code(invmod(a.code(), d_->p));
    case FieldKind::extension:
      return Scalar::from_code(ext_pow(*d_, a.code(), d_->q - 2));
  }
  return {};
}

Scalar Field::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

Scalar Field::pow(const Scalar& a, std::uint64_t e) const {
  switch (d_->kind) {
    case FieldKind::rational: {
      mpq_class r(1), base = a.rational();
      while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
      }
      return Scalar(r);
    }
    case FieldKind::prime:
      return Scalar::from_code(powmod(a.code(), e, d_->p));
    case FieldKind::extension:
      return Scalar::from_code(ext_pow(*d_, a.code(), e));
  }
  return {};
}

Scalar Field::frobenius(const Scalar& a) const {
  if (d_->kind == FieldKind::rational) return a;
  return pow(a, d_->p);
}

std::string Field::to_string(const Scalar& a) const {
  if (a.is_rational()) return a.rational().get_str();
  if (d_->k == 1) return std::to_string(a.code());
  std::ostringstream os;
  os << '[';
  const auto dg = digits(a);
  for (std::size_t i = 0; i < dg.size(); ++i) os << (i ? "," : "") << dg[i];
  os << ']';
  return os.str();
}

namespace detail {

const LogTables& log_tables(const Field& f) {
  const FieldData& d = f.data();
  if (!f.is_finite() || d.q > (std::uint64_t{1} << 24)) throw std::invalid_argument("log tables need a small finite field");
  std::call_once(d.log_once, [&] {
    auto t = std::make_unique<LogTables>();
    t->q = d.q;
    const std::uint64_t n = d.q - 1;
    std::vector<std::uint64_t> primes;
    std::uint64_t m = n;
    for (std::uint64_t r = 2; r * r <= m; ++r) {
      if (m % r) continue;
      primes.push_back(r);
      while (m % r == 0) m /= r;
    }
    if (m > 1) primes.push_back(m);
    std::uint64_t g = 0;
    for (std::uint64_t c = 2; c < d.q && g == 0; ++c) {
      const Scalar s = Scalar::from_code(c);
      bool primitive = true;
      for (auto r : primes) {
        if (f.is_one(f.pow(s, n / r))) {
          primitive = false;
          break;
        }
      }
      if (primitive) g = c;
    }
    if (d.q == 3) g = 2;
    t->code_of_log.resize(n);
    t->log_of_code.assign(d.q, 0);
    Scalar x = f.one();
    const Scalar gs = Scalar::from_code(g);
    for (std::uint64_t i = 0; i < n; ++i) {
      t->code_of_log[i] = static_cast<std::uint32_t>(x.code());
      t->log_of_code[x.code()] = static_cast<std::uint32_t>(i);
      x = f.mul(x, gs);
    }
    d.logs = std::move(t);
  });
  return *d.logs;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Linear algebra

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, field_.zero()) {}

void Matrix::append_row(std::span<const Scalar> r) {
  if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
  a_.insert(a_.end(), r.begin(), r.end());
  ++rows_;
}

namespace {

struct PrimeOps {
  using T = std::uint64_t;
  std::uint64_t p;
  bool is_zero(T a) const { return a == 0; }
  T inv(T a) const { return invmod(a, p); }
  T mul(T a, T b) const { return mulmod(a, b, p); }
  // a - f*b
  T submul(T a, T f, T b) const { return (a + p - mulmod(f, b, p)) % p; }
};

struct GenericOps {
  using T = Scalar;
  const Field* f;
  bool is_zero(const T& a) const { return f->is_zero(a); }
  T inv(const T& a) const { return f->inv(a); }
  T mul(const T& a, const T& b) const { return f->mul(a, b); }
  T submul(const T& a, const T& c, const T& b) const { return f->sub(a, f->mul(c, b)); }
};

// In-place Gauss-Jordan; returns the rank and reorders rows so the first
// `rank` rows are the reduced echelon form.
template <class Ops>
std::size_t gauss_jordan(std::vector<typename Ops::T>& a, std::size_t rows, std::size_t cols, const Ops& ops,
                         std::vector<std::size_t>* pivots, bool full) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (!ops.is_zero(a[i * cols + c])) {
        piv = i;
        break;
      }
    }
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    const auto iv = ops.inv(a[r * cols + c]);
    for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = ops.mul(a[r * cols + j], iv);
    for (std::size_t i = full ? 0 : r + 1; i < rows; ++i) {
      if (i == r) continue;
      const auto fct = a[i * cols + c];
      if (ops.is_zero(fct)) continue;
      for (std::size_t j = c; j < cols; ++j) a[i * cols + j] = ops.submul(a[i * cols + j], fct, a[r * cols + j]);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

// Fraction-free (Bareiss) rank of an integer matrix.
std::size_t bareiss_rank(std::vector<mpz_class> a, std::size_t rows, std::size_t cols) {
  std::size_t r = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (sgn(a[i * cols + c]) != 0) {
        piv = i;
        break;
      }
    }
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    const mpz_class& pv = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const mpz_class fct = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class v = pv * a[i * cols + j] - fct * a[r * cols + j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i * cols + j] = std::move(v);
      }
      a[i * cols + c] = 0;
    }
    prev = pv;
    ++r;
  }
  return r;
}

std::vector<mpz_class> integer_rows(const Matrix& m) {
  std::vector<mpz_class> a(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).rational().get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const mpq_class& v = m(i, j).rational();
      a[i * m.cols() + j] = v.get_num() * (l / v.get_den());
    }
  }
  return a;
}

Matrix reduce(const Matrix& m, std::vector<std::size_t>* pivots, std::size_t* rank_out) {
  const Field& f = m.field();
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  Matrix out(f, 0, m.cols());
  if (f.kind() == FieldKind::prime) {
    std::vector<std::uint64_t> a(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) a[i * m.cols() + j] = m(i, j).code();
    r = gauss_jordan(a, m.rows(), m.cols(), PrimeOps{f.characteristic()}, &piv, true);
    std::vector<Scalar> row(m.cols());
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) row[j] = Scalar::from_code(a[i * m.cols() + j]);
      out.append_row(row);
    }
  } else {
    std::vector<Scalar> a(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) a[i * m.cols() + j] = m(i, j);
    r = gauss_jordan(a, m.rows(), m.cols(), GenericOps{&f}, &piv, true);
    for (std::size_t i = 0; i < r; ++i) out.append_row(std::span<const Scalar>(a.data() + i * m.cols(), m.cols()));
  }
  if (pivots) *pivots = piv;
  if (rank_out) *rank_out = r;
  return out;
}

}  // namespace

std::size_t rank(const Matrix& m) {
  const Field& f = m.field();
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (f.kind() == FieldKind::rational) return bareiss_rank(integer_rows(m), m.rows(), m.cols());
  if (f.kind() == FieldKind::prime) {
    std::vector<std::uint64_t> a(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) a[i * m.cols() + j] = m(i, j).code();
    return gauss_jordan(a, m.rows(), m.cols(), PrimeOps{f.characteristic()}, nullptr, false);
  }
  std::vector<Scalar> a(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i * m.cols() + j] = m(i, j);
  return gauss_jordan(a, m.rows(), m.cols(), GenericOps{&f}, nullptr, false);
}

Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots) { return reduce(m, pivots, nullptr); }

std::vector<Vector> kernel_basis(const Matrix& m) {
  const Field& f = m.field();
  std::vector<std::size_t> piv;
  const Matrix r = reduce(m, &piv, nullptr);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  Matrix ker(f, 0, m.cols());
  std::vector<Scalar> v(m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::fill(v.begin(), v.end(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f.neg(r(i, free));
    ker.append_row(v);
  }
  if (ker.rows() == 0) return {};
  const Matrix canon = rref(ker);
  std::vector<Vector> out;
  out.reserve(canon.rows());
  for (std::size_t i = 0; i < canon.rows(); ++i) out.emplace_back(canon.row(i).begin(), canon.row(i).end());
  return out;
}

Vector multiply(const Matrix& m, std::span<const Scalar> v) {
  if (v.size() != m.cols()) throw std::invalid_argument("dimension mismatch");
  const Field& f = m.field();
  Vector out(m.rows(), f.zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Scalar acc = f.zero();
    for (std::size_t j = 0; j < m.cols(); ++j) acc = f.add(acc, f.mul(m(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  std::vector<Scalar> a(m.rows() * m.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  Scalar det = f.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (!f.is_zero(a[i * n + c])) {
        piv = i;
        break;
      }
    if (piv == n) return f.zero();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
      det = f.neg(det);
    }
    det = f.mul(det, a[c * n + c]);
    const Scalar iv = f.inv(a[c * n + c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      const Scalar fct = f.mul(a[i * n + c], iv);
      if (f.is_zero(fct)) continue;
      for (std::size_t j = c; j < n; ++j) a[i * n + j] = f.sub(a[i * n + j], f.mul(fct, a[c * n + j]));
    }
  }
  return det;
}

}  // namespace whitesurf
