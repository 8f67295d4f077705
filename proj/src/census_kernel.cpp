#include "census_kernel.hpp"

#include <algorithm>
#include <stdexcept>

#include "whitesurf/error.hpp"

namespace whitesurf::detail {

namespace {

class Zech {
 public:
  explicit Zech(const Field& f) : t_(log_tables(f)), n_(static_cast<std::uint32_t>(f.order() - 1)), zero_(n_) {
    zech_.resize(n_);
    const Scalar one = f.one();
    for (std::uint32_t i = 0; i < n_; ++i) {
      const Scalar s = f.add(Scalar::from_code(t_.code_of_log[i]), one);
      zech_[i] = s.code() == 0 ? zero_ : t_.log_of_code[s.code()];
    }
  }

  std::uint32_t zero() const { return zero_; }
  std::uint32_t log(std::uint64_t code) const { return code == 0 ? zero_ : t_.log_of_code[code]; }
  std::uint64_t code(std::uint32_t l) const { return l == zero_ ? 0 : t_.code_of_log[l]; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == zero_ || b == zero_) return zero_;
    const std::uint32_t r = a + b;
    return r >= n_ ? r - n_ : r;
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (a == zero_) return b;
    if (b == zero_) return a;
    const std::uint32_t d = b >= a ? b - a : b + n_ - a;
    const std::uint32_t z = zech_[d];
    if (z == zero_) return zero_;
    const std::uint32_t r = a + z;
    return r >= n_ ? r - n_ : r;
  }
  // a / b for b != 0
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const {
    if (a == zero_) return zero_;
    return a >= b ? a - b : a + n_ - b;
  }

 private:
  const LogTables& t_;
  std::uint32_t n_;
  std::uint32_t zero_;
  std::vector<std::uint32_t> zech_;
};

constexpr int kMaxForms = 8;
constexpr int kMaxDegree = 9;

struct Key {
  std::uint32_t v[kMaxForms];
};

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

class Evaluator {
 public:
  Evaluator(const Zech& z, std::span<const CurveForm> forms, std::uint64_t q)
      : z_(z), nf_(static_cast<int>(forms.size())), d_(forms.front().degree), q_(q) {
    // coef_[i][c][b]: log of the coefficient of x^{d-b-c} y^b z^c in form i
    coef_.assign(static_cast<std::size_t>(nf_) * (d_ + 1) * (d_ + 1), z_.zero());
    for (int i = 0; i < nf_; ++i) {
      if (forms[static_cast<std::size_t>(i)].degree != d_) throw std::invalid_argument("forms of mixed degree");
      for (int c = 0; c <= d_; ++c)
        for (int b = 0; b + c <= d_; ++b)
          coef_[slot(i, c, b)] = z_.log(forms[static_cast<std::size_t>(i)].coeffs[monomial_index(d_ - b - c, b, c)].code());
    }
    g_.assign(static_cast<std::size_t>(nf_) * (d_ + 1), z_.zero());
  }

  int forms() const { return nf_; }

  // Row (x, y) with x in {0, 1}, y a log; fills g_[i][c] = sum_b coef y^b x^{...}.
  void set_row(bool x_is_one, std::uint32_t y) {
    for (int i = 0; i < nf_; ++i)
      for (int c = 0; c <= d_; ++c) {
        std::uint32_t acc;
        if (!x_is_one) {
          // x = 0 keeps only b = d - c.
          acc = z_.mul(coef_[slot(i, c, d_ - c)], pow(y, d_ - c));
        } else {
          acc = z_.zero();
          for (int b = d_ - c; b >= 0; --b) acc = z_.add(z_.mul(acc, y), coef_[slot(i, c, b)]);
        }
        g_[static_cast<std::size_t>(i * (d_ + 1) + c)] = acc;
      }
  }

  // Values at z (a log) for the current row.
  void values(std::uint32_t zl, std::uint32_t* out) const {
    for (int i = 0; i < nf_; ++i) {
      const std::uint32_t* g = &g_[static_cast<std::size_t>(i * (d_ + 1))];
      std::uint32_t acc = g[d_];
      for (int c = d_ - 1; c >= 0; --c) acc = z_.add(z_.mul(acc, zl), g[c]);
      out[i] = acc;
    }
  }

  // Scales so the first nonzero entry is 1 (log 0); false if all vanish.
  bool canonicalize(std::uint32_t* v) const {
    int j = 0;
    while (j < nf_ && v[j] == z_.zero()) ++j;
    if (j == nf_) return false;
    const std::uint32_t s = v[j];
    for (int i = j; i < nf_; ++i) v[i] = z_.div(v[i], s);
    return true;
  }

  std::uint64_t hash(const std::uint32_t* v) const {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (int i = 0; i < nf_; ++i) h = mix(h ^ (v[i] + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1)));
    return h;
  }

  // Full evaluation at a point index (slow path used for verification).
  bool key_of(std::uint64_t idx, std::uint32_t* v) {
    std::uint64_t y, zc;
    bool x1;
    if (idx == 0) {
      x1 = false, y = 0, zc = 1;
      // (0:0:1): only z^d survives.
      for (int i = 0; i < nf_; ++i) v[i] = coef_[slot(i, d_, 0)];
      return canonicalize(v);
    }
    if (idx <= q_) {
      x1 = false, y = 1, zc = idx - 1;
    } else {
      const std::uint64_t r = idx - 1 - q_;
      x1 = true, y = r / q_, zc = r % q_;
    }
    set_row(x1, z_.log(y));
    values(z_.log(zc), v);
    return canonicalize(v);
  }

 private:
  std::size_t slot(int i, int c, int b) const {
    return static_cast<std::size_t>((i * (d_ + 1) + c) * (d_ + 1) + b);
  }
  std::uint32_t pow(std::uint32_t y, int e) const {
    std::uint32_t r = 0;  // log of 1
    for (int k = 0; k < e; ++k) r = z_.mul(r, y);
    return r;
  }

  const Zech& z_;
  int nf_;
  int d_;
  std::uint64_t q_;
  std::vector<std::uint32_t> coef_;
  std::vector<std::uint32_t> g_;
};

constexpr int kIndexBits = 25;

}  // namespace

CollisionResult collide(const Field& f, std::span<const CurveForm> forms) {
  if (forms.empty() || forms.size() > static_cast<std::size_t>(kMaxForms))
    throw std::invalid_argument("collide needs 1..8 forms");
  if (forms.front().degree > kMaxDegree) throw std::invalid_argument("form degree too large for the census kernel");
  const std::uint64_t q = f.order();
  const std::uint64_t total = plane_size(q);
  if (total >= (std::uint64_t{1} << kIndexBits))
    throw Error(ErrorKind::budget_exceeded, "plane too large for the census kernel");
  const Zech zech(f);
  Evaluator ev(zech, forms, q);
  const int nf = ev.forms();

  std::vector<std::uint32_t> zlog(q);
  for (std::uint64_t c = 0; c < q; ++c) zlog[c] = zech.log(c);

  CollisionResult res;
  std::vector<std::uint64_t> entries;
  entries.reserve(total);
  std::uint32_t v[kMaxForms];
  auto push = [&](std::uint64_t idx) {
    if (!ev.canonicalize(v)) {
      res.all_zero.push_back(idx);
      return;
    }
    entries.push_back(((ev.hash(v) >> kIndexBits) << kIndexBits) | idx);
  };

  if (ev.key_of(0, v))
    entries.push_back(((ev.hash(v) >> kIndexBits) << kIndexBits) | 0);
  else
    res.all_zero.push_back(0);

  ev.set_row(false, zech.log(1));
  for (std::uint64_t zc = 0; zc < q; ++zc) {
    ev.values(zlog[zc], v);
    push(1 + zc);
  }
  for (std::uint64_t y = 0; y < q; ++y) {
    ev.set_row(true, zlog[y]);
    const std::uint64_t base = 1 + q + y * q;
    for (std::uint64_t zc = 0; zc < q; ++zc) {
      ev.values(zlog[zc], v);
      push(base + zc);
    }
  }

  std::sort(entries.begin(), entries.end());
  const std::uint64_t idx_mask = (std::uint64_t{1} << kIndexBits) - 1;
  std::vector<std::pair<Key, std::uint64_t>> group;
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i + 1;
    while (j < entries.size() && (entries[j] >> kIndexBits) == (entries[i] >> kIndexBits)) ++j;
    if (j - i >= 2) {
      group.clear();
      for (std::size_t k = i; k < j; ++k) {
        Key key{};
        const std::uint64_t idx = entries[k] & idx_mask;
        ev.key_of(idx, key.v);
        group.emplace_back(key, idx);
      }
      auto key_less = [nf](const Key& a, const Key& b) {
        return std::lexicographical_compare(a.v, a.v + nf, b.v, b.v + nf);
      };
      auto key_eq = [nf](const Key& a, const Key& b) { return std::equal(a.v, a.v + nf, b.v); };
      std::sort(group.begin(), group.end(), [&](const auto& a, const auto& b) {
        if (key_less(a.first, b.first)) return true;
        if (key_less(b.first, a.first)) return false;
        return a.second < b.second;
      });
      for (std::size_t a = 0; a < group.size();) {
        std::size_t b = a + 1;
        while (b < group.size() && key_eq(group[a].first, group[b].first)) ++b;
        if (b - a >= 2) {
          Bucket bk;
          for (int t = 0; t < nf; ++t) bk.key.push_back(zech.code(group[a].first.v[t]));
          for (std::size_t m = a; m < b; ++m) bk.members.push_back(group[m].second);
          res.buckets.push_back(std::move(bk));
        }
        a = b;
      }
    }
    i = j;
  }
  std::sort(res.buckets.begin(), res.buckets.end(), [](const Bucket& a, const Bucket& b) { return a.key < b.key; });
  return res;
}

}  // namespace whitesurf::detail
