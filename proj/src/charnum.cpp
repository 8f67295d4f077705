#include "whitesurf/charnum.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "whitesurf/error.hpp"
#include "whitesurf/linsys.hpp"
#include "whitesurf/rng.hpp"

namespace whitesurf {

HilbertProfile hilbert_function(const Field& f, const PointScheme& z) {
  if (!z.reduced()) throw std::invalid_argument("hilbert_function needs a reduced scheme");
  const std::size_t deg = z.degree();
  HilbertProfile h;
  if (deg == 0) return {0};
  h.push_back(1);
  for (int t = 1; h.back() < deg; ++t) h.push_back(rank(eval_matrix(f, z, t)));
  return h;
}

std::size_t hilbert_at(const HilbertProfile& h, int t) {
  if (t < 0) return 0;
  const auto i = static_cast<std::size_t>(t);
  return i < h.size() ? h[i] : h.back();
}

bool is_valid_character(const NumericalCharacter& chi) {
  if (chi.empty()) return false;
  const int s = static_cast<int>(chi.size());
  for (std::size_t i = 1; i < chi.size(); ++i)
    if (chi[i] > chi[i - 1]) return false;
  return chi.back() >= s;
}

namespace {

NumericalCharacter character_from_profile(const HilbertProfile& h) {
  int s = 0;
  while (hilbert_at(h, s) == monomial_count(s)) ++s;
  const auto delta = [&](int t) {
    return static_cast<long long>(hilbert_at(h, t)) - static_cast<long long>(hilbert_at(h, t - 1));
  };
  NumericalCharacter chi;
  const int top = static_cast<int>(h.size());
  for (int i = 0; i < s; ++i) {
    int n = s - 1;
    for (int t = s - 1; t <= top; ++t)
      if (delta(t) >= i + 1) ++n;
    chi.push_back(n);
  }
  return chi;
}

Transform3 random_transform(const Field& f, Rng& rng) {
  while (true) {
    Transform3 m;
    for (auto& e : m) e = rng.element(f);
    Matrix mm(f, 3, 3);
    for (std::size_t i = 0; i < 9; ++i) mm(i / 3, i % 3) = m[i];
    if (!f.is_zero(determinant(mm))) return m;
  }
}

}  // namespace

NumericalCharacter character_of(const Field& f, const PointScheme& z, std::uint64_t seed, int retries) {
  if (!z.reduced()) throw std::invalid_argument("character_of needs a reduced scheme");
  if (z.empty()) throw std::invalid_argument("character_of needs a nonempty scheme");
  Rng rng(seed);
  for (int attempt = 0; attempt <= retries; ++attempt) {
    const Transform3 m = random_transform(f, rng);
    PointScheme moved;
    for (const auto& it : z.items()) moved.add(transform(f, m, it.point));
    const HilbertProfile h = hilbert_function(f, moved);
    NumericalCharacter chi = character_from_profile(h);
    if (!is_valid_character(chi)) continue;
    if (degree_of_character(chi) != z.degree()) continue;
    const HilbertProfile back = hilbert_from_character(chi);
    bool same = true;
    for (int t = 0; t < static_cast<int>(std::max(back.size(), h.size())); ++t)
      if (hilbert_at(back, t) != hilbert_at(h, t)) same = false;
    if (same) return chi;
  }
  throw Error(ErrorKind::generic, "numerical character stayed degenerate after retries");
}

HilbertProfile hilbert_from_character(const NumericalCharacter& chi) {
  if (!is_valid_character(chi)) throw std::invalid_argument("invalid numerical character");
  const auto pp = [](long long u) { return std::max(u, 0LL); };
  const std::size_t deg = degree_of_character(chi);
  HilbertProfile h;
  for (long long t = 0;; ++t) {
    long long v = 0;
    for (std::size_t i = 0; i < chi.size(); ++i)
      v += pp(t - static_cast<long long>(i) + 1) - pp(t - chi[i] + 1);
    h.push_back(static_cast<std::size_t>(v));
    if (static_cast<std::size_t>(v) == deg) break;
  }
  return h;
}

std::size_t degree_of_character(const NumericalCharacter& chi) {
  long long d = 0;
  for (std::size_t i = 0; i < chi.size(); ++i) d += chi[i] - static_cast<long long>(i);
  return static_cast<std::size_t>(d);
}

long long superabundance(const NumericalCharacter& chi, int d) {
  const auto pp = [](long long u) { return std::max(u, 0LL); };
  long long s = 0;
  for (std::size_t i = 0; i < chi.size(); ++i)
    s += pp(chi[i] - d - 1) - pp(static_cast<long long>(i) - d - 1);
  return s;
}

bool is_uniform(const NumericalCharacter& chi) {
  for (std::size_t t = 1; t < chi.size(); ++t)
    if (chi[t - 1] > chi[t] + 1) return false;
  return true;
}

std::string to_string(const NumericalCharacter& chi) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < chi.size(); ++i) os << (i ? "," : "") << chi[i];
  os << ')';
  return os.str();
}

SplitReport ep_split(const Field& f, const PointScheme& z, std::uint64_t seed) {
  SplitReport rep;
  const NumericalCharacter chi = character_of(f, z, seed);
  std::size_t t = 1;
  while (t < chi.size() && chi[t - 1] <= chi[t] + 1) ++t;
  if (t >= chi.size()) {
    rep.diagnostic = "character has no gap";
    return rep;
  }
  rep.applicable = true;
  rep.t = static_cast<int>(t);
  for (std::size_t i = t; i < chi.size(); ++i) rep.expected.push_back(chi[i] - static_cast<int>(t));

  // Points of Z'' are exactly those whose removal creates new curves in
  // degree n_t - 1.
  const int d = chi[t] - 1;
  const std::size_t base = h0(f, z, d);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto& pt = z.items()[i].point;
    if (h0(f, z.without(i), d) == base)
      rep.on_curve.add(pt);
    else
      rep.off_curve.add(pt);
  }
  const LinearSystem sys = LinearSystem::make(f, rep.on_curve, rep.t);
  if (sys.dim() != 1) {
    rep.diagnostic = "no unique curve of degree t through the split part (h0 = " + std::to_string(sys.dim()) + ")";
    return rep;
  }
  rep.curve = sys.basis.front();
  for (const auto& it : rep.off_curve.items()) {
    if (f.is_zero(evaluate(f, rep.curve, it.point))) {
      rep.diagnostic = "split is not transversal";
      return rep;
    }
  }
  if (rep.off_curve.empty()) {
    rep.diagnostic = "empty residual part";
    return rep;
  }
  rep.transversal = true;
  rep.chi_off = character_of(f, rep.off_curve, seed + 1);
  rep.matches = rep.chi_off == rep.expected;
  return rep;
}

}  // namespace whitesurf
