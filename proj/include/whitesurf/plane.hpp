#pragma once

// Points, forms and fat-point conditions in the projective plane.
//
// Monomials of degree d are ordered degree-lexicographically with x > y > z:
// x^d, x^{d-1}y, x^{d-1}z, x^{d-2}y^2, ... , z^d.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "whitesurf/field.hpp"

namespace whitesurf {

struct Monomial {
  int a, b, c;  // exponents of x, y, z
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

std::size_t monomial_count(int d);
/// Position of x^a y^b z^c among the monomials of degree a+b+c.
std::size_t monomial_index(int a, int b, int c);
std::vector<Monomial> monomials(int d);

class ProjPoint {
 public:
  /// Canonical representative: first nonzero coordinate scaled to 1.
  static ProjPoint make(const Field& f, Scalar x, Scalar y, Scalar z);
  static ProjPoint make(const Field& f, long long x, long long y, long long z);

  const std::array<Scalar, 3>& coords() const { return c_; }
  const Scalar& operator[](std::size_t i) const { return c_[i]; }
  /// Index of the coordinate that equals 1.
  int chart() const;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  /// Lexicographic on coordinates; over finite fields this is the plane
  /// enumeration order (0:0:1), (0:1:z), (1:y:z).
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.c_ < b.c_; }

 private:
  std::array<Scalar, 3> c_;
};

/// Number of points of P^2 over a field with q elements.
std::uint64_t plane_size(std::uint64_t q);
/// The point with the given enumeration index.
ProjPoint plane_point(const Field& f, std::uint64_t index);

struct CurveForm {
  int degree = 0;
  Vector coeffs;

  static CurveForm zero(const Field& f, int d);
  static CurveForm linear(const Field& f, Scalar a, Scalar b, Scalar c);
  bool is_zero(const Field& f) const;
  /// Scaled so the first nonzero coefficient is 1.
  CurveForm canonical(const Field& f) const;
  const Scalar& coeff(int a, int b, int c) const { return coeffs[monomial_index(a, b, c)]; }

  friend bool operator==(const CurveForm&, const CurveForm&) = default;
};

CurveForm multiply(const Field& f, const CurveForm& p, const CurveForm& q);
CurveForm linear_combination(const Field& f, std::span<const CurveForm> forms, std::span<const Scalar> c);
/// Same curve up to a nonzero scalar.
bool proportional(const Field& f, const CurveForm& p, const CurveForm& q);

class PointScheme {
 public:
  struct Item {
    ProjPoint point;
    int mult;
    friend bool operator==(const Item&, const Item&) = default;
  };

  PointScheme() = default;
  static PointScheme simple(std::span<const ProjPoint> pts);

  /// Throws std::invalid_argument on a repeated point or m < 1.
  void add(const ProjPoint& p, int mult = 1);
  PointScheme with(const ProjPoint& p, int mult = 1) const;
  PointScheme with_multiplicity(int mult) const;
  PointScheme without(std::size_t index) const;

  const std::vector<Item>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::vector<ProjPoint> points() const;
  /// Number of linear conditions, sum m(m+1)/2.
  std::size_t length() const;
  /// Sum of multiplicities.
  std::size_t degree() const;
  bool reduced() const;
  bool contains(const ProjPoint& p) const;

  friend bool operator==(const PointScheme&, const PointScheme&) = default;

 private:
  std::vector<Item> items_;
};

/// Conditions for vanishing on Z: for multiplicity m at p, the Hasse
/// derivatives of order < m in the affine chart of p, ordered by total order
/// and then by descending order in the first affine variable.
Matrix eval_matrix(const Field& f, const PointScheme& z, int d);

Scalar evaluate(const Field& f, const CurveForm& c, const ProjPoint& p);
Scalar evaluate(const Field& f, const CurveForm& c, std::span<const Scalar> xyz);

/// Throws std::invalid_argument when a == b.
CurveForm line_through(const Field& f, const ProjPoint& a, const ProjPoint& b);
/// The tangent t^2 x - 2t y + z to xz = y^2 at (1:t:t^2).
CurveForm tangent_line_to_conic(const Field& f, const Scalar& t);
/// The fixed conic xz - y^2.
CurveForm base_conic(const Field& f);
/// Intersection point of two distinct lines.
ProjPoint meet(const Field& f, const CurveForm& l1, const CurveForm& l2);

/// All F-rational points of C in enumeration order; F must be finite.
std::vector<ProjPoint> points_on_curve(const Field& f, const CurveForm& c);

/// Exact quotient C / L, or nullopt when L does not divide C.
std::optional<CurveForm> divide_by_linear(const Field& f, const CurveForm& c, const CurveForm& l);

/// Row-major 3x3 coordinate change acting on column vectors.
using Transform3 = std::array<Scalar, 9>;
ProjPoint transform(const Field& f, const Transform3& m, const ProjPoint& p);

}  // namespace whitesurf
