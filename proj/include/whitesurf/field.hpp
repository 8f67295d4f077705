#pragma once

// Exact scalars over Q and F_{p^k} (k <= 3), plus dense exact linear algebra.
//
// A Field is a cheap, immutable handle; Scalars carry no field pointer and all
// arithmetic goes through the Field that owns them. Finite-field elements are
// stored as their code sum_i c_i p^i over the polynomial basis of the fixed
// modulus, so element codes double as the canonical enumeration order.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace whitesurf {

class Scalar {
 public:
  Scalar() : v_(std::uint64_t{0}) {}
  explicit Scalar(mpq_class q) : v_(std::move(q)) { std::get<1>(v_).canonicalize(); }

  static Scalar from_code(std::uint64_t code) {
    Scalar s;
    s.v_ = code;
    return s;
  }

  bool is_rational() const noexcept { return v_.index() == 1; }
  std::uint64_t code() const { return std::get<0>(v_); }
  const mpq_class& rational() const { return std::get<1>(v_); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return a.v_ < b.v_; }

 private:
  std::variant<std::uint64_t, mpq_class> v_;
};

enum class FieldKind { rational, prime, extension };

namespace detail {
struct FieldData;
}

class Field {
 public:
  /// The rationals.
  static Field rationals();
  /// F_p for an odd prime p < 2^32.
  static Field prime(std::uint64_t p);
  /// F_{p^k}, 1 <= k <= 3, over the lexicographically smallest monic
  /// irreducible of degree k (coefficients compared low degree first).
  static Field extension(std::uint64_t p, int k);

  FieldKind kind() const;
  bool is_finite() const { return kind() != FieldKind::rational; }
  /// 0 for Q.
  std::uint64_t characteristic() const;
  /// Extension degree over the prime field (1 for Q and F_p).
  int degree() const;
  /// Number of elements; 0 for Q.
  std::uint64_t order() const;
  /// Monic modulus coefficients, low degree first (size degree()+1).
  const std::vector<std::uint64_t>& modulus() const;
  std::string name() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  Scalar from_rational(const mpq_class& q) const;
  /// Element with the given polynomial-basis coefficients (finite only).
  Scalar from_digits(std::span<const std::uint64_t> digits) const;
  std::vector<std::uint64_t> digits(const Scalar& a) const;
  /// The element of code `index` (finite only, index < order()).
  Scalar element(std::uint64_t index) const;

  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;
  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  /// Throws std::domain_error on zero.
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const;
  Scalar pow(const Scalar& a, std::uint64_t e) const;
  /// x -> x^p (identity on Q).
  Scalar frobenius(const Scalar& a) const;
  /// Reject scalars that do not belong to this field.
  bool contains(const Scalar& a) const;

  std::string to_string(const Scalar& a) const;

  friend bool operator==(const Field& a, const Field& b);

  const detail::FieldData& data() const { return *d_; }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::FieldData> d_;
};

/// Same as Field::extension; checks p prime and 1 <= k <= 3.
Field extension_field(std::uint64_t p, int k);

bool is_prime(std::uint64_t n);

/// Dense row-major matrix over one field.
class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::span<const Scalar> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
  std::span<Scalar> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }

  void append_row(std::span<const Scalar> r);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> a_;
};

using Vector = std::vector<Scalar>;

std::size_t rank(const Matrix& m);

/// Reduced row echelon form with zero rows dropped. `pivots` receives the
/// pivot column of each returned row.
Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots = nullptr);

/// Right kernel, returned as the rows of the reduced echelon form of the
/// kernel, so equal kernels give identical output.
std::vector<Vector> kernel_basis(const Matrix& m);

Vector multiply(const Matrix& m, std::span<const Scalar> v);

/// Determinant of a square matrix.
Scalar determinant(const Matrix& m);

namespace detail {

/// Discrete-log tables for a finite field: log_of_code[0] is unused,
/// code_of_log has order()-1 entries, generated by a fixed primitive element.
struct LogTables {
  std::uint64_t q = 0;
  std::vector<std::uint32_t> log_of_code;
  std::vector<std::uint32_t> code_of_log;
};

/// Built on first use and cached in the field; requires order() <= 2^24.
const LogTables& log_tables(const Field& f);

}  // namespace detail

}  // namespace whitesurf
