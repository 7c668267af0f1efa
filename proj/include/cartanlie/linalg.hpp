#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cartanlie/field.hpp"

namespace cartanlie {

using Vector = std::vector<Scalar>;

inline constexpr std::size_t kDefaultDimCap = 1024;

/// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(const Field& field, std::size_t n);
  /// Rows given as vectors of length `cols`.
  static Matrix from_rows(const Field& field, std::size_t cols, std::span<const Vector> rows);
  static Matrix from_columns(const Field& field, std::size_t rows, std::span<const Vector> cols);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vector row_vector(std::size_t r) const { return {data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_}; }
  Vector column(std::size_t c) const;
  void set_column(std::size_t c, const Vector& v);

  bool is_zero() const noexcept;
  Matrix transpose() const;
  Vector apply(const Vector& v) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, Scalar c);
Matrix power(const Matrix& a, std::uint64_t e);
/// Entrywise image of a prime-field matrix in an extension.
Matrix lift(const Matrix& a, const Field& to);

struct RrefResult {
  Matrix reduced;                   ///< rank rows; zero rows dropped
  std::vector<std::size_t> pivots;  ///< strictly increasing
  std::size_t rank = 0;
};

RrefResult rref(const Matrix& m);

/// Subspace of F^n stored as its canonical RREF basis, one vector per row.
class Subspace {
 public:
  Subspace(Field field, std::size_t ambient_dim)
      : basis_(std::move(field), 0, ambient_dim) {}

  static Subspace span(const Field& field, std::size_t ambient_dim, std::span<const Vector> vectors);
  static Subspace row_space(const Matrix& m);
  static Subspace full(const Field& field, std::size_t n);
  static Subspace coordinate(const Field& field, std::size_t n, std::span<const std::size_t> coords);

  const Field& field() const noexcept { return basis_.field(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  bool is_zero() const noexcept { return dim() == 0; }
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  Vector vector(std::size_t i) const { return basis_.row_vector(i); }
  std::vector<Vector> vectors() const;

  /// v minus its projection along the pivots; zero iff v lies in the span.
  Vector residual(const Vector& v) const;
  bool contains(const Vector& v) const;
  /// Coefficients of v in this basis (v must be a member).
  Vector coordinates(const Vector& v) const;
  /// Linear combination sum c_i b_i.
  Vector combine(const Vector& coeffs) const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  explicit Subspace(RrefResult r) : basis_(std::move(r.reduced)), pivots_(std::move(r.pivots)) {}

  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace kernel(const Matrix& m);
/// Column space.
Subspace image(const Matrix& m);

Subspace subspace_sum(const Subspace& a, const Subspace& b);
/// Via the kernel of the stacked relation system [A^T | -B^T].
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
bool subspace_contains(const Subspace& a, const Vector& v);
bool subspace_contains(const Subspace& a, const Subspace& b);
bool subspace_equals(const Subspace& a, const Subspace& b);
Subspace lift(const Subspace& s, const Field& to);

/// Particular solution of m x = b with free variables set to zero.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

/// det(t I - m) by Berkowitz's division-free recurrence.
Poly char_poly(const Matrix& m);
/// f(m) by Horner's rule.
Matrix evaluate(const Poly& f, const Matrix& m);
/// Support in degrees p^j and additive on sampled arguments.
bool is_p_polynomial(const Poly& f, unsigned samples = 16, std::uint64_t seed = 1);

// Small dense-vector helpers.
Vector zero_vector(std::size_t n);
bool is_zero(const Vector& v) noexcept;
Vector add(const Field& F, const Vector& a, const Vector& b);
Vector sub(const Field& F, const Vector& a, const Vector& b);
Vector scale(const Field& F, const Vector& a, Scalar c);
/// a += c * b
void axpy(const Field& F, Vector& a, Scalar c, const Vector& b);

/// Incremental echelon basis for growing a span one vector at a time.
/// Rows are kept in insertion order with reduced pivots, which makes
/// reduction of a new vector a single pass.
class EchelonBuilder {
 public:
  EchelonBuilder(Field field, std::size_t ambient_dim) : field_(std::move(field)), n_(ambient_dim) {}

  /// Reduces v in place; returns true (and keeps it) if it was independent.
  bool insert(Vector v);
  Vector reduce(Vector v) const;
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<Vector>& rows() const noexcept { return rows_; }
  Subspace finish() const;

 private:
  Field field_;
  std::size_t n_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace cartanlie
