#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cartanlie/field.hpp"
#include "cartanlie/linalg.hpp"

namespace cartanlie {

using MultiIndex = std::vector<unsigned>;

/// Largest p^{|n|} a Shape accepts.
inline constexpr std::uint64_t kMaxShapeDim = std::uint64_t{1} << 22;

/// (m, n) with tau_i = p^{n_i} - 1 over a fixed field.
///
/// Monomials x^{(alpha)} are numbered by a mixed-radix flat index with
/// alpha_1 most significant, so increasing index is lexicographic order on
/// exponents. Variables are 0-based in this API.
class Shape {
 public:
  static Shape make(const Field& field, std::vector<unsigned> n);
  /// O(m, 1) = B_m.
  static Shape ones(const Field& field, unsigned m);

  const Field& field() const noexcept;
  std::uint32_t p() const noexcept { return field().characteristic(); }
  unsigned m() const noexcept;
  const std::vector<unsigned>& n() const noexcept;
  unsigned total_n() const noexcept;
  unsigned tau(unsigned i) const;
  /// p^{|n|}
  std::uint32_t dim() const noexcept;
  bool is_ones() const noexcept;

  std::uint32_t index(std::span<const unsigned> alpha) const;
  MultiIndex alpha(std::uint32_t index) const;
  unsigned component(std::uint32_t index, unsigned var) const noexcept;
  /// |alpha|
  unsigned degree(std::uint32_t index) const noexcept;
  unsigned max_degree() const noexcept;
  /// Index of alpha + eps_var, if still within tau.
  std::optional<std::uint32_t> raise(std::uint32_t index, unsigned var) const noexcept;
  /// Index of alpha - eps_var, if alpha_var > 0.
  std::optional<std::uint32_t> lower(std::uint32_t index, unsigned var) const noexcept;
  /// x^{(a)} x^{(b)} = coeff x^{(a+b)}; false when the product vanishes.
  bool multiply_index(std::uint32_t a, std::uint32_t b, std::uint32_t& out, Scalar& coeff) const noexcept;

  std::string describe() const;

  friend bool operator==(const Shape& a, const Shape& b) noexcept;

 private:
  struct Impl;
  Shape() = default;
  std::shared_ptr<const Impl> impl_;
};

/// prod_i C(a_i, b_i) mod p by Lucas' digit rule; 0 if some b_i > a_i.
Scalar binom_mod_p(std::span<const unsigned> a, std::span<const unsigned> b, std::uint32_t p);
std::uint32_t binom_mod_p(std::uint64_t a, std::uint64_t b, std::uint32_t p);

struct Term {
  std::uint32_t index;
  Scalar coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Element of O(m, n): sorted sparse terms, no zero coefficients.
class DPoly {
 public:
  explicit DPoly(Shape shape) : shape_(std::move(shape)) {}

  /// Merges like terms and drops zeros. Throws IndexOutOfRange.
  static DPoly make(const Shape& shape, std::span<const std::pair<MultiIndex, Scalar>> terms);
  static DPoly monomial(const Shape& shape, std::span<const unsigned> alpha, Scalar c);
  static DPoly basis(const Shape& shape, std::uint32_t index, Scalar c);
  static DPoly constant(const Shape& shape, Scalar c);
  /// x_var = x_var^{(1)}
  static DPoly variable(const Shape& shape, unsigned var);
  static DPoly from_dense(const Shape& shape, const Vector& v);
  /// Takes unsorted terms that may repeat indices.
  static DPoly from_terms(const Shape& shape, std::vector<Term> terms);

  const Shape& shape() const noexcept { return shape_; }
  const Field& field() const noexcept { return shape_.field(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Scalar coeff(std::uint32_t index) const noexcept;
  Scalar constant_term() const noexcept { return coeff(0); }
  Vector dense() const;
  /// Lowest |alpha| among the terms; -1 for zero.
  int min_degree() const noexcept;
  std::string to_string() const;

  friend bool operator==(const DPoly& a, const DPoly& b) {
    return a.shape_ == b.shape_ && a.terms_ == b.terms_;
  }

 private:
  Shape shape_;
  std::vector<Term> terms_;
};

DPoly operator+(const DPoly& a, const DPoly& b);
DPoly operator-(const DPoly& a, const DPoly& b);
DPoly operator-(const DPoly& a);
DPoly scale(const DPoly& a, Scalar c);
DPoly dp_multiply(const DPoly& f, const DPoly& g);
inline DPoly operator*(const DPoly& f, const DPoly& g) { return dp_multiply(f, g); }
/// d/dx_var, 0-based variable. Throws BadIndex.
DPoly dp_partial(const DPoly& f, unsigned var);
/// Repeated multiplication; f^0 = 1.
DPoly dp_power(const DPoly& f, unsigned e);
/// Parts by |alpha|.
std::map<int, DPoly> grade_split(const DPoly& f);
/// Part of |alpha| equal to d.
DPoly homogeneous_part(const DPoly& f, int d);
/// Throws NotInvertible when the constant term vanishes.
DPoly dp_invert(const DPoly& f);
/// Matrix of g -> f g on the monomial basis.
Matrix multiplication_matrix(const DPoly& f);

/// `3*x[1,0] + 2`, `[t+2]*x[0,1]`, `-x[2,0]`; variables written 1-based
/// inside each bracket by position. Throws ParseError.
DPoly parse_dpoly(const Shape& shape, std::string_view text);

}  // namespace cartanlie
