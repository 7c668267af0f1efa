#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cartanlie/dpalgebra.hpp"
#include "cartanlie/lie.hpp"

namespace cartanlie {

/// Special derivation sum_k f_k d_k of O(m, n); k is 0-based.
class Deriv {
 public:
  explicit Deriv(const Shape& shape);
  Deriv(const Shape& shape, std::vector<DPoly> coeffs);

  static Deriv partial(const Shape& shape, unsigned k);
  /// c x^{(alpha)} d_k
  static Deriv basis(const Shape& shape, std::uint32_t alpha, unsigned k, Scalar c);

  const Shape& shape() const noexcept { return coeffs_.front().shape(); }
  const Field& field() const noexcept { return shape().field(); }
  unsigned m() const noexcept { return static_cast<unsigned>(coeffs_.size()); }
  const DPoly& coeff(unsigned k) const { return coeffs_.at(k); }
  const std::vector<DPoly>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept;
  /// `x[4]*d1 + 2*d2`, terms ordered by (k, alpha).
  std::string to_string() const;

  friend bool operator==(const Deriv& a, const Deriv& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<DPoly> coeffs_;
};

Deriv operator+(const Deriv& a, const Deriv& b);
Deriv operator-(const Deriv& a, const Deriv& b);
Deriv operator-(const Deriv& a);
Deriv scale(const Deriv& a, Scalar c);

DPoly d_apply(const Deriv& d, const DPoly& f);
/// Coefficient k of [D, E] is D(g_k) - E(f_k).
Deriv d_bracket(const Deriv& d, const Deriv& e);
Deriv d_module_mul(const DPoly& f, const Deriv& d);
DPoly divergence(const Deriv& d);
/// Matrix of D acting on O(m, n) in the monomial basis.
Matrix derivation_matrix(const Deriv& d);
/// Parts by degree |alpha| - 1.
std::map<int, Deriv> grade_split(const Deriv& d);
Deriv homogeneous_part(const Deriv& d, int degree);

/// `x[4]*d1 + d2`, `-1*d2`, `(1 + x[1,0])*d2`. Throws ParseError.
Deriv parse_deriv(const Shape& shape, std::string_view text);

/// W(m, n) with basis x^{(alpha)} d_k at flat position alpha * m + k.
class WAlgebra {
 public:
  /// Throws BoundExceeded when m p^{|n|} exceeds the cap.
  static WAlgebra make(const Shape& shape, std::size_t dim_cap = kDefaultDimCap);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t dim() const noexcept { return lie_->dim(); }
  const LieAlgebra& lie() const noexcept { return *lie_; }
  const std::shared_ptr<const LieAlgebra>& lie_ptr() const noexcept { return lie_; }
  std::uint32_t flat(std::uint32_t alpha, unsigned k) const noexcept { return alpha * shape_.m() + k; }

  Vector to_vector(const Deriv& d) const;
  Deriv from_vector(const Vector& v) const;

 private:
  WAlgebra(Shape shape, std::shared_ptr<const LieAlgebra> lie) : shape_(std::move(shape)), lie_(std::move(lie)) {}

  Shape shape_;
  std::shared_ptr<const LieAlgebra> lie_;
};

/// [x^a d_k, x^b d_l] = x^a d_k(x^b) d_l - x^b d_l(x^a) d_k on flat indices.
SparseVector w_structure_constants(const Shape& shape, std::uint32_t i, std::uint32_t j);

/// The algebra isomorphism O(m, n) -> O(|n|, 1) fixed by
/// x_i^{(p^j)} -> xi_{i,j}, where xi_{i,j} is target variable
/// n_1 + ... + n_{i-1} + j.
class SigmaIso {
 public:
  explicit SigmaIso(const Shape& source);

  const Shape& source() const noexcept { return source_; }
  const Shape& target() const noexcept { return target_; }
  unsigned target_variable(unsigned i, unsigned j) const;

  DPoly apply(const DPoly& f) const;
  DPoly apply_inverse(const DPoly& f) const;
  /// sigma o D o sigma^{-1}: coefficient of d_{i,j} is sigma(D(x_i^{(p^j)})).
  Deriv iota(const Deriv& d) const;

 private:
  Shape source_;
  Shape target_;
  std::vector<unsigned> offset_;
  std::vector<std::uint32_t> image_index_;  // source monomial -> target monomial
  std::vector<Scalar> image_unit_;
  std::vector<std::uint32_t> preimage_index_;
  std::vector<Scalar> preimage_unit_;
};

}  // namespace cartanlie
