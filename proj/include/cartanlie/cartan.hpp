#pragma once

#include <map>
#include <memory>

#include "cartanlie/derivations.hpp"
#include "cartanlie/lie.hpp"

namespace cartanlie {

/// j' and sigma(j) on 0-based indices 0..2r-1.
struct HamiltonianIndexing {
  unsigned r;

  unsigned prime(unsigned j) const noexcept { return j < r ? j + r : j - r; }
  int sign(unsigned j) const noexcept { return j < r ? 1 : -1; }
};

// ---------------------------------------------------------------------------
// Type S

struct SpecialFamily {
  WAlgebra w;
  SubalgebraHandle s;
  SubalgebraHandle s1;  ///< derived algebra of s
  SubalgebraHandle cs;  ///< derivations with constant divergence
};

/// Throws BadShape for m < 2 and LemmaViolation if codim(S1 in S) != m or,
/// for n = 1, codim(S1 in CS) != m + 1.
SpecialFamily build_S(const Shape& shape, std::size_t dim_cap = kDefaultDimCap);

// ---------------------------------------------------------------------------
// Type H

/// {f, g} = sum_j sigma(j) d_j(f) d_{j'}(g); m must be even.
DPoly poisson_bracket(const DPoly& f, const DPoly& g);
/// D_H(f) = sum_j sigma(j) d_j(f) d_{j'}.
Deriv d_H_map(const DPoly& f);

struct HamiltonianFamily {
  WAlgebra w;
  SubalgebraHandle h;   ///< image of D_H
  SubalgebraHandle h2;  ///< second derived algebra
};

/// Throws BadShape unless m is even and positive; LemmaViolation if
/// dim H != p^{|n|} - 1 or dim H2 != p^{|n|} - 2.
HamiltonianFamily build_H(const Shape& shape, std::size_t dim_cap = kDefaultDimCap);

// ---------------------------------------------------------------------------
// Type K

/// ||alpha|| - 2 with the last variable weighted twice.
int k_degree(const Shape& shape, std::uint32_t index);
std::map<int, DPoly> k_grade_split(const DPoly& f);
/// m odd and at least 3.
Deriv d_K_map(const DPoly& f);
/// <f, g> = D_K(f)(g) - 2 g d_m(f)
DPoly contact_bracket(const DPoly& f, const DPoly& g);
/// Matrix of g -> <f, g> on the monomial basis.
Matrix contact_ad_matrix(const DPoly& f);

/// O(2r+1, n) under the contact bracket, graded by K-degree.
class ContactAlgebra {
 public:
  static ContactAlgebra make(const Shape& shape, std::size_t dim_cap = kDefaultDimCap);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t dim() const noexcept { return lie_->dim(); }
  const LieAlgebra& lie() const noexcept { return *lie_; }
  const std::shared_ptr<const LieAlgebra>& lie_ptr() const noexcept { return lie_; }
  Vector to_vector(const DPoly& f) const;
  DPoly from_vector(const Vector& v) const;

 private:
  ContactAlgebra(Shape shape, std::shared_ptr<const LieAlgebra> lie) : shape_(std::move(shape)), lie_(std::move(lie)) {}

  Shape shape_;
  std::shared_ptr<const LieAlgebra> lie_;
};

struct ContactFamily {
  ContactAlgebra algebra;
  SubalgebraHandle k;
  SubalgebraHandle k1;
  /// 1 when m + 3 = 0 mod p, else 0
  std::size_t expected_codim;
};

/// Throws BadShape unless m is odd and at least 3; LemmaViolation if D_K is
/// not injective or codim(K1 in K) differs from the expected value.
ContactFamily build_K(const Shape& shape, std::size_t dim_cap = kDefaultDimCap);

}  // namespace cartanlie
