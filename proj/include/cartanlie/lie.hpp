#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cartanlie/linalg.hpp"
#include "cartanlie/random.hpp"

namespace cartanlie {

struct SparseEntry {
  std::uint32_t index;
  Scalar coeff;
};
using SparseVector = std::vector<SparseEntry>;

/// Finite-dimensional graded Lie algebra given by structure constants on a
/// homogeneous basis. The table stores every ordered pair.
class LieAlgebra {
 public:
  using BasisBracket = std::function<SparseVector(std::uint32_t, std::uint32_t)>;

  LieAlgebra(Field field, std::string name, std::vector<int> degrees, const BasisBracket& bracket);

  const Field& field() const noexcept { return field_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return degrees_.size(); }
  int degree(std::uint32_t i) const noexcept { return degrees_[i]; }
  int min_degree() const noexcept { return min_degree_; }
  int max_degree() const noexcept { return max_degree_; }
  /// Basis indices of the given degree, ascending; empty if none.
  const std::vector<std::uint32_t>& block(int d) const;
  std::uint32_t local_index(std::uint32_t i) const noexcept { return local_[i]; }

  std::span<const SparseEntry> basis_bracket(std::uint32_t i, std::uint32_t j) const noexcept {
    const std::size_t k = static_cast<std::size_t>(i) * dim() + j;
    return {entries_.data() + offsets_[k], entries_.data() + offsets_[k + 1]};
  }
  Vector bracket(const Vector& u, const Vector& v) const;
  /// Matrix of ad x on the whole algebra.
  Matrix ad(const Vector& x) const;
  /// Degree of a nonzero homogeneous vector.
  std::optional<int> homogeneous_degree(const Vector& v) const;

  /// Projection of an ambient vector onto the degree-d block.
  Vector to_local(int d, const Vector& v) const;
  Vector to_ambient(int d, const Vector& local) const;

 private:
  Field field_;
  std::string name_;
  std::vector<int> degrees_;
  int min_degree_ = 0, max_degree_ = 0;
  std::map<int, std::vector<std::uint32_t>> blocks_;
  std::vector<std::uint32_t> local_;
  std::vector<std::size_t> offsets_;
  std::vector<SparseEntry> entries_;
};

enum class Label { W, S, S1, CS, H, H2, K, K1, Generated };
const char* to_string(Label label) noexcept;

/// Subalgebra of a LieAlgebra. Graded handles keep one subspace per degree in
/// block-local coordinates; closures from generators are ungraded.
class SubalgebraHandle {
 public:
  /// Checks bracket closure degree pair by degree pair unless told not to.
  static SubalgebraHandle graded(std::shared_ptr<const LieAlgebra> ambient, Label label,
                                 std::map<int, Subspace> components, bool verify = true);
  static SubalgebraHandle ungraded(std::shared_ptr<const LieAlgebra> ambient, Label label, Subspace basis);
  static SubalgebraHandle whole(std::shared_ptr<const LieAlgebra> ambient, Label label);

  const LieAlgebra& ambient() const noexcept { return *ambient_; }
  const std::shared_ptr<const LieAlgebra>& ambient_ptr() const noexcept { return ambient_; }
  Label label() const noexcept { return label_; }
  bool is_graded() const noexcept { return graded_; }
  std::size_t dim() const noexcept { return basis_.dim(); }
  /// Ambient coordinates.
  const Subspace& basis() const noexcept { return basis_; }
  /// Nonzero components only, block-local coordinates.
  const std::map<int, Subspace>& components() const noexcept { return components_; }
  /// Ambient coordinates; zero subspace when absent.
  Subspace component(int d) const;
  std::size_t component_dim(int d) const;
  int min_degree() const;
  /// Degree of the top nonzero component.
  int top_degree() const;
  /// Sum of components of degree >= k, ambient coordinates.
  Subspace filtration(int k) const;
  bool contains(const Vector& v) const { return basis_.contains(v); }
  Vector random_element(Rng& rng) const;

 private:
  SubalgebraHandle(std::shared_ptr<const LieAlgebra> ambient, Label label, Subspace basis)
      : ambient_(std::move(ambient)), label_(label), basis_(std::move(basis)) {}

  std::shared_ptr<const LieAlgebra> ambient_;
  Label label_;
  Subspace basis_;
  bool graded_ = false;
  std::map<int, Subspace> components_;
};

/// [A, A] computed degree pair by degree pair; A must be graded.
SubalgebraHandle derived_subalgebra(const SubalgebraHandle& a, Label label);
/// [L, H] contained in H, both graded in the same ambient.
bool is_ideal(const SubalgebraHandle& l, const SubalgebraHandle& h);

struct AdMatrix {
  Matrix matrix;
  /// True when [x, V] lies in V and the matrix is in V's basis; otherwise the
  /// columns are ambient coordinates.
  bool square_in_basis;
};
AdMatrix ad_matrix(const LieAlgebra& alg, const Vector& x, const Subspace& v);
/// {v in within : [x, v] = 0}
Subspace centraliser(const LieAlgebra& alg, const Vector& x, const Subspace& within);

}  // namespace cartanlie
