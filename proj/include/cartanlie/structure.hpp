#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cartanlie/cartan.hpp"
#include "cartanlie/derivations.hpp"
#include "cartanlie/lie.hpp"

namespace cartanlie {

inline constexpr unsigned kDefaultMaxExt = 24;
/// Largest extension degree probed when reporting how far a split failure is.
inline constexpr unsigned kSplitHardCap = 60;

/// Kernel of D on O(m, n); always contains 1.
Subspace constants_ring(const Deriv& d);

/// Smallest k with m^k = 0, if at most `limit`.
std::optional<std::uint64_t> nilpotency_index(const Matrix& m, std::uint64_t limit);

// ---------------------------------------------------------------------------
// Regular elements and the normal form of a derivation of B_m

enum class Regularity { RegularNilpotent, RegularSemisimple, Neither };
const char* to_string(Regularity r) noexcept;

struct RegularityResult {
  Regularity kind = Regularity::Neither;
  /// v with D^{p^m - 1} v != 0 when regular nilpotent.
  std::optional<DPoly> witness;
  /// Distinct eigenvalues in `field` when regular semisimple.
  std::vector<Scalar> eigenvalues;
  std::optional<Field> field;
};

/// D on B_m. Throws BadShape unless n = 1, SplittingFieldTooSmall when the
/// characteristic polynomial is separable but does not split in degree
/// <= max_ext.
RegularityResult regularity_classify(const Deriv& d, unsigned max_ext = kDefaultMaxExt);

struct DecompositionResult {
  unsigned r = 0;
  Poly chi;  ///< over F_p
  Field field;  ///< splitting field F_{p^k}
  /// Eigenvalues in `field`, ascending by code.
  std::vector<Scalar> lambda;
  /// Vectors below are monomial coordinates over `field`.
  Subspace b_prime;
  Subspace b_second;
  std::vector<Vector> eigenvectors;  ///< g_lambda, same order as lambda
  std::vector<Vector> chain;         ///< z_1 = 1, ..., z_{p^r}; N z_k = z_{k-1}
  bool lambda_is_group = false;
  bool multiplicities_ok = false;
  bool eigenspaces_one_dim = false;
  bool product_basis = false;
  bool reconstruction = false;

  bool ok() const noexcept {
    return lambda_is_group && multiplicities_ok && eigenspaces_one_dim && product_basis && reconstruction;
  }
};

/// D on B_m with constants F. Throws NontrivialConstants, SplitFailure and
/// LemmaViolation (chi not a p-polynomial, or an invariant fails).
DecompositionResult decompose_derivation(const Deriv& d, unsigned max_ext = kDefaultMaxExt);

// ---------------------------------------------------------------------------
// Generation

/// Least subalgebra of `a` containing the generators, grown as the span of
/// iterated ad(g) images. Throws InvalidArgument if a generator lies outside.
SubalgebraHandle subalgebra_closure(const std::vector<Vector>& generators, const SubalgebraHandle& a);

struct ProbeResult {
  std::size_t samples = 0;
  std::size_t target_dim = 0;
  std::size_t max_dim = 0;
  std::size_t min_dim = 0;
  std::size_t generating = 0;  ///< samples whose closure is all of H
  std::optional<Vector> first_generating;
};

/// closure({x, y}) for `samples` uniform y in H, y drawn from derive_seed(seed, i).
ProbeResult nongeneration_probe(const Vector& x, const SubalgebraHandle& h, std::size_t samples,
                                std::uint64_t seed);

// ---------------------------------------------------------------------------
// Witnesses

struct WitnessS {
  DPoly f;
  Deriv delta;
  bool nonzero, in_filtration, commutes, divergence_free;
  bool ok() const noexcept { return nonzero && in_filtration && commutes && divergence_free; }
};
/// D in S1 with a nonzero degree -1 part. Throws NotInOmega, NoConstantFound.
WitnessS witness_S(const Deriv& d, const SpecialFamily& fam);

struct WitnessH {
  DPoly f;  ///< constant term removed
  Deriv d;
  Deriv delta;
  bool nonzero, in_filtration, commutes;
  bool ok() const noexcept { return nonzero && in_filtration && commutes; }
};
/// Throws NotInOmega when f has no linear part, ZeroWitness if D_H(f^3) = 0.
WitnessH witness_H(const DPoly& f, const HamiltonianFamily& fam);

struct WitnessK {
  Subspace centraliser;    ///< of f in K
  Subspace in_filtration;  ///< intersected with K_{>=1}
  std::size_t bound;       ///< min(2r + 1, p)
};
/// f in K1 with nonzero constant term. Throws NotInOmega, LemmaViolation.
WitnessK witness_K(const DPoly& f, const ContactFamily& fam);

/// Uniform elements of S1 with a nonzero degree -1 part.
Deriv sample_omega_S(const SpecialFamily& fam, Rng& rng);
/// f without constant term such that D_H(f) is a uniform element of H2 with a
/// nonzero degree -1 part.
DPoly sample_omega_H(const HamiltonianFamily& fam, Rng& rng);
/// Uniform elements of K1 with nonzero constant term.
DPoly sample_omega_K(const ContactFamily& fam, Rng& rng);

// ---------------------------------------------------------------------------
// Audit of the centraliser criterion

struct AuditResult {
  bool is_ideal = false;
  std::size_t centraliser_of_h = 0;  ///< dim L^H
  std::size_t samples = 0;
  std::size_t positive_centraliser = 0;  ///< samples with L^X cap L_{>=1} != 0
  std::size_t intersection_dim = 0;      ///< dim of the intersection of the H_X
  bool contains_top = false;             ///< that intersection contains H's top component
  bool ok() const noexcept {
    return is_ideal && centraliser_of_h == 0 && positive_centraliser == samples && contains_top;
  }
};

/// `omega` draws X in the type's open set, in L's ambient coordinates.
AuditResult criterion_audit(const SubalgebraHandle& l, const SubalgebraHandle& h, std::size_t samples,
                            std::uint64_t seed, const std::function<Vector(Rng&)>& omega);

// ---------------------------------------------------------------------------
// W_m: elements whose centraliser meets L_{>=0} trivially

struct RemarkProbe {
  Deriv x;
  bool candidate = false;  ///< the fixed pattern worked, no random search needed
  std::size_t attempts = 0;
  std::size_t kernel_dim = 0;  ///< of ad x on L_{>=0}
  std::optional<std::uint64_t> nilpotency;  ///< of x on B_m
};

/// Throws BadShape unless n = 1, SearchExhausted after `attempts` random tries.
RemarkProbe remark_W_probe(const Shape& shape, std::uint64_t seed, std::size_t attempts = 200);

}  // namespace cartanlie
