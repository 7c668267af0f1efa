#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cartanlie/errors.hpp"

namespace cartanlie {

/// Element of F_{p^k}. The code packs the residues of the polynomial
/// representative as base-p digits: code = sum c_i p^i, so codes below p are
/// exactly the prime subfield and codes can be compared across extensions.
struct Scalar {
  std::uint64_t code = 0;

  constexpr bool is_zero() const noexcept { return code == 0; }
  friend constexpr bool operator==(Scalar, Scalar) = default;
  friend constexpr auto operator<=>(Scalar, Scalar) = default;
};

inline constexpr std::uint64_t kDefaultFieldBound = std::uint64_t{1} << 20;
/// Largest order accepted at all; beyond kTableBound arithmetic runs without
/// log tables.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 62;
inline constexpr std::uint64_t kTableBound = std::uint64_t{1} << 20;

/// Finite field F_{p^k} = F_p[t]/(modulus), p > 3 prime.
///
/// The modulus is the smallest monic irreducible polynomial of degree k when
/// monic polynomials are ordered by their code (lower coefficients read as
/// base-p digits, constant term least significant). For k = 1 the modulus is
/// the placeholder t.
class Field {
 public:
  static Field make(std::uint32_t p, unsigned k = 1, std::uint64_t bound = kDefaultFieldBound);

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return k_; }
  std::uint64_t order() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return k_ == 1; }
  /// Coefficients low to high, monic, length k + 1.
  const std::vector<std::uint32_t>& modulus() const;

  Scalar zero() const noexcept { return {0}; }
  Scalar one() const noexcept { return {1}; }
  Scalar from_int(std::int64_t v) const noexcept;
  Scalar from_coeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(Scalar a) const;
  /// Enumeration of the field: index in [0, q).
  Scalar element(std::uint64_t index) const;
  /// The class of t (for k = 1 this is 0, the placeholder root).
  Scalar generator() const noexcept { return {k_ == 1 ? 0 : p_}; }
  bool contains(Scalar a) const noexcept { return a.code < q_; }

  Scalar add(Scalar a, Scalar b) const noexcept {
    if (k_ == 1) {
      std::uint64_t s = a.code + b.code;
      return {s >= p_ ? s - p_ : s};
    }
    return add_ext(a, b);
  }
  Scalar sub(Scalar a, Scalar b) const noexcept {
    if (k_ == 1) return {a.code >= b.code ? a.code - b.code : a.code + p_ - b.code};
    return add_ext(a, neg_ext(b));
  }
  Scalar neg(Scalar a) const noexcept {
    if (k_ == 1) return {a.code == 0 ? 0 : p_ - a.code};
    return neg_ext(a);
  }
  Scalar mul(Scalar a, Scalar b) const noexcept {
    if (k_ == 1) return {(a.code * b.code) % p_};
    return mul_ext(a, b);
  }
  /// a * b + c, the inner-loop primitive of the matrix kernels.
  Scalar mul_add(Scalar a, Scalar b, Scalar c) const noexcept {
    if (k_ == 1) return {(a.code * b.code + c.code) % p_};
    return add_ext(mul_ext(a, b), c);
  }
  Scalar inv(Scalar a) const;
  Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }
  Scalar pow(Scalar a, std::uint64_t e) const noexcept;
  Scalar frobenius(Scalar a) const noexcept { return pow(a, p_); }

  /// Image of an element of the prime field (or of this same field).
  Scalar embed(const Field& from, Scalar a) const;
  /// Integers for the prime field, `[c0+c1*t+...]` for extensions.
  std::string format(Scalar a) const;
  std::string describe() const;

  friend bool operator==(const Field& a, const Field& b) noexcept;

 private:
  struct Impl;
  Field() = default;

  Scalar add_ext(Scalar a, Scalar b) const noexcept;
  Scalar neg_ext(Scalar a) const noexcept;
  Scalar mul_ext(Scalar a, Scalar b) const noexcept;

  std::uint32_t p_ = 0;
  unsigned k_ = 0;
  std::uint64_t q_ = 0;
  std::shared_ptr<const Impl> impl_;
};

enum class FieldOp { Add, Sub, Mul, Div };

/// Checked arithmetic on two field elements; both must belong to `field`.
Scalar field_arithmetic(const Field& field, Scalar a, Scalar b, FieldOp op);

bool is_prime(std::uint64_t n) noexcept;

/// Dense univariate polynomial, coefficients low to high, no trailing zeros.
class Poly {
 public:
  explicit Poly(Field field) : field_(std::move(field)) {}
  Poly(Field field, std::vector<Scalar> coeffs);

  static Poly monomial(const Field& field, std::size_t degree, Scalar c);
  /// Product of (t - r) over the given roots.
  static Poly from_roots(const Field& field, std::span<const Scalar> roots);

  const Field& field() const noexcept { return field_; }
  const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  Scalar coeff(std::size_t i) const noexcept {
    return i < coeffs_.size() ? coeffs_[i] : Scalar{};
  }
  Scalar eval(Scalar x) const;
  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void trim();

  Field field_;
  std::vector<Scalar> coeffs_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
/// Scalar extension from the prime field into `to`.
Poly lift(const Poly& f, const Field& to);
/// Divide by (t - r); returns the quotient, remainder written to `rem`.
Poly divide_linear(const Poly& f, Scalar r, Scalar& rem);

/// Nonzero coefficients only in degrees 1, p, p^2, ...
bool has_p_polynomial_support(const Poly& f) noexcept;

struct RootMultiplicity {
  Scalar root;
  unsigned multiplicity;
};

struct RootSet {
  std::vector<RootMultiplicity> roots;  ///< sorted by code
  bool splits = false;                  ///< multiplicities sum to deg f
};

/// All roots of f in `search_field` with multiplicities. Roots of
/// p-polynomials over a proper extension are the kernel of the F_p-linear map
/// x -> f(x); otherwise fields up to `exhaustive_limit` elements are scanned.
/// The coefficients of f must lie in the prime field or in `search_field`
/// itself.
RootSet poly_roots(const Poly& f, const Field& search_field,
                   std::uint64_t exhaustive_limit = kTableBound);

/// Smallest k <= max_degree such that f (over the prime field) splits in
/// F_{p^k}; nullopt if none does.
std::optional<unsigned> splitting_degree(const Poly& f, unsigned max_degree);

}  // namespace cartanlie
