#include <doctest.h>

#include "cartanlie/field.hpp"

using namespace cartanlie;

namespace {

Poly poly(const Field& F, std::initializer_list<std::int64_t> low_to_high) {
  std::vector<Scalar> c;
  for (auto v : low_to_high) c.push_back(F.from_int(v));
  return Poly(F, c);
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  const Field F = Field::make(5);
  CHECK(F.order() == 5);
  CHECK(F.add(F.from_int(3), F.from_int(4)) == F.from_int(2));
  CHECK(field_arithmetic(F, F.from_int(2), F.from_int(3), FieldOp::Div) == F.from_int(4));
  CHECK(F.from_int(-1) == F.from_int(4));
  CHECK_THROWS_AS(F.inv(F.zero()), Error);
  CHECK_THROWS_AS(field_arithmetic(F, F.from_int(1), Scalar{7}, FieldOp::Add), Error);
}

TEST_CASE("field construction errors") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code_of([] { Field::make(4); }) == ErrorCode::NotPrime);
  CHECK(code_of([] { Field::make(3); }) == ErrorCode::CharTooSmall);
  CHECK(code_of([] { Field::make(5, 9); }) == ErrorCode::BoundExceeded);
}

TEST_CASE("F_25 uses t^2 + 2") {
  // Monic quadratics ordered by code c0 + 5 c1: t^2 + 1 has discriminant
  // -4 = 1, a square; t^2 + 2 has discriminant -8 = 2, a non-square.
  const Field F = Field::make(5, 2);
  CHECK(F.modulus() == std::vector<std::uint32_t>{2, 0, 1});
  const Scalar t = F.generator();
  CHECK(F.mul(t, t) == F.from_int(3));
  CHECK(F.format(F.add(t, F.from_int(3))) == "[t+3]");
}

TEST_CASE("multiplicative group order and frobenius") {
  for (unsigned k : {1u, 2u, 3u, 4u}) {
    const Field F = Field::make(5, k);
    for (std::uint64_t i = 1; i < F.order(); ++i) {
      const Scalar a = F.element(i);
      REQUIRE(F.pow(a, F.order() - 1) == F.one());
      REQUIRE(F.mul(a, F.inv(a)) == F.one());
    }
    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(F.order(), 60); ++i) {
      for (std::uint64_t j = 0; j < std::min<std::uint64_t>(F.order(), 60); ++j) {
        const Scalar a = F.element(i), b = F.element(j);
        REQUIRE(F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b)));
        REQUIRE(F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b)));
      }
    }
  }
}

TEST_CASE("table-free arithmetic agrees with tables") {
  const Field small = Field::make(7, 6);                    // 117649, tabled
  CHECK(small.order() == 117649);
  const Field big = Field::make(5, 10, kMaxFieldOrder);     // no tables
  const Scalar t = big.generator();
  Scalar acc = big.one();
  for (int i = 0; i < 10; ++i) acc = big.mul(acc, t);
  // t^10 equals -(lower part of the modulus)
  std::vector<std::uint32_t> low(big.modulus().begin(), big.modulus().end() - 1);
  CHECK(big.add(acc, big.from_coeffs(low)) == big.zero());
  CHECK(big.pow(t, big.order() - 1) == big.one());
  CHECK(big.mul(t, big.inv(t)) == big.one());
}

TEST_CASE("roots") {
  const Field F = Field::make(5);
  const auto r = poly_roots(poly(F, {0, -1, 0, 0, 0, 1}), F);
  REQUIRE(r.roots.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(r.roots[i].root == F.from_int(static_cast<std::int64_t>(i)));
    CHECK(r.roots[i].multiplicity == 1);
  }
  CHECK(r.splits);

  const auto sq = poly_roots(poly(F, {0, 0, 1}), F);
  REQUIRE(sq.roots.size() == 1);
  CHECK(sq.roots[0].multiplicity == 2);
  CHECK(sq.splits);

  const auto none = poly_roots(poly(F, {-2, 0, 1}), F);
  CHECK(none.roots.empty());
  CHECK_FALSE(none.splits);
  CHECK_THROWS_AS(poly_roots(Poly(F), F), Error);
}

TEST_CASE("splitting degrees") {
  const Field F = Field::make(5);
  CHECK(splitting_degree(poly(F, {-2, 0, 1}), 4) == 2u);
  CHECK(splitting_degree(poly(F, {0, -1, 0, 0, 0, 1}), 4) == 1u);
  // t^5 - t - 1 is Artin-Schreier, irreducible of degree 5.
  CHECK(splitting_degree(poly(F, {-1, -1, 0, 0, 0, 1}), 4) == std::nullopt);
  CHECK(splitting_degree(poly(F, {-1, -1, 0, 0, 0, 1}), 5) == 5u);
}

TEST_CASE("roots of additive polynomials in a large field") {
  const Field F = Field::make(5);
  const Field big = Field::make(5, 10, kMaxFieldOrder);
  std::vector<Scalar> c(26);
  c[1] = F.from_int(-1);
  c[25] = F.one();
  const auto r = poly_roots(Poly(F, c), big);
  CHECK(r.roots.size() == 25);  // F_25 sits inside F_{5^10}
  CHECK(r.splits);
  for (const auto& rm : r.roots) CHECK(big.pow(rm.root, 25) == rm.root);
}
