#include <doctest.h>

#include "cartanlie/dpalgebra.hpp"
#include "cartanlie/random.hpp"

using namespace cartanlie;

namespace {

DPoly random_dpoly(const Shape& S, Rng& rng, unsigned max_terms) {
  std::vector<Term> ts;
  const unsigned count = 1 + static_cast<unsigned>(rng.below(max_terms));
  for (unsigned i = 0; i < count; ++i)
    ts.push_back({static_cast<std::uint32_t>(rng.below(S.dim())), rng.scalar(S.field())});
  return DPoly::from_terms(S, ts);
}

}  // namespace

TEST_CASE("binomials mod p") {
  const unsigned a1[] = {2}, b1[] = {1}, a2[] = {5}, a3[] = {4}, b3[] = {2};
  CHECK(binom_mod_p(a1, b1, 5) == Scalar{2});
  CHECK(binom_mod_p(a2, b1, 5) == Scalar{0});
  CHECK(binom_mod_p(a3, b3, 5) == Scalar{1});
  CHECK(binom_mod_p(3, 4, 5) == 0);
  // against exact binomials
  CHECK(binom_mod_p(27, 7, 5) == 888030 % 5);
  CHECK(binom_mod_p(26, 6, 7) == 230230 % 7);
  CHECK(binom_mod_p(30, 12, 11) == 86493225 % 11);
}

TEST_CASE("shapes") {
  const Field F = Field::make(5);
  const Shape S = Shape::make(F, {1, 2});
  CHECK(S.dim() == 125);
  CHECK(S.tau(0) == 4);
  CHECK(S.tau(1) == 24);
  CHECK(S.max_degree() == 28);
  const unsigned a[] = {3, 17};
  const auto idx = S.index(a);
  CHECK(S.alpha(idx) == MultiIndex{3, 17});
  CHECK(S.degree(idx) == 20);
  const unsigned bad[] = {5, 0};
  CHECK_THROWS_AS(S.index(bad), Error);
  CHECK_THROWS_AS(Shape::make(F, {}), Error);
  CHECK_THROWS_AS(Shape::make(F, {1, 0}), Error);
  // lexicographic numbering
  const unsigned lo[] = {0, 24}, hi[] = {1, 0};
  CHECK(S.index(lo) < S.index(hi));
}

TEST_CASE("dp_make") {
  const Field F = Field::make(5);
  const Shape S = Shape::ones(F, 2);
  CHECK(DPoly::make(S, {}).is_zero());
  const std::vector<std::pair<MultiIndex, Scalar>> cancel{{{1, 1}, F.from_int(2)}, {{1, 1}, F.from_int(3)}};
  CHECK(DPoly::make(S, cancel).is_zero());
  const std::vector<std::pair<MultiIndex, Scalar>> one{{{2, 0}, F.one()}};
  CHECK(DPoly::make(S, one).to_string() == "x[2,0]");
  const std::vector<std::pair<MultiIndex, Scalar>> out{{{5, 0}, F.one()}};
  CHECK_THROWS_AS(DPoly::make(S, out), Error);
}

TEST_CASE("divided power products") {
  const Field F = Field::make(5);
  const Shape B1 = Shape::ones(F, 1);
  auto x = [&](unsigned a) { const unsigned al[] = {a}; return DPoly::monomial(B1, al, F.one()); };
  CHECK(x(1) * x(1) == scale(x(2), F.from_int(2)));
  CHECK(x(2) * x(2) == x(4));
  CHECK((x(1) * x(4)).is_zero());
  CHECK(dp_power(x(1), 3) == x(3));
  CHECK(dp_power(x(3), 0) == x(0));
  const DPoly one_plus_x = x(0) + x(1);
  CHECK(dp_power(one_plus_x, 2) == x(0) + scale(x(1), F.from_int(2)) + scale(x(2), F.from_int(2)));

  // O(1,(2)): x^(1) x^(5) = C(6,1) x^(6) = x^(6)
  const Shape O12 = Shape::make(F, {2});
  const unsigned i1[] = {1}, i5[] = {5}, i6[] = {6};
  CHECK(DPoly::monomial(O12, i1, F.one()) * DPoly::monomial(O12, i5, F.one()) == DPoly::monomial(O12, i6, F.one()));
  // x^(5) x^(5) = C(10,5) x^(10) = 252 x^(10) = 2 x^(10)
  const unsigned i10[] = {10};
  CHECK(DPoly::monomial(O12, i5, F.one()) * DPoly::monomial(O12, i5, F.one()) ==
        DPoly::monomial(O12, i10, F.from_int(2)));
}

TEST_CASE("commutative and associative on all basis triples") {
  const Field F = Field::make(5);
  for (const auto& n : {std::vector<unsigned>{1, 1}, std::vector<unsigned>{2}}) {
    const Shape S = Shape::make(F, n);
    for (std::uint32_t a = 0; a < S.dim(); ++a) {
      const DPoly fa = DPoly::basis(S, a, F.one());
      for (std::uint32_t b = 0; b < S.dim(); ++b) {
        const DPoly fb = DPoly::basis(S, b, F.one());
        const DPoly ab = fa * fb;
        REQUIRE(ab == fb * fa);
        for (std::uint32_t c = 0; c < S.dim(); ++c) {
          const DPoly fc = DPoly::basis(S, c, F.one());
          REQUIRE(ab * fc == fa * (fb * fc));
        }
      }
    }
  }
  const Shape S3 = Shape::ones(F, 3);
  Rng rng(1);
  for (int i = 0; i < 300; ++i) {
    const DPoly f = random_dpoly(S3, rng, 5), g = random_dpoly(S3, rng, 5), h = random_dpoly(S3, rng, 5);
    REQUIRE((f * g) * h == f * (g * h));
  }
}

TEST_CASE("monomials factor into single-variable divided powers") {
  const Field F = Field::make(5);
  const Shape S = Shape::make(F, {1, 2});
  for (std::uint32_t idx = 0; idx < S.dim(); ++idx) {
    const MultiIndex a = S.alpha(idx);
    DPoly prod = DPoly::constant(S, F.one());
    for (unsigned i = 0; i < S.m(); ++i) {
      MultiIndex e(S.m(), 0);
      e[i] = a[i];
      prod = prod * DPoly::monomial(S, e, F.one());
    }
    REQUIRE(prod == DPoly::basis(S, idx, F.one()));
  }
}

TEST_CASE("partial derivatives") {
  const Field F = Field::make(5);
  const Shape S = Shape::ones(F, 2);
  const unsigned a30[] = {3, 0}, a20[] = {2, 0};
  const DPoly f = DPoly::monomial(S, a30, F.one());
  CHECK(dp_partial(f, 0) == DPoly::monomial(S, a20, F.one()));
  CHECK(dp_partial(f, 1).is_zero());
  CHECK(dp_partial(DPoly::constant(S, F.one()), 0).is_zero());
  CHECK_THROWS_AS(dp_partial(f, 2), Error);

  const Shape T = Shape::make(F, {1, 2});
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const DPoly g = random_dpoly(T, rng, 6), h = random_dpoly(T, rng, 6);
    const unsigned k = static_cast<unsigned>(rng.below(2));
    REQUIRE(dp_partial(g * h, k) == dp_partial(g, k) * h + g * dp_partial(h, k));
  }
}

TEST_CASE("grading and inverses") {
  const Field F = Field::make(5);
  const Shape S = Shape::ones(F, 2);
  const DPoly f = parse_dpoly(S, "1 + x[1,0] + x[1,1]");
  const auto parts = grade_split(f);
  REQUIRE(parts.size() == 3);
  CHECK(parts.at(0) == DPoly::constant(S, F.one()));
  CHECK(parts.at(2).to_string() == "x[1,1]");
  CHECK(grade_split(DPoly(S)).empty());

  const Shape B1 = Shape::ones(F, 1);
  const DPoly g = parse_dpoly(B1, "1 + x[1]");
  const DPoly ginv = dp_invert(g);
  CHECK(g * ginv == DPoly::constant(B1, F.one()));
  // 1/(1+x) = sum (-x)^j = sum (-1)^j j! x^(j)
  CHECK(ginv == parse_dpoly(B1, "1 - x[1] + 2*x[2] - 6*x[3] + 24*x[4]"));
  CHECK_THROWS_AS(dp_invert(parse_dpoly(B1, "x[1]")), Error);

  Rng rng(3);
  const Shape T = Shape::ones(F, 3);
  for (int i = 0; i < 50; ++i) {
    DPoly h = random_dpoly(T, rng, 8) + DPoly::constant(T, rng.nonzero_scalar(F));
    if (h.constant_term().is_zero()) continue;
    REQUIRE(h * dp_invert(h) == DPoly::constant(T, F.one()));
  }
}

TEST_CASE("nilpotence of the augmentation ideal") {
  const Field F = Field::make(5);
  const Shape S = Shape::make(F, {1, 2});
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    DPoly f = random_dpoly(S, rng, 6);
    f = f - DPoly::constant(S, f.constant_term());
    CHECK(dp_power(f, S.max_degree() + 1).is_zero());
  }
}

TEST_CASE("text round trip") {
  const Field F25 = Field::make(5, 2);
  const Shape S = Shape::ones(F25, 2);
  const DPoly f = parse_dpoly(S, "3*x[1,0] + [t+2]*x[0,1] - 1");
  CHECK(f.to_string() == "4 + [t+2]*x[0,1] + 3*x[1,0]");
  CHECK(parse_dpoly(S, f.to_string()) == f);
  CHECK(parse_dpoly(S, "2x[1,1]") == parse_dpoly(S, "2*x[1,1]"));
  CHECK_THROWS_AS(parse_dpoly(S, "x[1]"), Error);
  CHECK_THROWS_AS(parse_dpoly(S, "x[1,0] +"), Error);
  CHECK_THROWS_AS(parse_dpoly(Shape::ones(Field::make(5), 1), "[t]*x[1]"), Error);
}

TEST_CASE("multiplication matrix") {
  const Field F = Field::make(5);
  const Shape S = Shape::ones(F, 2);
  const DPoly f = parse_dpoly(S, "2 + x[1,0] + 3*x[1,1]");
  const DPoly g = parse_dpoly(S, "x[0,1] + x[2,3]");
  CHECK(DPoly::from_dense(S, multiplication_matrix(f).apply(g.dense())) == f * g);
}
