#include <doctest.h>

#include "cartanlie/derivations.hpp"
#include "helpers.hpp"

using namespace cartanlie;
using testing_helpers::random_deriv;
using testing_helpers::random_dpoly;

TEST_CASE("applying derivations") {
  const Field F = Field::make(5);
  const Shape S = Shape::ones(F, 2);
  const Deriv euler = parse_deriv(S, "x[1,0]*d1");
  CHECK(d_apply(euler, parse_dpoly(S, "x[2,0]")) == parse_dpoly(S, "2*x[2,0]"));
  CHECK(d_apply(Deriv::partial(S, 0), parse_dpoly(S, "1")).is_zero());
  Rng rng(1);
  const Shape T = Shape::make(F, {1, 2});
  for (int i = 0; i < 300; ++i) {
    const Deriv d = random_deriv(T, rng, 4);
    const DPoly f = random_dpoly(T, rng, 5), g = random_dpoly(T, rng, 5);
    REQUIRE(d_apply(d, f * g) == d_apply(d, f) * g + f * d_apply(d, g));
  }
}

TEST_CASE("brackets of derivations") {
  const Field F = Field::make(5);
  const Shape S = Shape::ones(F, 2);
  const Deriv d1 = Deriv::partial(S, 0);
  CHECK(d_bracket(d1, parse_deriv(S, "x[1,0]*d1")) == d1);
  const Shape B1 = Shape::ones(F, 1);
  CHECK(d_bracket(Deriv::partial(B1, 0), parse_deriv(B1, "x[4]*d1")) == parse_deriv(B1, "x[3]*d1"));
  Rng rng(2);
  const Deriv d = random_deriv(S, rng, 6);
  CHECK(d_bracket(d, d).is_zero());
  // the bracket is the commutator of the actions
  for (int i = 0; i < 100; ++i) {
    const Deriv a = random_deriv(S, rng, 4), b = random_deriv(S, rng, 4);
    const DPoly f = random_dpoly(S, rng, 6);
    REQUIRE(d_apply(d_bracket(a, b), f) == d_apply(a, d_apply(b, f)) - d_apply(b, d_apply(a, f)));
  }
}

TEST_CASE("module action and divergence") {
  const Field F = Field::make(5);
  const Shape S = Shape::ones(F, 2);
  const Deriv d = parse_deriv(S, "x[1,1]*d1 + 3*d2");
  CHECK(d_module_mul(DPoly::constant(S, F.one()), d) == d);
  CHECK(d_module_mul(parse_dpoly(S, "x[1,0]"), Deriv::partial(S, 0)) == parse_deriv(S, "x[1,0]*d1"));
  CHECK(d_module_mul(DPoly(S), d).is_zero());

  CHECK(divergence(Deriv::partial(S, 1)).is_zero());
  CHECK(divergence(parse_deriv(S, "x[1,0]*d1")) == DPoly::constant(S, F.one()));
  CHECK(divergence(parse_deriv(S, "x[2,0]*d1")) == parse_dpoly(S, "x[1,0]"));

  Rng rng(3);
  const Shape T = Shape::make(F, {1, 2});
  for (int i = 0; i < 1000; ++i) {
    const DPoly f = random_dpoly(T, rng, 5);
    const Deriv a = random_deriv(T, rng, 4), b = random_deriv(T, rng, 4);
    REQUIRE(divergence(d_module_mul(f, a)) == f * divergence(a) + d_apply(a, f));
    REQUIRE(divergence(d_bracket(a, b)) == d_apply(a, divergence(b)) - d_apply(b, divergence(a)));
  }
}

TEST_CASE("derivation matrices") {
  const Field F = Field::make(5);
  const Shape S = Shape::make(F, {1, 2});
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const Deriv d = random_deriv(S, rng, 5);
    const DPoly f = random_dpoly(S, rng, 8);
    REQUIRE(DPoly::from_dense(S, derivation_matrix(d).apply(f.dense())) == d_apply(d, f));
  }
}

TEST_CASE("W dimensions and grading") {
  const Field F = Field::make(5);
  const WAlgebra w1 = WAlgebra::make(Shape::ones(F, 1));
  CHECK(w1.dim() == 5);
  CHECK(WAlgebra::make(Shape::ones(F, 2)).dim() == 50);
  CHECK(WAlgebra::make(Shape::make(F, {2})).dim() == 25);
  CHECK(w1.lie().block(3).size() == 1);
  CHECK(w1.lie().block(3)[0] == w1.to_vector(parse_deriv(w1.shape(), "x[4]*d1")).size() - 1);
  const WAlgebra w2 = WAlgebra::make(Shape::make(F, {1, 2}));
  CHECK(w2.lie().min_degree() == -1);
  CHECK(w2.lie().max_degree() == 27);
  CHECK(w2.lie().block(-1).size() == 2);
  CHECK(w2.lie().block(27).size() == 2);
  CHECK_THROWS_AS(WAlgebra::make(Shape::ones(F, 3), 100), Error);

  const Deriv d = parse_deriv(w2.shape(), "d1 + x[1,0]*d2 + 3*x[2,3]*d1");
  const auto parts = grade_split(d);
  CHECK(parts.size() == 3);
  CHECK(parts.at(-1) == Deriv::partial(w2.shape(), 0));
  CHECK(parts.at(4) == homogeneous_part(d, 4));
}

TEST_CASE("structure constants agree with the coefficient bracket") {
  const Field F = Field::make(5);
  for (const auto& n : {std::vector<unsigned>{1, 1}, std::vector<unsigned>{2}, std::vector<unsigned>{1, 2}}) {
    const WAlgebra w = WAlgebra::make(Shape::make(F, n));
    const LieAlgebra& L = w.lie();
    for (std::uint32_t i = 0; i < w.dim(); ++i) {
      Vector ei(w.dim());
      ei[i] = F.one();
      const Deriv di = w.from_vector(ei);
      for (std::uint32_t j = 0; j < w.dim(); ++j) {
        Vector ej(w.dim());
        ej[j] = F.one();
        const Vector b = L.bracket(ei, ej);
        REQUIRE(w.from_vector(b) == d_bracket(di, w.from_vector(ej)));
        if (!is_zero(b)) REQUIRE(L.homogeneous_degree(b) == L.degree(i) + L.degree(j));
      }
    }
  }
}

TEST_CASE("ad matrices and centralisers in W(1,1)") {
  const Field F = Field::make(5);
  const WAlgebra w = WAlgebra::make(Shape::ones(F, 1));
  const Vector d = w.to_vector(Deriv::partial(w.shape(), 0));
  const Matrix ad = w.lie().ad(d);
  CHECK(rref(ad).rank == 4);
  CHECK(kernel(ad).dim() == 1);
  CHECK(w.lie().ad(Vector(w.dim())).is_zero());
  const auto am = ad_matrix(w.lie(), d, Subspace::full(F, w.dim()));
  CHECK(am.square_in_basis);
  CHECK(am.matrix == ad);
  const auto c = centraliser(w.lie(), d, Subspace::full(F, w.dim()));
  CHECK(c.dim() == 1);
  CHECK(c.contains(d));
}

TEST_CASE("sigma and iota") {
  const Field F = Field::make(5);
  const Shape O12 = Shape::make(F, {2});
  const SigmaIso sigma(O12);
  CHECK(sigma.target().m() == 2);
  CHECK(sigma.apply(DPoly::constant(O12, F.one())) == DPoly::constant(sigma.target(), F.one()));
  CHECK(sigma.apply(parse_dpoly(O12, "x[5]")) == parse_dpoly(sigma.target(), "x[0,1]"));
  CHECK(sigma.apply(parse_dpoly(O12, "x[6]")) == parse_dpoly(sigma.target(), "x[1,1]"));
  // single-digit exponents keep their divided power
  CHECK(sigma.apply(parse_dpoly(O12, "x[4]")) == parse_dpoly(sigma.target(), "x[4,0]"));

  const Deriv id = sigma.iota(Deriv::partial(O12, 0));
  CHECK(id == parse_deriv(sigma.target(), "d1 + x[4,0]*d2"));
  CHECK(divergence(id).is_zero());
  CHECK(sigma.iota(Deriv(O12)).is_zero());

  Rng rng(6);
  for (const auto& n : {std::vector<unsigned>{2}, std::vector<unsigned>{1, 2}}) {
    const Shape S = Shape::make(F, n);
    const SigmaIso s(S);
    const WAlgebra w = WAlgebra::make(S);
    for (std::uint32_t i = 0; i < w.dim(); ++i) {
      Vector e(w.dim());
      e[i] = F.one();
      const Deriv d = w.from_vector(e);
      REQUIRE(divergence(s.iota(d)) == s.apply(divergence(d)));
    }
    for (int t = 0; t < 100; ++t) {
      const DPoly f = random_dpoly(S, rng, 5), g = random_dpoly(S, rng, 5);
      REQUIRE(s.apply(f * g) == s.apply(f) * s.apply(g));
      REQUIRE(s.apply_inverse(s.apply(f)) == f);
      const Deriv a = random_deriv(S, rng, 3), b = random_deriv(S, rng, 3);
      REQUIRE(s.iota(d_bracket(a, b)) == d_bracket(s.iota(a), s.iota(b)));
      REQUIRE(s.iota(d_module_mul(f, a)) == d_module_mul(s.apply(f), s.iota(a)));
      REQUIRE(s.apply(d_apply(a, f)) == d_apply(s.iota(a), s.apply(f)));
    }
  }
}

TEST_CASE("derivation text") {
  const Field F = Field::make(5);
  const Shape S = Shape::ones(F, 2);
  const Deriv d = parse_deriv(S, "x[4,0]*d1 + d2 - 1*d2 + (1 + x[1,0])*d2 - 2*d1");
  CHECK(d.to_string() == "3*d1 + x[4,0]*d1 + d2 + x[1,0]*d2");
  CHECK(parse_deriv(S, d.to_string()) == d);
  CHECK(parse_deriv(S, "-1*d2") == scale(Deriv::partial(S, 1), F.from_int(-1)));
  CHECK(Deriv(S).to_string() == "0");
  CHECK_THROWS_AS(parse_deriv(S, "d3"), Error);
  CHECK_THROWS_AS(parse_deriv(S, "x[1,0]"), Error);
}
