#include <doctest.h>

#include "cartanlie/cartan.hpp"
#include "helpers.hpp"

using namespace cartanlie;
using testing_helpers::random_dpoly;

TEST_CASE("Hamiltonian indexing") {
  const HamiltonianIndexing idx{2};
  for (unsigned j = 0; j < 4; ++j) {
    CHECK(idx.prime(idx.prime(j)) == j);
    CHECK(idx.sign(idx.prime(j)) == -idx.sign(j));
  }
  CHECK(idx.prime(0) == 2);
  CHECK(idx.sign(3) == -1);
}

TEST_CASE("type S dimensions") {
  const Field F = Field::make(5);
  // div hits every monomial except x^(tau), so dim S = m p^{|n|} - (p^{|n|} - 1)
  const auto s2 = build_S(Shape::ones(F, 2));
  CHECK(s2.s.dim() == 26);
  CHECK(s2.s1.dim() == 24);
  CHECK(s2.cs.dim() == 27);
  for (const auto& v : s2.s1.basis().vectors()) CHECK(divergence(s2.w.from_vector(v)).is_zero());
  CHECK(is_ideal(s2.s, s2.s1));
  CHECK(is_ideal(s2.cs, s2.s1));

  const auto s3 = build_S(Shape::ones(F, 3));
  CHECK(s3.s.dim() == 251);
  CHECK(s3.s.dim() - s3.s1.dim() == 3);
  CHECK(s3.cs.dim() - s3.s1.dim() == 4);

  const auto s12 = build_S(Shape::make(F, {1, 2}));
  CHECK(s12.s.dim() - s12.s1.dim() == 2);
  CHECK_THROWS_AS(build_S(Shape::ones(F, 1)), Error);
}

TEST_CASE("Poisson bracket and D_H") {
  const Field F = Field::make(5);
  const Shape S = Shape::ones(F, 2);
  const DPoly x1 = DPoly::variable(S, 0), x2 = DPoly::variable(S, 1);
  CHECK(poisson_bracket(x1, x2) == DPoly::constant(S, F.one()));
  CHECK(d_H_map(x1) == Deriv::partial(S, 1));
  CHECK(d_H_map(DPoly::constant(S, F.one())).is_zero());
  CHECK_THROWS_AS(poisson_bracket(DPoly(Shape::ones(F, 3)), DPoly(Shape::ones(F, 3))), Error);

  Rng rng(1);
  const Shape T = Shape::make(F, {1, 2});
  for (int i = 0; i < 500; ++i) {
    const DPoly f = random_dpoly(T, rng, 6), g = random_dpoly(T, rng, 6), h = random_dpoly(T, rng, 6);
    REQUIRE(poisson_bracket(f, f).is_zero());
    REQUIRE(poisson_bracket(DPoly::constant(T, F.one()), g).is_zero());
    REQUIRE(d_bracket(d_H_map(f), d_H_map(g)) == d_H_map(poisson_bracket(f, g)));
    REQUIRE(poisson_bracket(f, g * h) == poisson_bracket(f, g) * h + g * poisson_bracket(f, h));
    const DPoly jac = poisson_bracket(f, poisson_bracket(g, h)) + poisson_bracket(g, poisson_bracket(h, f)) +
                      poisson_bracket(h, poisson_bracket(f, g));
    REQUIRE(jac.is_zero());
  }
  // D_H(x^(alpha)) has degree |alpha| - 2
  for (std::uint32_t a = 1; a < T.dim(); ++a) {
    const auto parts = grade_split(d_H_map(DPoly::basis(T, a, F.one())));
    REQUIRE(parts.size() == 1);
    REQUIRE(parts.begin()->first == static_cast<int>(T.degree(a)) - 2);
  }
}

TEST_CASE("type H dimensions") {
  const Field F = Field::make(5);
  const auto h = build_H(Shape::ones(F, 2));
  CHECK(h.h.dim() == 24);
  CHECK(h.h2.dim() == 23);
  for (const auto& v : h.h.basis().vectors()) CHECK(divergence(h.w.from_vector(v)).is_zero());
  CHECK(subspace_contains(h.h.basis(), h.h2.basis()));
  CHECK_THROWS_AS(build_H(Shape::ones(F, 3)), Error);
}

TEST_CASE("D_K and the contact bracket") {
  const Field F = Field::make(5);
  const Shape S = Shape::ones(F, 3);
  const DPoly one = DPoly::constant(S, F.one());
  CHECK(d_K_map(one) == scale(Deriv::partial(S, 2), F.from_int(2)));
  CHECK(k_grade_split(one).begin()->first == -2);
  CHECK(k_grade_split(DPoly::variable(S, 0)).begin()->first == -1);
  CHECK(k_grade_split(DPoly::variable(S, 2)).begin()->first == 0);
  CHECK_THROWS_AS(d_K_map(DPoly(Shape::ones(F, 4))), Error);

  Rng rng(2);
  bool one_not_central = false;
  for (int i = 0; i < 500; ++i) {
    const DPoly f = random_dpoly(S, rng, 6), g = random_dpoly(S, rng, 6), h = random_dpoly(S, rng, 4);
    REQUIRE(d_bracket(d_K_map(f), d_K_map(g)) == d_K_map(contact_bracket(f, g)));
    REQUIRE(contact_bracket(f, f).is_zero());
    const DPoly c1 = contact_bracket(one, g);
    REQUIRE(c1 == scale(dp_partial(g, 2), F.from_int(2)));
    if (!c1.is_zero()) one_not_central = true;
    const DPoly jac = contact_bracket(f, contact_bracket(g, h)) + contact_bracket(g, contact_bracket(h, f)) +
                      contact_bracket(h, contact_bracket(f, g));
    REQUIRE(jac.is_zero());
  }
  CHECK(one_not_central);

  // K_i K_j in K_{i+j+2} and D_K(x^(alpha)) has K-degree ||alpha|| - 2
  for (std::uint32_t a = 0; a < S.dim(); ++a) {
    for (std::uint32_t b = 0; b < S.dim(); ++b) {
      const DPoly prod = DPoly::basis(S, a, F.one()) * DPoly::basis(S, b, F.one());
      for (const auto& [d, part] : k_grade_split(prod)) REQUIRE(d == k_degree(S, a) + k_degree(S, b) + 2);
    }
  }
}

TEST_CASE("conjugation by multiplication") {
  const Field F = Field::make(5);
  const Shape S = Shape::ones(F, 3);
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const DPoly f = random_dpoly(S, rng, 6);
    const Matrix mu = multiplication_matrix(f);
    REQUIRE(contact_ad_matrix(f) * mu == mu * derivation_matrix(d_K_map(f)));
    if (!f.constant_term().is_zero())
      REQUIRE(char_poly(contact_ad_matrix(f)) == char_poly(derivation_matrix(d_K_map(f))));
  }
}

TEST_CASE("type K") {
  const Field F = Field::make(5);
  const auto k = build_K(Shape::ones(F, 3));
  CHECK(k.k.dim() == 125);
  CHECK(k.k1.dim() == 125);
  CHECK(k.expected_codim == 0);
  CHECK(k.k.min_degree() == -2);
  CHECK(k.k.component_dim(-2) == 1);
  CHECK(k.k.component_dim(-1) == 2);
  CHECK(k.k.top_degree() == 14);
  const auto& L = k.algebra.lie();
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const DPoly f = random_dpoly(k.algebra.shape(), rng, 5), g = random_dpoly(k.algebra.shape(), rng, 5);
    REQUIRE(k.algebra.from_vector(L.bracket(f.dense(), g.dense())) == contact_bracket(f, g));
  }
  CHECK_THROWS_AS(build_K(Shape::ones(F, 7)), Error);
}
