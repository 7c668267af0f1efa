#include <doctest.h>

#include "cartanlie/derivations.hpp"
#include "cartanlie/lie.hpp"

using namespace cartanlie;

TEST_CASE("Jacobi on all basis triples of small Witt algebras") {
  const Field F = Field::make(5);
  for (const auto& n : {std::vector<unsigned>{1}, std::vector<unsigned>{2}}) {
    const WAlgebra w = WAlgebra::make(Shape::make(F, n));
    const LieAlgebra& L = w.lie();
    std::vector<Vector> e(w.dim(), Vector(w.dim()));
    for (std::size_t i = 0; i < w.dim(); ++i) e[i][i] = F.one();
    for (std::size_t i = 0; i < w.dim(); ++i)
      for (std::size_t j = 0; j < w.dim(); ++j) {
        REQUIRE(is_zero(add(F, L.bracket(e[i], e[j]), L.bracket(e[j], e[i]))));
        for (std::size_t k = 0; k < w.dim(); ++k) {
          const Vector s = add(F, add(F, L.bracket(e[i], L.bracket(e[j], e[k])), L.bracket(e[j], L.bracket(e[k], e[i]))),
                               L.bracket(e[k], L.bracket(e[i], e[j])));
          REQUIRE(is_zero(s));
        }
      }
  }
}

TEST_CASE("graded handles") {
  const Field F = Field::make(5);
  const WAlgebra w = WAlgebra::make(Shape::ones(F, 1));
  const auto W = SubalgebraHandle::whole(w.lie_ptr(), Label::W);
  CHECK(W.dim() == 5);
  CHECK(W.min_degree() == -1);
  CHECK(W.top_degree() == 3);
  CHECK(W.filtration(0).dim() == 4);
  CHECK(W.filtration(4).dim() == 0);
  CHECK(derived_subalgebra(W, Label::Generated).dim() == 5);
  CHECK(is_ideal(W, W));

  // span{d1, d2} in W(2,1) is abelian
  const WAlgebra w2 = WAlgebra::make(Shape::ones(F, 2));
  std::map<int, Subspace> comps;
  comps.emplace(-1, Subspace::full(F, 2));
  const auto ab = SubalgebraHandle::graded(w2.lie_ptr(), Label::Generated, comps);
  CHECK(ab.dim() == 2);
  CHECK(derived_subalgebra(ab, Label::Generated).dim() == 0);
  CHECK_FALSE(is_ideal(SubalgebraHandle::whole(w2.lie_ptr(), Label::W), ab));

  // [d1, x1 d2] = d2 leaves span{d1, x1 d2}
  std::map<int, Subspace> bad;
  const Vector d1{F.one(), F.zero()};
  bad.emplace(-1, Subspace::span(F, 2, std::vector<Vector>{d1}));
  Vector x1d2(w2.lie().block(0).size());
  x1d2[w2.lie().local_index(w2.flat(w2.shape().index(std::vector<unsigned>{1, 0}), 1))] = F.one();
  bad.emplace(0, Subspace::span(F, x1d2.size(), std::vector<Vector>{x1d2}));
  CHECK_THROWS_AS(SubalgebraHandle::graded(w2.lie_ptr(), Label::Generated, bad), Error);
}
