#include <doctest.h>

#include "cartanlie/linalg.hpp"
#include "cartanlie/random.hpp"

using namespace cartanlie;

namespace {

Matrix mat(const Field& F, std::size_t cols, std::initializer_list<std::int64_t> entries) {
  Matrix m(F, entries.size() / cols, cols);
  std::size_t i = 0;
  for (auto v : entries) {
    m(i / cols, i % cols) = F.from_int(v);
    ++i;
  }
  return m;
}

Matrix random_matrix(const Field& F, std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(F, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.scalar(F);
  return m;
}

// Determinant by plain elimination, kept separate from the library kernels.
Scalar det(Matrix m) {
  const Field& F = m.field();
  Scalar d = F.one();
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c).is_zero()) ++piv;
    if (piv == n) return F.zero();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      d = F.neg(d);
    }
    d = F.mul(d, m(c, c));
    const Scalar inv = F.inv(m(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      const Scalar f = F.mul(m(r, c), inv);
      for (std::size_t j = c; j < n; ++j) m(r, j) = F.sub(m(r, j), F.mul(f, m(c, j)));
    }
  }
  return d;
}

}  // namespace

TEST_CASE("rref") {
  const Field F = Field::make(5);
  const auto id = rref(Matrix::identity(F, 3));
  CHECK(id.rank == 3);
  CHECK(id.reduced == Matrix::identity(F, 3));
  CHECK(rref(Matrix(F, 2, 3)).rank == 0);
  const auto r = rref(mat(F, 2, {1, 2, 2, 4}));
  CHECK(r.rank == 1);
  CHECK(r.reduced == mat(F, 2, {1, 2}));
  CHECK(r.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("rref is canonical under row operations") {
  const Field F = Field::make(5);
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(F, 4, 7, rng);
    const Matrix mix = random_matrix(F, 6, 4, rng);
    const Matrix b = mix * a;  // row space contained in a's
    const auto ra = rref(a), rb = rref(b);
    if (rb.rank == ra.rank) CHECK(ra.reduced == rb.reduced);
    CHECK(rref(ra.reduced).reduced == ra.reduced);
  }
}

TEST_CASE("kernel") {
  const Field F = Field::make(5);
  CHECK(kernel(Matrix::identity(F, 4)).dim() == 0);
  CHECK(kernel(Matrix(F, 2, 2)).dim() == 2);
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = random_matrix(F, 5, 9, rng);
    const Subspace k = kernel(m);
    CHECK(k.dim() + rref(m).rank == 9);
    for (const auto& v : k.vectors()) CHECK(is_zero(m.apply(v)));
  }
}

TEST_CASE("subspace lattice") {
  const Field F = Field::make(5);
  const Vector e1{F.one(), F.zero()}, e2{F.zero(), F.one()};
  const Subspace a = Subspace::span(F, 2, std::vector<Vector>{e1});
  const Subspace b = Subspace::span(F, 2, std::vector<Vector>{e2});
  CHECK(subspace_sum(a, b) == Subspace::full(F, 2));
  CHECK(subspace_intersect(a, a) == a);
  CHECK(subspace_intersect(a, b).dim() == 0);
  CHECK_THROWS_AS(subspace_sum(a, Subspace(F, 3)), Error);

  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vector> va, vb;
    const std::size_t da = 1 + rng.below(7), db = 1 + rng.below(7);
    const Matrix shared = random_matrix(F, rng.below(4), 10, rng);
    for (std::size_t i = 0; i < shared.rows(); ++i) {
      va.push_back(shared.row_vector(i));
      vb.push_back(shared.row_vector(i));
    }
    for (std::size_t i = 0; i < da; ++i) va.push_back(random_matrix(F, 1, 10, rng).row_vector(0));
    for (std::size_t i = 0; i < db; ++i) vb.push_back(random_matrix(F, 1, 10, rng).row_vector(0));
    const Subspace A = Subspace::span(F, 10, va), B = Subspace::span(F, 10, vb);
    const Subspace I = subspace_intersect(A, B), S = subspace_sum(A, B);
    CHECK(I.dim() == A.dim() + B.dim() - S.dim());
    CHECK(subspace_contains(A, I));
    CHECK(subspace_contains(B, I));
    CHECK(subspace_contains(S, A));
  }
}

TEST_CASE("coordinates and residuals") {
  const Field F = Field::make(7);
  Rng rng(2);
  const Matrix m = random_matrix(F, 3, 6, rng);
  const Subspace s = Subspace::row_space(m);
  const Vector v = add(F, scale(F, m.row_vector(0), F.from_int(3)), m.row_vector(2));
  CHECK(s.contains(v));
  CHECK(s.combine(s.coordinates(v)) == v);
  Vector w = v;
  w[5] = F.add(w[5], F.one());
  if (s.dim() < 6) CHECK((s.contains(w) == false || s.dim() == 6));
}

TEST_CASE("solve") {
  const Field F = Field::make(5);
  const Matrix m = mat(F, 3, {1, 2, 0, 0, 0, 1});
  const auto x = solve(m, Vector{F.from_int(3), F.from_int(4)});
  REQUIRE(x);
  CHECK(m.apply(*x) == Vector{F.from_int(3), F.from_int(4)});
  CHECK((*x)[1] == F.zero());
  CHECK_FALSE(solve(mat(F, 2, {1, 1, 2, 2}), Vector{F.one(), F.one()}));
}

TEST_CASE("characteristic polynomials") {
  const Field F = Field::make(5);
  // x d/dx on B_1 is diag(0..4); d/dx shifts x^(j) to x^(j-1).
  Matrix euler(F, 5, 5), shift(F, 5, 5);
  for (std::size_t j = 0; j < 5; ++j) euler(j, j) = F.from_int(static_cast<std::int64_t>(j));
  for (std::size_t j = 1; j < 5; ++j) shift(j - 1, j) = F.one();
  const std::vector<Scalar> t5_minus_t{F.zero(), F.from_int(-1), F.zero(), F.zero(), F.zero(), F.one()};
  CHECK(char_poly(euler) == Poly(F, t5_minus_t));
  CHECK(char_poly(shift) == Poly::monomial(F, 5, F.one()));
  CHECK(is_p_polynomial(char_poly(euler)));
  CHECK(is_p_polynomial(char_poly(shift)));
  CHECK_FALSE(is_p_polynomial(Poly::monomial(F, 2, F.one())));
  // t^5 + t^2 has the wrong support; t^25 + 3 t^5 + t is additive
  std::vector<Scalar> add25(26);
  add25[1] = F.one();
  add25[5] = F.from_int(3);
  add25[25] = F.one();
  CHECK(is_p_polynomial(Poly(F, add25)));

  // (t - 1)^4 for the identity
  const std::vector<Scalar> ones{F.one(), F.one(), F.one(), F.one()};
  CHECK(char_poly(Matrix::identity(F, 4)) == Poly::from_roots(F, ones));
  CHECK_THROWS_AS(char_poly(Matrix(F, 2, 3)), Error);
}

TEST_CASE("char poly agrees with determinants and Cayley-Hamilton") {
  for (unsigned k : {1u, 2u}) {
    const Field F = Field::make(5, k);
    Rng rng(17 + k);
    for (std::size_t n : {1u, 2u, 5u, 12u, 30u, 50u}) {
      const Matrix m = random_matrix(F, n, n, rng);
      const Poly chi = char_poly(m);
      CHECK(chi.degree() == static_cast<long>(n));
      for (int s = 0; s < 3; ++s) {
        const Scalar a = rng.scalar(F);
        CHECK(chi.eval(a) == det(scale(Matrix::identity(F, n), a) - m));
      }
      CHECK(evaluate(chi, m).is_zero());
    }
  }
}

TEST_CASE("matrix products agree with the naive formula") {
  const Field F = Field::make(1000003);
  Rng rng(9);
  const Matrix a = random_matrix(F, 7, 40, rng), b = random_matrix(F, 40, 5, rng);
  const Matrix c = a * b;
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      Scalar acc = F.zero();
      for (std::size_t l = 0; l < 40; ++l) acc = F.add(acc, F.mul(a(i, l), b(l, j)));
      CHECK(c(i, j) == acc);
    }
  CHECK(power(Matrix::identity(F, 3), 10) == Matrix::identity(F, 3));
}

TEST_CASE("echelon builder") {
  const Field F = Field::make(5);
  Rng rng(4);
  EchelonBuilder eb(F, 8);
  std::vector<Vector> vs;
  for (int i = 0; i < 5; ++i) vs.push_back(random_matrix(F, 1, 8, rng).row_vector(0));
  for (const auto& v : vs) eb.insert(v);
  CHECK_FALSE(eb.insert(add(F, vs[0], scale(F, vs[3], F.from_int(2)))));
  CHECK(eb.finish() == Subspace::span(F, 8, vs));
  CHECK(is_zero(eb.reduce(vs[1])));
}
