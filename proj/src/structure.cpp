#include "cartanlie/structure.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "parallel.hpp"

namespace cartanlie {

namespace {

void require_ones(const Shape& S) {
  if (!S.is_ones()) throw Error(ErrorCode::BadShape, "expected a shape with n = (1,...,1)");
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

Matrix shift(const Matrix& m, Scalar lambda) {
  Matrix out = m;
  const Field& F = m.field();
  for (std::size_t i = 0; i < m.rows(); ++i) out(i, i) = F.sub(out(i, i), lambda);
  return out;
}

Poly checked_char_poly(const Matrix& m) {
  Poly chi = char_poly(m);
  if (!is_p_polynomial(chi))
    throw Error(ErrorCode::LemmaViolation, "characteristic polynomial " + chi.to_string() + " is not a p-polynomial");
  return chi;
}

std::size_t lowest_degree(const Poly& f) {
  std::size_t d = 0;
  while (f.coeff(d).is_zero()) ++d;
  return d;
}

bool degree_minus_one_nonzero(const LieAlgebra& alg, const Vector& v) {
  if (alg.block(-1).empty()) return false;
  return !is_zero(alg.to_local(-1, v));
}

}  // namespace

unsigned worker_threads() {
  if (const char* env = std::getenv("CARTANLIE_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
}

Subspace constants_ring(const Deriv& d) { return kernel(derivation_matrix(d)); }

std::optional<std::uint64_t> nilpotency_index(const Matrix& m, std::uint64_t limit) {
  if (!power(m, limit).is_zero()) return std::nullopt;
  Matrix acc = Matrix::identity(m.field(), m.rows());
  for (std::uint64_t k = 0; k <= limit; ++k) {
    if (acc.is_zero()) return k;
    acc = acc * m;
  }
  return std::nullopt;
}

const char* to_string(Regularity r) noexcept {
  switch (r) {
    case Regularity::RegularNilpotent: return "regular_nilpotent";
    case Regularity::RegularSemisimple: return "regular_semisimple";
    case Regularity::Neither: return "neither";
  }
  return "?";
}

RegularityResult regularity_classify(const Deriv& d, unsigned max_ext) {
  const Shape& S = d.shape();
  require_ones(S);
  const Matrix M = derivation_matrix(d);
  const std::uint64_t N = S.dim();
  RegularityResult res;
  if (power(M, N).is_zero()) {
    const Matrix top = power(M, N - 1);
    for (std::size_t j = 0; j < top.cols(); ++j) {
      if (is_zero(top.column(j))) continue;
      res.kind = Regularity::RegularNilpotent;
      res.witness = DPoly::basis(S, static_cast<std::uint32_t>(j), S.field().one());
      break;
    }
    return res;
  }
  const Poly chi = checked_char_poly(M);
  // a p-polynomial is separable iff its linear coefficient is nonzero
  const bool separable = !chi.coeff(1).is_zero();
  const auto k = splitting_degree(chi, max_ext);
  if (!k) {
    if (!separable) return res;
    const auto need = splitting_degree(chi, kSplitHardCap);
    throw Error(ErrorCode::SplittingFieldTooSmall,
                "characteristic polynomial needs degree " +
                    (need ? std::to_string(*need) : "> " + std::to_string(kSplitHardCap)) +
                    ", max_ext is " + std::to_string(max_ext));
  }
  const Field E = Field::make(S.p(), *k, kMaxFieldOrder);
  const RootSet roots = poly_roots(chi, E);
  if (separable && roots.roots.size() == N) {
    res.kind = Regularity::RegularSemisimple;
    for (const auto& rm : roots.roots) res.eigenvalues.push_back(rm.root);
    res.field = E;
  }
  return res;
}

DecompositionResult decompose_derivation(const Deriv& d, unsigned max_ext) {
  const Shape& S = d.shape();
  require_ones(S);
  const unsigned m = S.m();
  const std::uint32_t p = S.p();
  if (constants_ring(d).dim() != 1) throw Error(ErrorCode::NontrivialConstants, "D has non-constant constants");

  const Matrix M = derivation_matrix(d);
  const Poly chi = checked_char_poly(M);
  const std::size_t low = lowest_degree(chi);
  unsigned r = 0;
  for (std::size_t q = 1; q < low; q *= p) ++r;
  if (ipow(p, r) != low) throw Error(ErrorCode::LemmaViolation, "lowest term of chi is not a power of p");

  const auto k = splitting_degree(chi, max_ext);
  if (!k) {
    const auto need = splitting_degree(chi, kSplitHardCap);
    throw Error(ErrorCode::SplitFailure, "chi = " + chi.to_string() + " needs degree " +
                                             (need ? std::to_string(*need) : "> " + std::to_string(kSplitHardCap)) +
                                             ", max_ext is " + std::to_string(max_ext));
  }
  const Field E = Field::make(p, *k, kMaxFieldOrder);
  const RootSet roots = poly_roots(chi, E);
  const std::uint64_t pr = ipow(p, r);
  const std::size_t n = S.dim();

  std::vector<Scalar> lambda;
  bool mult_ok = roots.splits && roots.roots.size() == ipow(p, m - r);
  for (const auto& rm : roots.roots) {
    lambda.push_back(rm.root);
    mult_ok = mult_ok && rm.multiplicity == pr;
  }
  bool group = true;
  for (Scalar a : lambda)
    for (Scalar b : lambda) group = group && std::binary_search(lambda.begin(), lambda.end(), E.add(a, b));

  const Matrix ME = lift(M, E);
  const Subspace b_prime = kernel(power(ME, pr));
  mult_ok = mult_ok && b_prime.dim() == pr;

  bool one_dim = true;
  std::vector<Vector> eigen;
  for (Scalar l : lambda) {
    const Matrix A = shift(ME, l);
    const Subspace ker = kernel(A);
    if (ker.is_zero()) throw Error(ErrorCode::LemmaViolation, "root of chi without eigenvector");
    one_dim = one_dim && ker.dim() == 1;
    mult_ok = mult_ok && kernel(power(A, pr)).dim() == pr;
    // RREF rows already have a leading 1
    eigen.push_back(ker.vector(0));
  }
  const Subspace b_second = Subspace::span(E, n, eigen);

  std::vector<Vector> chain{Vector(n)};
  chain[0][0] = E.one();
  const Matrix restricted = ME * Matrix::from_columns(E, n, b_prime.vectors());
  while (chain.size() < pr) {
    const auto c = solve(restricted, chain.back());
    if (!c) throw Error(ErrorCode::LemmaViolation, "nilpotent chain stops at length " + std::to_string(chain.size()));
    chain.push_back(b_prime.combine(*c));
  }

  const Shape SE = Shape::make(E, S.n());
  std::vector<DPoly> gs;
  for (const auto& g : eigen) gs.push_back(DPoly::from_dense(SE, g));
  std::vector<std::vector<Vector>> prod(chain.size());
  EchelonBuilder eb(E, n);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const DPoly z = DPoly::from_dense(SE, chain[i]);
    for (const auto& g : gs) {
      prod[i].push_back((z * g).dense());
      eb.insert(prod[i].back());
    }
  }
  const bool product_basis = eb.rank() == n;

  // D(z_i g) = z_{i-1} g + lambda z_i g
  bool recon = true;
  for (std::size_t i = 0; i < prod.size() && recon; ++i) {
    for (std::size_t j = 0; j < lambda.size() && recon; ++j) {
      Vector expect = scale(E, prod[i][j], lambda[j]);
      if (i > 0) expect = add(E, expect, prod[i - 1][j]);
      recon = ME.apply(prod[i][j]) == expect;
    }
  }

  return DecompositionResult{r,         chi,     E,       std::move(lambda), b_prime, b_second,
                             std::move(eigen), std::move(chain), group, mult_ok, one_dim,
                             product_basis, recon};
}

// ---------------------------------------------------------------------------

SubalgebraHandle subalgebra_closure(const std::vector<Vector>& generators, const SubalgebraHandle& a) {
  const LieAlgebra& alg = a.ambient();
  std::vector<Vector> gens;
  for (const auto& g : generators) {
    if (g.size() != alg.dim() || !a.contains(g))
      throw Error(ErrorCode::InvalidArgument, "generator outside the subalgebra");
    if (!is_zero(g)) gens.push_back(g);
  }
  EchelonBuilder eb(alg.field(), alg.dim());
  for (const auto& g : gens) eb.insert(g);
  const std::size_t target = a.dim();
  for (std::size_t i = 0; i < eb.rank() && eb.rank() < target; ++i) {
    const Vector w = eb.rows()[i];
    for (const auto& g : gens) {
      eb.insert(alg.bracket(g, w));
      if (eb.rank() == target) break;
    }
  }
  if (eb.rank() == target) return SubalgebraHandle::ungraded(a.ambient_ptr(), Label::Generated, a.basis());
  return SubalgebraHandle::ungraded(a.ambient_ptr(), Label::Generated, eb.finish());
}

ProbeResult nongeneration_probe(const Vector& x, const SubalgebraHandle& h, std::size_t samples,
                                std::uint64_t seed) {
  if (x.size() != h.ambient().dim() || is_zero(x) || !h.contains(x))
    throw Error(ErrorCode::InvalidArgument, "probe element must be a nonzero member of H");
  ProbeResult res;
  res.samples = samples;
  res.target_dim = h.dim();
  res.min_dim = h.dim();
  std::vector<Vector> ys(samples);
  std::vector<std::size_t> dims(samples);
  detail::parallel_for(samples, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    ys[i] = h.random_element(rng);
    dims[i] = subalgebra_closure({x, ys[i]}, h).dim();
  });
  for (std::size_t i = 0; i < samples; ++i) {
    res.max_dim = std::max(res.max_dim, dims[i]);
    res.min_dim = std::min(res.min_dim, dims[i]);
    if (dims[i] == h.dim()) {
      ++res.generating;
      if (!res.first_generating) res.first_generating = ys[i];
    }
  }
  return res;
}

// ---------------------------------------------------------------------------

WitnessS witness_S(const Deriv& d, const SpecialFamily& fam) {
  const Vector v = fam.w.to_vector(d);
  if (!fam.s1.contains(v)) throw Error(ErrorCode::NotInOmega, "D is not in S1");
  if (homogeneous_part(d, -1).is_zero()) throw Error(ErrorCode::NotInOmega, "D has no degree -1 part");
  const Shape& S = d.shape();
  const Subspace consts = constants_ring(d);
  // 1 is the first RREF row; later rows have no constant term
  if (consts.dim() < 2) throw Error(ErrorCode::NoConstantFound, "constants of D are only the scalars");
  DPoly f = DPoly::from_dense(S, consts.vector(1));
  if (!homogeneous_part(f, 1).is_zero()) f = f * f;
  const Deriv delta = d_module_mul(f, d);
  const Vector dv = fam.w.to_vector(delta);
  return WitnessS{f,
                  delta,
                  !delta.is_zero(),
                  fam.s.filtration(1).contains(dv),
                  d_bracket(d, delta).is_zero(),
                  divergence(delta).is_zero()};
}

WitnessH witness_H(const DPoly& f_in, const HamiltonianFamily& fam) {
  const Shape& S = f_in.shape();
  const DPoly f = f_in - DPoly::constant(S, f_in.constant_term());
  if (homogeneous_part(f, 1).is_zero()) throw Error(ErrorCode::NotInOmega, "f has no linear part");
  const Deriv d = d_H_map(f);
  const Deriv delta = d_H_map(dp_power(f, 3));
  if (delta.is_zero()) throw Error(ErrorCode::ZeroWitness, "D_H(f^3) vanishes");
  return WitnessH{f, d, delta, true, fam.h.filtration(1).contains(fam.w.to_vector(delta)),
                  d_bracket(d, delta).is_zero()};
}

WitnessK witness_K(const DPoly& f, const ContactFamily& fam) {
  const Vector v = fam.algebra.to_vector(f);
  if (f.constant_term().is_zero()) throw Error(ErrorCode::NotInOmega, "f has zero constant term");
  if (!fam.k1.contains(v)) throw Error(ErrorCode::NotInOmega, "f is not in K1");
  const LieAlgebra& alg = fam.algebra.lie();
  Subspace c = centraliser(alg, v, fam.k.basis());
  Subspace pos = subspace_intersect(c, fam.k.filtration(1));
  const std::size_t bound = std::min<std::size_t>(f.shape().m(), f.shape().p());
  if (c.dim() < bound)
    throw Error(ErrorCode::LemmaViolation, "centraliser of " + f.to_string() + " has dim " + std::to_string(c.dim()));
  if (pos.dim() < 2)
    throw Error(ErrorCode::LemmaViolation,
                "centraliser of " + f.to_string() + " meets K_{>=1} in dim " + std::to_string(pos.dim()));
  return WitnessK{std::move(c), std::move(pos), bound};
}

namespace {
constexpr int kOmegaTries = 10000;
}

Deriv sample_omega_S(const SpecialFamily& fam, Rng& rng) {
  for (int i = 0; i < kOmegaTries; ++i) {
    const Vector v = fam.s1.random_element(rng);
    if (degree_minus_one_nonzero(fam.w.lie(), v)) return fam.w.from_vector(v);
  }
  throw Error(ErrorCode::SearchExhausted, "no element of Omega_S drawn");
}

DPoly sample_omega_H(const HamiltonianFamily& fam, Rng& rng) {
  const Shape& S = fam.w.shape();
  std::vector<Vector> cols;
  for (std::uint32_t a = 0; a < S.dim(); ++a)
    cols.push_back(fam.w.to_vector(d_H_map(DPoly::basis(S, a, S.field().one()))));
  const Matrix dh = Matrix::from_columns(S.field(), fam.w.dim(), cols);
  for (int i = 0; i < kOmegaTries; ++i) {
    const Vector v = fam.h2.random_element(rng);
    if (!degree_minus_one_nonzero(fam.w.lie(), v)) continue;
    auto f = solve(dh, v);
    if (!f) throw Error(ErrorCode::LemmaViolation, "element of H2 outside the image of D_H");
    (*f)[0] = S.field().zero();
    return DPoly::from_dense(S, *f);
  }
  throw Error(ErrorCode::SearchExhausted, "no element of Omega_H drawn");
}

DPoly sample_omega_K(const ContactFamily& fam, Rng& rng) {
  for (int i = 0; i < kOmegaTries; ++i) {
    const Vector v = fam.k1.random_element(rng);
    if (!v[0].is_zero()) return fam.algebra.from_vector(v);
  }
  throw Error(ErrorCode::SearchExhausted, "no element of Omega_K drawn");
}

// ---------------------------------------------------------------------------

AuditResult criterion_audit(const SubalgebraHandle& l, const SubalgebraHandle& h, std::size_t samples,
                            std::uint64_t seed, const std::function<Vector(Rng&)>& omega) {
  if (!is_ideal(l, h)) throw Error(ErrorCode::NotAnIdeal, "H is not an ideal of L");
  const LieAlgebra& alg = l.ambient();
  AuditResult res;
  res.is_ideal = true;
  Subspace lh = l.basis();
  for (std::size_t i = 0; i < h.dim() && !lh.is_zero(); ++i) lh = centraliser(alg, h.basis().vector(i), lh);
  res.centraliser_of_h = lh.dim();

  const Subspace positive = l.filtration(1);
  std::optional<Subspace> inter;
  res.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(derive_seed(seed, i));
    const Vector x = omega(rng);
    const Subspace c = centraliser(alg, x, positive);
    if (c.is_zero()) continue;
    ++res.positive_centraliser;
    const Subspace hx = centraliser(alg, c.vector(0), h.basis());
    inter = inter ? subspace_intersect(*inter, hx) : hx;
  }
  if (inter) {
    res.intersection_dim = inter->dim();
    res.contains_top = subspace_contains(*inter, h.component(h.top_degree()));
  }
  return res;
}

// ---------------------------------------------------------------------------

RemarkProbe remark_W_probe(const Shape& shape, std::uint64_t seed, std::size_t attempts) {
  require_ones(shape);
  const WAlgebra w = WAlgebra::make(shape);
  const auto whole = SubalgebraHandle::whole(w.lie_ptr(), Label::W);
  const Subspace nonneg = whole.filtration(0);
  const Field& F = shape.field();
  const unsigned m = shape.m();

  // d_1 + sum_k x_1^{(p-1)} ... x_{k-1}^{(p-1)} d_k
  std::vector<DPoly> c;
  c.push_back(DPoly::constant(shape, F.one()));
  std::vector<unsigned> alpha(m, 0);
  for (unsigned k = 1; k < m; ++k) {
    alpha[k - 1] = shape.p() - 1;
    c.push_back(DPoly::monomial(shape, alpha, F.one()));
  }
  RemarkProbe res{Deriv(shape, c), true, 0, 0, std::nullopt};
  auto kernel_dim = [&](const Deriv& x) { return centraliser(w.lie(), w.to_vector(x), nonneg).dim(); };

  res.kernel_dim = kernel_dim(res.x);
  if (res.kernel_dim != 0) {
    res.candidate = false;
    for (; res.attempts < attempts; ++res.attempts) {
      Rng rng(derive_seed(seed, res.attempts));
      res.x = w.from_vector(whole.random_element(rng));
      res.kernel_dim = kernel_dim(res.x);
      if (res.kernel_dim == 0) break;
    }
    if (res.kernel_dim != 0)
      throw Error(ErrorCode::SearchExhausted, "no element with injective ad on L_{>=0} after " +
                                                  std::to_string(attempts) + " tries");
    ++res.attempts;
  }
  res.nilpotency = nilpotency_index(derivation_matrix(res.x), shape.dim());
  return res;
}

}  // namespace cartanlie
