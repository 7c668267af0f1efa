#include "cartanlie/cartan.hpp"

#include <sstream>

namespace cartanlie {

namespace {

std::string shape_suffix(const Shape& S) {
  std::ostringstream os;
  os << '(' << S.m() << ",(";
  for (unsigned i = 0; i < S.m(); ++i) os << (i ? "," : "") << S.n()[i];
  os << "))";
  return os.str();
}

void require_even(const Shape& S) {
  if (S.m() % 2 != 0) throw Error(ErrorCode::BadShape, "Hamiltonian constructions need an even number of variables");
}

void require_contact(const Shape& S) {
  if (S.m() < 3 || S.m() % 2 == 0)
    throw Error(ErrorCode::BadShape, "contact constructions need an odd number of variables, at least 3");
}

// Per-degree images of a family of homogeneous W-vectors.
std::map<int, Subspace> graded_span(const LieAlgebra& alg, const std::vector<Vector>& vectors) {
  std::map<int, EchelonBuilder> builders;
  for (const auto& v : vectors) {
    const auto d = alg.homogeneous_degree(v);
    if (!d) {
      if (is_zero(v)) continue;
      throw Error(ErrorCode::InvalidArgument, "expected a homogeneous vector");
    }
    builders.try_emplace(*d, alg.field(), alg.block(*d).size()).first->second.insert(alg.to_local(*d, v));
  }
  std::map<int, Subspace> out;
  for (const auto& [d, eb] : builders) out.emplace(d, eb.finish());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// S

SpecialFamily build_S(const Shape& shape, std::size_t dim_cap) {
  if (shape.m() < 2) throw Error(ErrorCode::BadShape, "type S needs m >= 2");
  WAlgebra w = WAlgebra::make(shape, dim_cap);
  const LieAlgebra& L = w.lie();
  const Field& F = shape.field();
  std::map<int, Subspace> s_comps, cs_comps;
  for (int d = L.min_degree(); d <= L.max_degree(); ++d) {
    const auto& block = L.block(d);
    if (block.empty()) continue;
    // div on this block: column i is div of the i-th basis derivation
    Matrix div(F, shape.dim(), block.size());
    for (std::size_t i = 0; i < block.size(); ++i) {
      Vector e(w.dim());
      e[block[i]] = F.one();
      const DPoly dv = divergence(w.from_vector(e));
      for (const Term& t : dv.terms()) div(t.index, i) = t.coeff;
    }
    s_comps.emplace(d, kernel(div));
    cs_comps.emplace(d, d == 0 ? Subspace::full(F, block.size()) : kernel(div));
  }
  auto s = SubalgebraHandle::graded(w.lie_ptr(), Label::S, std::move(s_comps));
  auto cs = SubalgebraHandle::graded(w.lie_ptr(), Label::CS, std::move(cs_comps));
  auto s1 = derived_subalgebra(s, Label::S1);
  if (s.dim() - s1.dim() != shape.m())
    throw Error(ErrorCode::LemmaViolation, "codim of S1 in S" + shape_suffix(shape) + " is " +
                                                std::to_string(s.dim() - s1.dim()));
  if (shape.is_ones() && cs.dim() - s1.dim() != shape.m() + 1)
    throw Error(ErrorCode::LemmaViolation, "codim of S1 in CS" + shape_suffix(shape) + " is " +
                                                std::to_string(cs.dim() - s1.dim()));
  return {std::move(w), std::move(s), std::move(s1), std::move(cs)};
}

// ---------------------------------------------------------------------------
// H

DPoly poisson_bracket(const DPoly& f, const DPoly& g) {
  require_even(f.shape());
  if (!(f.shape() == g.shape())) throw Error(ErrorCode::ShapeMismatch, "Poisson bracket of different shapes");
  const HamiltonianIndexing idx{f.shape().m() / 2};
  DPoly acc(f.shape());
  for (unsigned j = 0; j < 2 * idx.r; ++j) {
    const DPoly term = dp_partial(f, j) * dp_partial(g, idx.prime(j));
    acc = idx.sign(j) > 0 ? acc + term : acc - term;
  }
  return acc;
}

Deriv d_H_map(const DPoly& f) {
  require_even(f.shape());
  const HamiltonianIndexing idx{f.shape().m() / 2};
  std::vector<DPoly> c(f.shape().m(), DPoly(f.shape()));
  for (unsigned j = 0; j < 2 * idx.r; ++j) {
    const DPoly df = dp_partial(f, j);
    c[idx.prime(j)] = idx.sign(j) > 0 ? df : -df;
  }
  return Deriv(f.shape(), std::move(c));
}

HamiltonianFamily build_H(const Shape& shape, std::size_t dim_cap) {
  require_even(shape);
  WAlgebra w = WAlgebra::make(shape, dim_cap);
  const Field& F = shape.field();
  std::vector<Vector> images;
  for (std::uint32_t a = 0; a < shape.dim(); ++a) images.push_back(w.to_vector(d_H_map(DPoly::basis(shape, a, F.one()))));
  auto h = SubalgebraHandle::graded(w.lie_ptr(), Label::H, graded_span(w.lie(), images));
  const std::size_t q = shape.dim();
  if (h.dim() != q - 1)
    throw Error(ErrorCode::LemmaViolation, "dim H" + shape_suffix(shape) + " is " + std::to_string(h.dim()));
  auto h2 = derived_subalgebra(derived_subalgebra(h, Label::Generated), Label::H2);
  if (h2.dim() != q - 2)
    throw Error(ErrorCode::LemmaViolation, "dim H2" + shape_suffix(shape) + " is " + std::to_string(h2.dim()));
  return {std::move(w), std::move(h), std::move(h2)};
}

// ---------------------------------------------------------------------------
// K

int k_degree(const Shape& shape, std::uint32_t index) {
  require_contact(shape);
  const unsigned last = shape.m() - 1;
  return static_cast<int>(shape.degree(index) + shape.component(index, last)) - 2;
}

std::map<int, DPoly> k_grade_split(const DPoly& f) {
  require_contact(f.shape());
  std::map<int, std::vector<Term>> parts;
  for (const Term& t : f.terms()) parts[k_degree(f.shape(), t.index)].push_back(t);
  std::map<int, DPoly> out;
  for (auto& [d, ts] : parts) out.emplace(d, DPoly::from_terms(f.shape(), std::move(ts)));
  return out;
}

Deriv d_K_map(const DPoly& f) {
  const Shape& S = f.shape();
  require_contact(S);
  const HamiltonianIndexing idx{(S.m() - 1) / 2};
  const unsigned last = S.m() - 1;
  const DPoly d_last = dp_partial(f, last);
  std::vector<DPoly> c(S.m(), DPoly(S));
  DPoly euler(S);
  for (unsigned j = 0; j < 2 * idx.r; ++j) {
    const DPoly dj = dp_partial(f, j);
    const DPoly sj = idx.sign(j) > 0 ? dj : -dj;
    c[idx.prime(j)] = sj + DPoly::variable(S, idx.prime(j)) * d_last;
    euler = euler + DPoly::variable(S, j) * dj;
  }
  c[last] = scale(f, S.field().from_int(2)) - euler;
  return Deriv(S, std::move(c));
}

DPoly contact_bracket(const DPoly& f, const DPoly& g) {
  if (!(f.shape() == g.shape())) throw Error(ErrorCode::ShapeMismatch, "contact bracket of different shapes");
  const unsigned last = f.shape().m() - 1;
  return d_apply(d_K_map(f), g) - scale(g * dp_partial(f, last), f.field().from_int(2));
}

Matrix contact_ad_matrix(const DPoly& f) {
  const Shape& S = f.shape();
  Matrix m(S.field(), S.dim(), S.dim());
  const Deriv dk = d_K_map(f);
  const DPoly twice_dlast = scale(dp_partial(f, S.m() - 1), S.field().from_int(2));
  for (std::uint32_t j = 0; j < S.dim(); ++j) {
    const DPoly g = DPoly::basis(S, j, S.field().one());
    const DPoly image = d_apply(dk, g) - g * twice_dlast;
    for (const Term& t : image.terms()) m(t.index, j) = t.coeff;
  }
  return m;
}

ContactAlgebra ContactAlgebra::make(const Shape& shape, std::size_t dim_cap) {
  require_contact(shape);
  if (shape.dim() > dim_cap) {
    throw Error(ErrorCode::BoundExceeded,
                "dim K = " + std::to_string(shape.dim()) + " exceeds cap " + std::to_string(dim_cap));
  }
  std::vector<int> degrees(shape.dim());
  for (std::uint32_t i = 0; i < shape.dim(); ++i) degrees[i] = k_degree(shape, i);
  const Field& F = shape.field();
  std::vector<DPoly> basis;
  for (std::uint32_t i = 0; i < shape.dim(); ++i) basis.push_back(DPoly::basis(shape, i, F.one()));
  std::vector<Deriv> dk;
  for (const auto& b : basis) dk.push_back(d_K_map(b));
  const unsigned last = shape.m() - 1;
  auto bracket = [&](std::uint32_t i, std::uint32_t j) {
    const DPoly v = d_apply(dk[i], basis[j]) - scale(basis[j] * dp_partial(basis[i], last), F.from_int(2));
    SparseVector out;
    for (const Term& t : v.terms()) out.push_back({t.index, t.coeff});
    return out;
  };
  auto lie = std::make_shared<const LieAlgebra>(F, "K" + shape_suffix(shape), std::move(degrees), bracket);
  return ContactAlgebra(shape, std::move(lie));
}

Vector ContactAlgebra::to_vector(const DPoly& f) const {
  if (!(f.shape() == shape_)) throw Error(ErrorCode::ShapeMismatch, "element outside the contact algebra");
  return f.dense();
}

DPoly ContactAlgebra::from_vector(const Vector& v) const { return DPoly::from_dense(shape_, v); }

ContactFamily build_K(const Shape& shape, std::size_t dim_cap) {
  ContactAlgebra algebra = ContactAlgebra::make(shape, dim_cap);
  const Field& F = shape.field();
  // D_K must be injective for the identification of O with K to hold.
  const std::size_t wdim = std::size_t{shape.m()} * shape.dim();
  std::vector<Vector> images;
  for (std::uint32_t i = 0; i < shape.dim(); ++i) {
    const Deriv d = d_K_map(DPoly::basis(shape, i, F.one()));
    Vector v(wdim);
    for (unsigned k = 0; k < shape.m(); ++k)
      for (const Term& t : d.coeff(k).terms()) v[std::size_t{t.index} * shape.m() + k] = t.coeff;
    images.push_back(std::move(v));
  }
  const std::size_t rank = Subspace::span(F, wdim, images).dim();
  if (rank != shape.dim())
    throw Error(ErrorCode::LemmaViolation, "D_K has rank " + std::to_string(rank) + " on K" + shape_suffix(shape));

  auto k = SubalgebraHandle::whole(algebra.lie_ptr(), Label::K);
  auto k1 = derived_subalgebra(k, Label::K1);
  const std::size_t expected = (shape.m() + 3) % shape.p() == 0 ? 1 : 0;
  if (k.dim() - k1.dim() != expected)
    throw Error(ErrorCode::LemmaViolation, "codim of K1 in K" + shape_suffix(shape) + " is " +
                                                std::to_string(k.dim() - k1.dim()));
  return {std::move(algebra), std::move(k), std::move(k1), expected};
}

}  // namespace cartanlie
