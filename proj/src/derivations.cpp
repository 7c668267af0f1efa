#include "cartanlie/derivations.hpp"

#include <sstream>

#include "parse.hpp"

namespace cartanlie {

namespace {

void require_same(const Shape& a, const Shape& b) {
  if (!(a == b)) throw Error(ErrorCode::ShapeMismatch, a.describe() + " vs " + b.describe());
}

}  // namespace

Deriv::Deriv(const Shape& shape) : coeffs_(shape.m(), DPoly(shape)) {}

Deriv::Deriv(const Shape& shape, std::vector<DPoly> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != shape.m()) throw Error(ErrorCode::ShapeMismatch, "need one coefficient per variable");
  for (const auto& c : coeffs_) require_same(c.shape(), shape);
}

Deriv Deriv::partial(const Shape& shape, unsigned k) {
  return basis(shape, 0, k, shape.field().one());
}

Deriv Deriv::basis(const Shape& shape, std::uint32_t alpha, unsigned k, Scalar c) {
  if (k >= shape.m()) throw Error(ErrorCode::BadIndex, "derivation index out of range");
  Deriv d(shape);
  d.coeffs_[k] = DPoly::basis(shape, alpha, c);
  return d;
}

bool Deriv::is_zero() const noexcept {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

std::string Deriv::to_string() const {
  std::ostringstream os;
  const Field& F = field();
  const Shape& S = shape();
  bool first = true;
  for (unsigned k = 0; k < m(); ++k) {
    for (const Term& t : coeffs_[k].terms()) {
      if (!first) os << " + ";
      first = false;
      if (t.coeff != F.one()) os << F.format(t.coeff) << '*';
      if (t.index != 0) {
        os << "x[";
        for (unsigned i = 0; i < S.m(); ++i) os << (i ? "," : "") << S.component(t.index, i);
        os << "]*";
      }
      os << 'd' << (k + 1);
    }
  }
  return first ? "0" : os.str();
}

Deriv operator+(const Deriv& a, const Deriv& b) {
  require_same(a.shape(), b.shape());
  std::vector<DPoly> c;
  for (unsigned k = 0; k < a.m(); ++k) c.push_back(a.coeff(k) + b.coeff(k));
  return Deriv(a.shape(), std::move(c));
}

Deriv operator-(const Deriv& a) {
  std::vector<DPoly> c;
  for (unsigned k = 0; k < a.m(); ++k) c.push_back(-a.coeff(k));
  return Deriv(a.shape(), std::move(c));
}

Deriv operator-(const Deriv& a, const Deriv& b) { return a + (-b); }

Deriv scale(const Deriv& a, Scalar s) {
  std::vector<DPoly> c;
  for (unsigned k = 0; k < a.m(); ++k) c.push_back(scale(a.coeff(k), s));
  return Deriv(a.shape(), std::move(c));
}

DPoly d_apply(const Deriv& d, const DPoly& f) {
  require_same(d.shape(), f.shape());
  DPoly acc(f.shape());
  for (unsigned k = 0; k < d.m(); ++k) {
    if (!d.coeff(k).is_zero()) acc = acc + d.coeff(k) * dp_partial(f, k);
  }
  return acc;
}

Deriv d_bracket(const Deriv& d, const Deriv& e) {
  require_same(d.shape(), e.shape());
  std::vector<DPoly> c;
  for (unsigned k = 0; k < d.m(); ++k) c.push_back(d_apply(d, e.coeff(k)) - d_apply(e, d.coeff(k)));
  return Deriv(d.shape(), std::move(c));
}

Deriv d_module_mul(const DPoly& f, const Deriv& d) {
  require_same(d.shape(), f.shape());
  std::vector<DPoly> c;
  for (unsigned k = 0; k < d.m(); ++k) c.push_back(f * d.coeff(k));
  return Deriv(d.shape(), std::move(c));
}

DPoly divergence(const Deriv& d) {
  DPoly acc(d.shape());
  for (unsigned k = 0; k < d.m(); ++k) acc = acc + dp_partial(d.coeff(k), k);
  return acc;
}

Matrix derivation_matrix(const Deriv& d) {
  const Shape& S = d.shape();
  const Field& F = S.field();
  Matrix m(F, S.dim(), S.dim());
  for (std::uint32_t j = 0; j < S.dim(); ++j) {
    for (unsigned k = 0; k < S.m(); ++k) {
      const auto lo = S.lower(j, k);
      if (!lo) continue;
      for (const Term& t : d.coeff(k).terms()) {
        std::uint32_t idx;
        Scalar c;
        if (S.multiply_index(t.index, *lo, idx, c)) m(idx, j) = F.mul_add(c, t.coeff, m(idx, j));
      }
    }
  }
  return m;
}

std::map<int, Deriv> grade_split(const Deriv& d) {
  std::map<int, Deriv> out;
  for (unsigned k = 0; k < d.m(); ++k) {
    for (const auto& [deg, part] : grade_split(d.coeff(k))) {
      auto it = out.try_emplace(deg - 1, d.shape()).first;
      it->second = it->second + d_module_mul(part, Deriv::partial(d.shape(), k));
    }
  }
  return out;
}

Deriv homogeneous_part(const Deriv& d, int degree) {
  std::vector<DPoly> c;
  for (unsigned k = 0; k < d.m(); ++k) c.push_back(homogeneous_part(d.coeff(k), degree + 1));
  return Deriv(d.shape(), std::move(c));
}

Deriv parse_deriv(const Shape& shape, std::string_view text) {
  detail::Cursor cur(text);
  Deriv acc(shape);
  bool negative = cur.accept('-');
  for (;;) {
    DPoly coeff = DPoly::constant(shape, shape.field().one());
    if (cur.peek() != 'd') {
      if (cur.accept('(')) {
        coeff = detail::parse_poly(cur, shape);
        cur.expect(')');
      } else {
        coeff = detail::parse_term(cur, shape);
      }
      cur.expect('*');
    }
    cur.expect('d');
    const auto k = cur.integer();
    if (k < 1 || k > shape.m()) cur.fail("derivation index out of range");
    const Deriv term = d_module_mul(coeff, Deriv::partial(shape, static_cast<unsigned>(k - 1)));
    acc = negative ? acc - term : acc + term;
    if (cur.accept('+')) {
      negative = cur.accept('-');
    } else if (cur.accept('-')) {
      negative = true;
    } else {
      break;
    }
  }
  if (!cur.at_end()) cur.fail("unexpected trailing text");
  return acc;
}

// ---------------------------------------------------------------------------
// W(m, n)

SparseVector w_structure_constants(const Shape& S, std::uint32_t i, std::uint32_t j) {
  const unsigned m = S.m();
  const std::uint32_t a = i / m, b = j / m;
  const unsigned k = i % m, l = j % m;
  const Field& F = S.field();
  SparseVector out;
  std::uint32_t idx;
  Scalar c;
  if (auto lb = S.lower(b, k); lb && S.multiply_index(a, *lb, idx, c)) out.push_back({idx * m + l, c});
  if (auto la = S.lower(a, l); la && S.multiply_index(b, *la, idx, c)) out.push_back({idx * m + k, F.neg(c)});
  return out;
}

WAlgebra WAlgebra::make(const Shape& shape, std::size_t dim_cap) {
  const std::size_t dim = static_cast<std::size_t>(shape.m()) * shape.dim();
  if (dim > dim_cap) {
    throw Error(ErrorCode::BoundExceeded, "dim W = " + std::to_string(dim) + " exceeds cap " + std::to_string(dim_cap));
  }
  std::vector<int> degrees(dim);
  for (std::uint32_t i = 0; i < dim; ++i) degrees[i] = static_cast<int>(shape.degree(i / shape.m())) - 1;
  std::ostringstream name;
  name << "W(" << shape.m() << ",(";
  for (unsigned i = 0; i < shape.m(); ++i) name << (i ? "," : "") << shape.n()[i];
  name << "))";
  auto lie = std::make_shared<const LieAlgebra>(
      shape.field(), name.str(), std::move(degrees),
      [&shape](std::uint32_t i, std::uint32_t j) { return w_structure_constants(shape, i, j); });
  return WAlgebra(shape, std::move(lie));
}

Vector WAlgebra::to_vector(const Deriv& d) const {
  require_same(d.shape(), shape_);
  Vector v(dim());
  for (unsigned k = 0; k < shape_.m(); ++k)
    for (const Term& t : d.coeff(k).terms()) v[flat(t.index, k)] = t.coeff;
  return v;
}

Deriv WAlgebra::from_vector(const Vector& v) const {
  if (v.size() != dim()) throw Error(ErrorCode::ShapeMismatch, "vector length differs from dim W");
  const unsigned m = shape_.m();
  std::vector<std::vector<Term>> terms(m);
  for (std::uint32_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) terms[i % m].push_back({i / m, v[i]});
  std::vector<DPoly> c;
  for (unsigned k = 0; k < m; ++k) c.push_back(DPoly::from_terms(shape_, std::move(terms[k])));
  return Deriv(shape_, std::move(c));
}

// ---------------------------------------------------------------------------
// sigma and iota

namespace {

Shape target_shape(const Shape& source) { return Shape::ones(source.field(), source.total_n()); }

}  // namespace

SigmaIso::SigmaIso(const Shape& source) : source_(source), target_(target_shape(source)) {
  const Field& F = source.field();
  const std::uint32_t p = F.characteristic();
  const unsigned m = source.m();
  unsigned off = 0;
  for (unsigned i = 0; i < m; ++i) {
    offset_.push_back(off);
    off += source.n()[i];
  }
  // generators x_i^{(p^j)}
  std::vector<std::vector<DPoly>> gens(m);
  for (unsigned i = 0; i < m; ++i) {
    std::uint32_t pj = 1;
    for (unsigned j = 0; j < source.n()[i]; ++j, pj *= p) {
      MultiIndex a(m, 0);
      a[i] = pj;
      gens[i].push_back(DPoly::monomial(source, a, F.one()));
    }
  }
  std::vector<Scalar> factorial(p, F.one());
  for (std::uint32_t a = 1; a < p; ++a) factorial[a] = F.mul(factorial[a - 1], F.from_int(a));

  const std::uint32_t dim = source.dim();
  image_index_.resize(dim);
  image_unit_.resize(dim);
  preimage_index_.resize(dim);
  preimage_unit_.resize(dim);
  for (std::uint32_t idx = 0; idx < dim; ++idx) {
    MultiIndex target_alpha(target_.m(), 0);
    DPoly product = DPoly::constant(source, F.one());
    Scalar factorials = F.one();
    for (unsigned i = 0; i < m; ++i) {
      std::uint32_t a = source.component(idx, i);
      for (unsigned j = 0; j < source.n()[i]; ++j, a /= p) {
        const std::uint32_t digit = a % p;
        target_alpha[offset_[i] + j] = digit;
        factorials = F.mul(factorials, factorial[digit]);
        for (std::uint32_t r = 0; r < digit; ++r) product = product * gens[i][j];
      }
    }
    // product of generator powers = c x^{(alpha)}
    const Scalar c = product.coeff(idx);
    if (c.is_zero() || product.terms().size() != 1)
      throw Error(ErrorCode::InvalidArgument, "generator powers do not reach a basis monomial");
    const std::uint32_t t = target_.index(target_alpha);
    image_index_[idx] = t;
    image_unit_[idx] = F.mul(F.inv(c), factorials);
    preimage_index_[t] = idx;
    preimage_unit_[t] = F.inv(image_unit_[idx]);
  }
}

unsigned SigmaIso::target_variable(unsigned i, unsigned j) const {
  if (i >= source_.m() || j >= source_.n()[i]) throw Error(ErrorCode::BadIndex, "no generator x_i^(p^j)");
  return offset_[i] + j;
}

DPoly SigmaIso::apply(const DPoly& f) const {
  require_same(f.shape(), source_);
  std::vector<Term> ts;
  for (const Term& t : f.terms())
    ts.push_back({image_index_[t.index], source_.field().mul(t.coeff, image_unit_[t.index])});
  return DPoly::from_terms(target_, std::move(ts));
}

DPoly SigmaIso::apply_inverse(const DPoly& f) const {
  require_same(f.shape(), target_);
  std::vector<Term> ts;
  for (const Term& t : f.terms())
    ts.push_back({preimage_index_[t.index], source_.field().mul(t.coeff, preimage_unit_[t.index])});
  return DPoly::from_terms(source_, std::move(ts));
}

Deriv SigmaIso::iota(const Deriv& d) const {
  require_same(d.shape(), source_);
  const Field& F = source_.field();
  std::vector<DPoly> c(target_.m(), DPoly(target_));
  for (unsigned i = 0; i < source_.m(); ++i) {
    std::uint32_t pj = 1;
    for (unsigned j = 0; j < source_.n()[i]; ++j, pj *= F.characteristic()) {
      MultiIndex a(source_.m(), 0);
      a[i] = pj;
      c[offset_[i] + j] = apply(d_apply(d, DPoly::monomial(source_, a, F.one())));
    }
  }
  return Deriv(target_, std::move(c));
}

}  // namespace cartanlie
