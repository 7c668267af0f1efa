#include "cartanlie/dpalgebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "parse.hpp"

namespace cartanlie {

namespace {

// Below this radix the per-variable binomial table is materialized.
constexpr std::uint32_t kBinomTableRadix = 1024;

std::uint32_t small_binom(std::uint32_t n, std::uint32_t k, std::uint32_t p) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t num = 1, den = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    num = num * ((n - i) % p) % p;
    den = den * ((i + 1) % p) % p;
  }
  // n < p here, so den is invertible
  std::uint64_t inv = 1, base = den, e = p - 2;
  while (e) {
    if (e & 1) inv = inv * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(num * inv % p);
}

}  // namespace

std::uint32_t binom_mod_p(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
  if (b > a) return 0;
  std::uint64_t result = 1;
  while (a || b) {
    const auto ad = static_cast<std::uint32_t>(a % p), bd = static_cast<std::uint32_t>(b % p);
    if (bd > ad) return 0;
    result = result * small_binom(ad, bd, p) % p;
    a /= p;
    b /= p;
  }
  return static_cast<std::uint32_t>(result);
}

Scalar binom_mod_p(std::span<const unsigned> a, std::span<const unsigned> b, std::uint32_t p) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "multi-index lengths differ");
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < a.size(); ++i) result = result * binom_mod_p(a[i], b[i], p) % p;
  return Scalar{result};
}

// ---------------------------------------------------------------------------
// Shape

struct Shape::Impl {
  Field field;
  std::vector<unsigned> n;
  std::vector<std::uint32_t> radix;   // p^{n_i}
  std::vector<std::uint32_t> stride;  // place value of variable i
  std::uint32_t dim = 1;
  unsigned total_n = 0;
  unsigned max_degree = 0;
  std::vector<std::uint32_t> comps;   // dim x m
  std::vector<std::uint32_t> degrees;
  // binom[i][a * radix + b] = C(a + b, a) mod p, zero once a + b leaves the box
  std::vector<std::vector<std::uint32_t>> binom;

  std::uint32_t coefficient(unsigned var, std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t r = radix[var];
    if (a + b >= r) return 0;
    if (!binom[var].empty()) return binom[var][a * r + b];
    return binom_mod_p(a + b, a, field.characteristic());
  }
};

Shape Shape::make(const Field& field, std::vector<unsigned> n) {
  if (n.empty()) throw Error(ErrorCode::BadShape, "a shape needs at least one variable");
  auto impl = std::make_shared<Impl>(Impl{field, std::move(n), {}, {}, 1, 0, 0, {}, {}, {}});
  const std::uint32_t p = field.characteristic();
  const unsigned m = static_cast<unsigned>(impl->n.size());
  std::uint64_t dim = 1;
  for (unsigned ni : impl->n) {
    if (ni == 0) throw Error(ErrorCode::BadShape, "entries of n must be positive");
    std::uint64_t r = 1;
    for (unsigned j = 0; j < ni; ++j) {
      r *= p;
      if (r > kMaxShapeDim) throw Error(ErrorCode::BoundExceeded, "O(m,n) too large");
    }
    dim *= r;
    if (dim > kMaxShapeDim) throw Error(ErrorCode::BoundExceeded, "O(m,n) too large");
    impl->radix.push_back(static_cast<std::uint32_t>(r));
    impl->total_n += ni;
    impl->max_degree += static_cast<unsigned>(r - 1);
  }
  impl->dim = static_cast<std::uint32_t>(dim);
  impl->stride.assign(m, 1);
  for (unsigned i = m - 1; i-- > 0;) impl->stride[i] = impl->stride[i + 1] * impl->radix[i + 1];

  impl->comps.resize(static_cast<std::size_t>(impl->dim) * m);
  impl->degrees.resize(impl->dim);
  for (std::uint32_t idx = 0; idx < impl->dim; ++idx) {
    std::uint32_t rest = idx, deg = 0;
    for (unsigned i = 0; i < m; ++i) {
      const std::uint32_t c = rest / impl->stride[i];
      rest %= impl->stride[i];
      impl->comps[static_cast<std::size_t>(idx) * m + i] = c;
      deg += c;
    }
    impl->degrees[idx] = deg;
  }

  impl->binom.resize(m);
  for (unsigned i = 0; i < m; ++i) {
    const std::uint32_t r = impl->radix[i];
    if (r > kBinomTableRadix) continue;
    auto& table = impl->binom[i];
    table.resize(static_cast<std::size_t>(r) * r);
    for (std::uint32_t a = 0; a < r; ++a) {
      for (std::uint32_t b = 0; b < r; ++b) {
        const std::uint32_t c = binom_mod_p(a + b, a, p);
        if (a + b >= r) {
          // Products leaving the box must already vanish by Kummer's theorem.
          if (c != 0) throw Error(ErrorCode::InvalidArgument, "divided power truncation is inconsistent");
          continue;
        }
        table[static_cast<std::size_t>(a) * r + b] = c;
      }
    }
  }
  Shape s;
  s.impl_ = std::move(impl);
  return s;
}

Shape Shape::ones(const Field& field, unsigned m) { return make(field, std::vector<unsigned>(m, 1)); }

const Field& Shape::field() const noexcept { return impl_->field; }
unsigned Shape::m() const noexcept { return static_cast<unsigned>(impl_->n.size()); }
const std::vector<unsigned>& Shape::n() const noexcept { return impl_->n; }
unsigned Shape::total_n() const noexcept { return impl_->total_n; }
std::uint32_t Shape::dim() const noexcept { return impl_->dim; }
unsigned Shape::max_degree() const noexcept { return impl_->max_degree; }

bool Shape::is_ones() const noexcept {
  return std::all_of(impl_->n.begin(), impl_->n.end(), [](unsigned v) { return v == 1; });
}

unsigned Shape::tau(unsigned i) const {
  if (i >= m()) throw Error(ErrorCode::BadIndex, "variable index out of range");
  return impl_->radix[i] - 1;
}

std::uint32_t Shape::index(std::span<const unsigned> alpha) const {
  if (alpha.size() != m()) throw Error(ErrorCode::IndexOutOfRange, "multi-index has wrong length");
  std::uint32_t idx = 0;
  for (unsigned i = 0; i < m(); ++i) {
    if (alpha[i] >= impl_->radix[i]) throw Error(ErrorCode::IndexOutOfRange, "exponent exceeds tau");
    idx += alpha[i] * impl_->stride[i];
  }
  return idx;
}

MultiIndex Shape::alpha(std::uint32_t index) const {
  const unsigned mm = m();
  const auto* c = impl_->comps.data() + static_cast<std::size_t>(index) * mm;
  return MultiIndex(c, c + mm);
}

unsigned Shape::component(std::uint32_t index, unsigned var) const noexcept {
  return impl_->comps[static_cast<std::size_t>(index) * m() + var];
}

unsigned Shape::degree(std::uint32_t index) const noexcept { return impl_->degrees[index]; }

std::optional<std::uint32_t> Shape::raise(std::uint32_t index, unsigned var) const noexcept {
  if (component(index, var) + 1 >= impl_->radix[var]) return std::nullopt;
  return index + impl_->stride[var];
}

std::optional<std::uint32_t> Shape::lower(std::uint32_t index, unsigned var) const noexcept {
  if (component(index, var) == 0) return std::nullopt;
  return index - impl_->stride[var];
}

bool Shape::multiply_index(std::uint32_t a, std::uint32_t b, std::uint32_t& out, Scalar& coeff) const noexcept {
  const unsigned mm = m();
  const std::uint32_t p = impl_->field.characteristic();
  const auto* ca = impl_->comps.data() + static_cast<std::size_t>(a) * mm;
  const auto* cb = impl_->comps.data() + static_cast<std::size_t>(b) * mm;
  std::uint64_t c = 1;
  for (unsigned i = 0; i < mm; ++i) {
    const std::uint32_t f = impl_->coefficient(i, ca[i], cb[i]);
    if (f == 0) return false;
    c = c * f % p;
  }
  out = a + b;
  coeff = Scalar{c};
  return true;
}

std::string Shape::describe() const {
  std::ostringstream os;
  os << "O(" << m() << ",(";
  for (unsigned i = 0; i < m(); ++i) os << (i ? "," : "") << impl_->n[i];
  os << ")) over " << field().describe();
  return os.str();
}

bool operator==(const Shape& a, const Shape& b) noexcept {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->field == b.impl_->field && a.impl_->n == b.impl_->n;
}

// ---------------------------------------------------------------------------
// DPoly

namespace {

void require_same(const Shape& a, const Shape& b) {
  if (!(a == b)) throw Error(ErrorCode::ShapeMismatch, a.describe() + " vs " + b.describe());
}

}  // namespace

DPoly DPoly::from_terms(const Shape& shape, std::vector<Term> terms) {
  const Field& F = shape.field();
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.index < y.index; });
  DPoly out(shape);
  for (const Term& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().index == t.index) {
      out.terms_.back().coeff = F.add(out.terms_.back().coeff, t.coeff);
    } else {
      out.terms_.push_back(t);
    }
  }
  std::erase_if(out.terms_, [](const Term& t) { return t.coeff.is_zero(); });
  return out;
}

DPoly DPoly::make(const Shape& shape, std::span<const std::pair<MultiIndex, Scalar>> terms) {
  std::vector<Term> ts;
  for (const auto& [alpha, c] : terms) {
    if (!shape.field().contains(c)) throw Error(ErrorCode::FieldMismatch, "coefficient outside the field");
    ts.push_back({shape.index(alpha), c});
  }
  return from_terms(shape, std::move(ts));
}

DPoly DPoly::monomial(const Shape& shape, std::span<const unsigned> alpha, Scalar c) {
  return basis(shape, shape.index(alpha), c);
}

DPoly DPoly::basis(const Shape& shape, std::uint32_t index, Scalar c) {
  if (index >= shape.dim()) throw Error(ErrorCode::IndexOutOfRange, "monomial index out of range");
  DPoly out(shape);
  if (!c.is_zero()) out.terms_.push_back({index, c});
  return out;
}

DPoly DPoly::constant(const Shape& shape, Scalar c) { return basis(shape, 0, c); }

DPoly DPoly::variable(const Shape& shape, unsigned var) {
  if (var >= shape.m()) throw Error(ErrorCode::BadIndex, "variable index out of range");
  MultiIndex a(shape.m(), 0);
  a[var] = 1;
  return monomial(shape, a, shape.field().one());
}

DPoly DPoly::from_dense(const Shape& shape, const Vector& v) {
  if (v.size() != shape.dim()) throw Error(ErrorCode::ShapeMismatch, "dense vector length differs from dim O");
  DPoly out(shape);
  for (std::uint32_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.terms_.push_back({i, v[i]});
  return out;
}

Scalar DPoly::coeff(std::uint32_t index) const noexcept {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                             [](const Term& t, std::uint32_t i) { return t.index < i; });
  return it != terms_.end() && it->index == index ? it->coeff : Scalar{};
}

Vector DPoly::dense() const {
  Vector v(shape_.dim());
  for (const Term& t : terms_) v[t.index] = t.coeff;
  return v;
}

int DPoly::min_degree() const noexcept {
  int best = -1;
  for (const Term& t : terms_) {
    const int d = static_cast<int>(shape_.degree(t.index));
    if (best < 0 || d < best) best = d;
  }
  return best;
}

std::string DPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  const Field& F = field();
  bool first = true;
  for (const Term& t : terms_) {
    if (!first) os << " + ";
    first = false;
    if (t.index == 0) {
      os << F.format(t.coeff);
      continue;
    }
    if (t.coeff != F.one()) os << F.format(t.coeff) << '*';
    os << "x[";
    for (unsigned i = 0; i < shape_.m(); ++i) os << (i ? "," : "") << shape_.component(t.index, i);
    os << ']';
  }
  return os.str();
}

DPoly operator+(const DPoly& a, const DPoly& b) {
  require_same(a.shape(), b.shape());
  std::vector<Term> ts = a.terms();
  ts.insert(ts.end(), b.terms().begin(), b.terms().end());
  return DPoly::from_terms(a.shape(), std::move(ts));
}

DPoly operator-(const DPoly& a) { return scale(a, a.field().neg(a.field().one())); }

DPoly operator-(const DPoly& a, const DPoly& b) { return a + (-b); }

DPoly scale(const DPoly& a, Scalar c) {
  std::vector<Term> ts;
  ts.reserve(a.terms().size());
  for (const Term& t : a.terms()) ts.push_back({t.index, a.field().mul(t.coeff, c)});
  return DPoly::from_terms(a.shape(), std::move(ts));
}

DPoly dp_multiply(const DPoly& f, const DPoly& g) {
  require_same(f.shape(), g.shape());
  const Shape& S = f.shape();
  const Field& F = S.field();
  std::vector<Term> ts;
  for (const Term& a : f.terms()) {
    for (const Term& b : g.terms()) {
      std::uint32_t idx;
      Scalar c;
      if (S.multiply_index(a.index, b.index, idx, c)) ts.push_back({idx, F.mul(c, F.mul(a.coeff, b.coeff))});
    }
  }
  return DPoly::from_terms(S, std::move(ts));
}

DPoly dp_partial(const DPoly& f, unsigned var) {
  const Shape& S = f.shape();
  if (var >= S.m()) throw Error(ErrorCode::BadIndex, "partial derivative index out of range");
  std::vector<Term> ts;
  for (const Term& t : f.terms()) {
    if (auto lo = S.lower(t.index, var)) ts.push_back({*lo, t.coeff});
  }
  return DPoly::from_terms(S, std::move(ts));
}

DPoly dp_power(const DPoly& f, unsigned e) {
  DPoly acc = DPoly::constant(f.shape(), f.field().one());
  for (unsigned i = 0; i < e; ++i) acc = dp_multiply(acc, f);
  return acc;
}

std::map<int, DPoly> grade_split(const DPoly& f) {
  std::map<int, std::vector<Term>> parts;
  for (const Term& t : f.terms()) parts[static_cast<int>(f.shape().degree(t.index))].push_back(t);
  std::map<int, DPoly> out;
  for (auto& [d, ts] : parts) out.emplace(d, DPoly::from_terms(f.shape(), std::move(ts)));
  return out;
}

DPoly homogeneous_part(const DPoly& f, int d) {
  std::vector<Term> ts;
  for (const Term& t : f.terms())
    if (static_cast<int>(f.shape().degree(t.index)) == d) ts.push_back(t);
  return DPoly::from_terms(f.shape(), std::move(ts));
}

DPoly dp_invert(const DPoly& f) {
  const Scalar c = f.constant_term();
  if (c.is_zero()) throw Error(ErrorCode::NotInvertible, "constant term is zero");
  const Field& F = f.field();
  const Scalar cinv = F.inv(c);
  // f = c (1 + n) with n nilpotent; 1/f = c^{-1} sum (-n)^j
  const DPoly one = DPoly::constant(f.shape(), F.one());
  const DPoly minus_n = one - scale(f, cinv);
  DPoly sum = one, power = one;
  for (;;) {
    power = dp_multiply(power, minus_n);
    if (power.is_zero()) break;
    sum = sum + power;
  }
  return scale(sum, cinv);
}

Matrix multiplication_matrix(const DPoly& f) {
  const Shape& S = f.shape();
  const Field& F = S.field();
  Matrix m(F, S.dim(), S.dim());
  for (std::uint32_t j = 0; j < S.dim(); ++j) {
    for (const Term& t : f.terms()) {
      std::uint32_t idx;
      Scalar c;
      if (S.multiply_index(t.index, j, idx, c)) m(idx, j) = F.mul_add(c, t.coeff, m(idx, j));
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

// term := scalar ['*'] monomial | scalar | monomial, with an optional sign
// already consumed by the caller.
DPoly parse_term(Cursor& cur, const Shape& shape) {
  const Field& F = shape.field();
  Scalar c = F.one();
  bool have_scalar = false;
  if (cur.at_digit() || cur.peek() == '[') {
    c = cur.scalar(F);
    have_scalar = true;
    if (cur.peek() == '*' && cur.peek_at(1) == 'x') cur.accept('*');
  }
  if (cur.peek() != 'x') {
    if (!have_scalar) cur.fail("expected a term");
    return DPoly::constant(shape, c);
  }
  cur.expect('x');
  cur.expect('[');
  MultiIndex alpha;
  do {
    alpha.push_back(static_cast<unsigned>(cur.integer()));
  } while (cur.accept(','));
  cur.expect(']');
  if (alpha.size() != shape.m()) cur.fail("monomial needs " + std::to_string(shape.m()) + " exponents");
  for (unsigned i = 0; i < shape.m(); ++i)
    if (alpha[i] > shape.tau(i)) cur.fail("exponent exceeds tau");
  return DPoly::monomial(shape, alpha, c);
}

}  // namespace detail

DPoly detail::parse_poly(Cursor& cur, const Shape& shape) {
  DPoly acc(shape);
  bool negative = cur.accept('-');
  for (;;) {
    DPoly t = parse_term(cur, shape);
    acc = negative ? acc - t : acc + t;
    if (cur.accept('+')) {
      negative = cur.accept('-');
    } else if (cur.accept('-')) {
      negative = true;
    } else {
      break;
    }
  }
  return acc;
}

DPoly parse_dpoly(const Shape& shape, std::string_view text) {
  detail::Cursor cur(text);
  DPoly acc = detail::parse_poly(cur, shape);
  if (!cur.at_end()) cur.fail("unexpected trailing text");
  return acc;
}

}  // namespace cartanlie
