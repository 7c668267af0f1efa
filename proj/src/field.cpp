#include "cartanlie/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace cartanlie {

namespace {

using PolyP = std::vector<std::uint32_t>;  // over F_p, low to high

void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p prime, a != 0: Fermat
  std::uint64_t result = 1, base = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

PolyP poly_mod(PolyP a, const PolyP& g, std::uint32_t p) {
  trim(a);
  const std::size_t dg = g.size() - 1;
  const std::uint64_t lead_inv = inv_mod(g.back(), p);
  while (a.size() > dg) {
    const std::size_t shift = a.size() - 1 - dg;
    const std::uint64_t c = a.back() * lead_inv % p;
    for (std::size_t i = 0; i <= dg; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * g[i]) % p);
    }
    trim(a);
  }
  return a;
}

PolyP poly_mulmod(const PolyP& a, const PolyP& b, const PolyP& g, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PolyP prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(prod), g, p);
}

PolyP poly_powmod(PolyP base, std::uint64_t e, const PolyP& g, std::uint32_t p) {
  PolyP result{1};
  base = poly_mod(std::move(base), g, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, g, p);
    base = poly_mulmod(base, base, g, p);
    e >>= 1;
  }
  return result;
}

PolyP poly_gcd(PolyP a, PolyP b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyP r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Rabin's test: g monic of degree k is irreducible iff t^{p^k} = t mod g and
// gcd(t^{p^{k/l}} - t, g) = 1 for every prime l dividing k.
bool is_irreducible(const PolyP& g, std::uint32_t p) {
  const std::size_t k = g.size() - 1;
  if (k == 1) return true;
  std::vector<PolyP> frob(k + 1);
  frob[0] = PolyP{0, 1};
  for (std::size_t j = 1; j <= k; ++j) frob[j] = poly_powmod(frob[j - 1], p, g, p);
  PolyP t = poly_mod(PolyP{0, 1}, g, p);
  PolyP top = frob[k];
  trim(top);
  if (top != t) return false;
  for (std::uint64_t l : prime_factors(k)) {
    PolyP h = frob[k / l];
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    PolyP d = poly_gcd(h, g, p);
    if (d.size() != 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct Field::Impl {
  std::vector<std::uint32_t> modulus;
  std::vector<std::uint64_t> powers;  // p^i, i = 0..k
  bool tables = false;
  std::vector<std::uint32_t> exp;  // length 2(q-1)
  std::vector<std::uint32_t> log;  // length q

  std::uint32_t p = 0;
  unsigned k = 0;

  void decode(std::uint64_t code, std::uint32_t* d) const {
    for (unsigned i = 0; i < k; ++i) {
      d[i] = static_cast<std::uint32_t>(code % p);
      code /= p;
    }
  }
  std::uint64_t encode(const std::uint32_t* d) const {
    std::uint64_t code = 0;
    for (unsigned i = k; i-- > 0;) code = code * p + d[i];
    return code;
  }
  std::uint64_t slow_mul(std::uint64_t a, std::uint64_t b) const {
    std::uint32_t da[64], db[64];
    std::uint64_t prod[128] = {};
    decode(a, da);
    decode(b, db);
    if (p < (1u << 16)) {
      // partial sums stay below 2^38 so reduction can wait
      for (unsigned i = 0; i < k; ++i) {
        if (!da[i]) continue;
        for (unsigned j = 0; j < k; ++j) prod[i + j] += std::uint64_t{da[i]} * db[j];
      }
      for (unsigned deg = 2 * k - 2; deg >= k; --deg) {
        const std::uint64_t c = prod[deg] % p;
        if (c == 0) continue;
        for (unsigned i = 0; i < k; ++i) prod[deg - k + i] += (p - c) * modulus[i];
      }
      std::uint32_t out[64];
      for (unsigned i = 0; i < k; ++i) out[i] = static_cast<std::uint32_t>(prod[i] % p);
      return encode(out);
    }
    for (unsigned i = 0; i < k; ++i) {
      if (!da[i]) continue;
      for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p;
    }
    for (unsigned deg = 2 * k - 2; deg >= k; --deg) {
      const std::uint64_t c = prod[deg];
      if (c == 0) continue;
      prod[deg] = 0;
      for (unsigned i = 0; i < k; ++i) prod[deg - k + i] = (prod[deg - k + i] + (p - c) * modulus[i]) % p;
    }
    std::uint32_t out[64];
    for (unsigned i = 0; i < k; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return encode(out);
  }
  std::uint64_t slow_pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t result = 1;
    while (e) {
      if (e & 1) result = slow_mul(result, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return result;
  }
};

Field Field::make(std::uint32_t p, unsigned k, std::uint64_t bound) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (p <= 3) throw Error(ErrorCode::CharTooSmall, "characteristic must exceed 3, got " + std::to_string(p));
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
  if (k > 64 || p >= (1u << 31)) throw Error(ErrorCode::BoundExceeded, "field too large");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (q > kMaxFieldOrder / p) throw Error(ErrorCode::BoundExceeded, "p^k overflows");
    q *= p;
  }
  if (q > bound) {
    throw Error(ErrorCode::BoundExceeded,
                std::to_string(p) + "^" + std::to_string(k) + " exceeds bound " + std::to_string(bound));
  }

  static std::mutex cache_mutex;
  static std::map<std::pair<std::uint32_t, unsigned>, std::shared_ptr<const Impl>> cache;

  Field f;
  f.p_ = p;
  f.k_ = k;
  f.q_ = q;
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find({p, k}); it != cache.end()) {
      f.impl_ = it->second;
      return f;
    }
  }

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->k = k;
  impl->powers.resize(k + 1);
  impl->powers[0] = 1;
  for (unsigned i = 1; i <= k; ++i) impl->powers[i] = impl->powers[i - 1] * p;

  if (k == 1) {
    impl->modulus = {0, 1};
  } else {
    // Smallest code first: lower coefficients as base-p digits.
    for (std::uint64_t code = 0; code < q; ++code) {
      PolyP g(k + 1);
      std::uint64_t c = code;
      for (unsigned i = 0; i < k; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[k] = 1;
      if (g[0] == 0) continue;  // divisible by t
      if (is_irreducible(g, p)) {
        impl->modulus = std::move(g);
        break;
      }
    }
    if (q <= kTableBound) {
      const std::uint64_t n = q - 1;
      const auto factors = prime_factors(n);
      std::uint64_t gen = 0;
      for (std::uint64_t cand = 2; cand < q; ++cand) {
        bool primitive = true;
        for (auto l : factors) {
          if (impl->slow_pow(cand, n / l) == 1) {
            primitive = false;
            break;
          }
        }
        if (primitive) {
          gen = cand;
          break;
        }
      }
      impl->exp.resize(2 * n);
      impl->log.assign(q, 0);
      std::uint64_t x = 1;
      for (std::uint64_t i = 0; i < n; ++i) {
        impl->exp[i] = impl->exp[i + n] = static_cast<std::uint32_t>(x);
        impl->log[x] = static_cast<std::uint32_t>(i);
        x = impl->slow_mul(x, gen);
      }
      impl->tables = true;
    }
  }

  std::lock_guard lock(cache_mutex);
  auto [it, inserted] = cache.emplace(std::make_pair(p, k), std::move(impl));
  f.impl_ = it->second;
  return f;
}

const std::vector<std::uint32_t>& Field::modulus() const { return impl_->modulus; }

Scalar Field::from_int(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint64_t>(r)};
}

Scalar Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > k_) throw Error(ErrorCode::InvalidArgument, "too many coefficients for " + describe());
  std::uint64_t code = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) code = code * p_ + coeffs[i] % p_;
  return {code};
}

std::vector<std::uint32_t> Field::coeffs(Scalar a) const {
  std::vector<std::uint32_t> out(k_);
  impl_->decode(a.code, out.data());
  return out;
}

Scalar Field::element(std::uint64_t index) const {
  if (index >= q_) throw Error(ErrorCode::IndexOutOfRange, "element index beyond field order");
  return {index};
}

Scalar Field::add_ext(Scalar a, Scalar b) const noexcept {
  std::uint64_t x = a.code, y = b.code, r = 0;
  for (unsigned i = 0; i < k_; ++i) {
    std::uint64_t s = x % p_ + y % p_;
    if (s >= p_) s -= p_;
    r += s * impl_->powers[i];
    x /= p_;
    y /= p_;
  }
  return {r};
}

Scalar Field::neg_ext(Scalar a) const noexcept {
  std::uint64_t x = a.code, r = 0;
  for (unsigned i = 0; i < k_; ++i) {
    const std::uint64_t d = x % p_;
    r += (d == 0 ? 0 : p_ - d) * impl_->powers[i];
    x /= p_;
  }
  return {r};
}

Scalar Field::mul_ext(Scalar a, Scalar b) const noexcept {
  if (a.code == 0 || b.code == 0) return {0};
  if (impl_->tables) return {impl_->exp[std::uint64_t{impl_->log[a.code]} + impl_->log[b.code]]};
  return {impl_->slow_mul(a.code, b.code)};
}

Scalar Field::inv(Scalar a) const {
  if (a.code == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + describe());
  if (k_ == 1) return {inv_mod(static_cast<std::uint32_t>(a.code), p_)};
  if (impl_->tables) return {impl_->exp[(q_ - 1 - impl_->log[a.code]) % (q_ - 1)]};
  return {impl_->slow_pow(a.code, q_ - 2)};
}

Scalar Field::pow(Scalar a, std::uint64_t e) const noexcept {
  Scalar result = one();
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Scalar Field::embed(const Field& from, Scalar a) const {
  if (from == *this) return a;
  if (from.p_ == p_ && from.k_ == 1) return a;
  throw Error(ErrorCode::FieldMismatch, "cannot embed " + from.describe() + " into " + describe());
}

std::string Field::format(Scalar a) const {
  if (a.code < p_) return std::to_string(a.code);
  auto c = coeffs(a);
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (unsigned i = k_; i-- > 0;) {
    if (c[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << c[i];
    } else {
      if (c[i] != 1) os << c[i] << '*';
      os << 't';
      if (i > 1) os << '^' << i;
    }
  }
  os << ']';
  return os.str();
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << q_;
  if (k_ > 1) {
    os << " (";
    bool first = true;
    for (unsigned i = k_ + 1; i-- > 0;) {
      const auto c = impl_->modulus[i];
      if (c == 0) continue;
      if (!first) os << '+';
      first = false;
      if (i == 0) {
        os << c;
      } else {
        if (c != 1) os << c << '*';
        os << 't';
        if (i > 1) os << '^' << i;
      }
    }
    os << ')';
  }
  return os.str();
}

bool operator==(const Field& a, const Field& b) noexcept {
  if (a.impl_ == b.impl_) return true;
  if (!a.impl_ || !b.impl_) return false;
  return a.p_ == b.p_ && a.k_ == b.k_ && a.impl_->modulus == b.impl_->modulus;
}

Scalar field_arithmetic(const Field& field, Scalar a, Scalar b, FieldOp op) {
  if (!field.contains(a) || !field.contains(b)) {
    throw Error(ErrorCode::FieldMismatch, "operand outside " + field.describe());
  }
  switch (op) {
    case FieldOp::Add: return field.add(a, b);
    case FieldOp::Sub: return field.sub(a, b);
    case FieldOp::Mul: return field.mul(a, b);
    case FieldOp::Div: return field.div(a, b);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(Field field, std::vector<Scalar> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  trim();
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::monomial(const Field& field, std::size_t degree, Scalar c) {
  std::vector<Scalar> v(degree + 1);
  v[degree] = c;
  return Poly(field, std::move(v));
}

Poly Poly::from_roots(const Field& field, std::span<const Scalar> roots) {
  Poly result(field, {field.one()});
  for (Scalar r : roots) result = result * Poly(field, {field.neg(r), field.one()});
  return result;
}

Scalar Poly::eval(Scalar x) const {
  Scalar acc = field_.zero();
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = field_.mul_add(acc, x, coeffs_[i]);
  return acc;
}

std::string Poly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const bool unit = coeffs_[i] == field_.one();
    if (i == 0 || !unit) os << field_.format(coeffs_[i]);
    if (i > 0) {
      if (!unit) os << '*';
      os << 't';
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

namespace {
void require_same(const Poly& a, const Poly& b) {
  if (!(a.field() == b.field())) throw Error(ErrorCode::FieldMismatch, "polynomials over different fields");
}
}  // namespace

Poly operator+(const Poly& a, const Poly& b) {
  require_same(a, b);
  const auto& F = a.field();
  std::vector<Scalar> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.add(a.coeff(i), b.coeff(i));
  return Poly(F, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  require_same(a, b);
  const auto& F = a.field();
  std::vector<Scalar> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a.coeff(i), b.coeff(i));
  return Poly(F, std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same(a, b);
  const auto& F = a.field();
  if (a.is_zero() || b.is_zero()) return Poly(F);
  std::vector<Scalar> c(a.coeffs().size() + b.coeffs().size() - 1);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] = F.mul_add(a.coeffs()[i], b.coeffs()[j], c[i + j]);
  return Poly(F, std::move(c));
}

Poly lift(const Poly& f, const Field& to) {
  std::vector<Scalar> c;
  c.reserve(f.coeffs().size());
  for (Scalar s : f.coeffs()) c.push_back(to.embed(f.field(), s));
  return Poly(to, std::move(c));
}

Poly divide_linear(const Poly& f, Scalar r, Scalar& rem) {
  const auto& F = f.field();
  if (f.is_zero()) {
    rem = F.zero();
    return Poly(F);
  }
  const auto& c = f.coeffs();
  std::vector<Scalar> q(c.size() - 1);
  Scalar acc = F.zero();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = F.mul_add(acc, r, c[i]);
    if (i > 0) q[i - 1] = acc;
  }
  rem = acc;
  return Poly(F, std::move(q));
}

bool has_p_polynomial_support(const Poly& f) noexcept {
  const std::uint64_t p = f.field().characteristic();
  std::uint64_t next = 1;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i == next) {
      next *= p;
      continue;
    }
    if (!f.coeffs()[i].is_zero()) return false;
  }
  return true;
}

namespace {

// Kernel over F_p of the linear map x -> f(x) on F_q = F_p^k; f additive.
std::vector<std::vector<std::uint32_t>> additive_kernel(const Poly& f, const Field& F) {
  const unsigned k = F.degree();
  const std::uint32_t p = F.characteristic();
  // columns: coordinates of f(t^i)
  std::vector<std::vector<std::uint32_t>> m(k, std::vector<std::uint32_t>(k));
  std::uint64_t basis_code = 1;
  for (unsigned i = 0; i < k; ++i) {
    auto img = F.coeffs(f.eval(Scalar{basis_code}));
    for (unsigned r = 0; r < k; ++r) m[r][i] = img[r];
    basis_code *= p;
  }
  std::vector<int> pivot_of_col(k, -1);
  unsigned rank = 0;
  for (unsigned col = 0; col < k && rank < k; ++col) {
    unsigned piv = rank;
    while (piv < k && m[piv][col] == 0) ++piv;
    if (piv == k) continue;
    std::swap(m[piv], m[rank]);
    const std::uint64_t inv = inv_mod(m[rank][col], p);
    for (auto& x : m[rank]) x = static_cast<std::uint32_t>(x * inv % p);
    for (unsigned r = 0; r < k; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const std::uint64_t c = m[r][col];
      for (unsigned j = 0; j < k; ++j) m[r][j] = static_cast<std::uint32_t>((m[r][j] + (p - c) * m[rank][j]) % p);
    }
    pivot_of_col[col] = static_cast<int>(rank);
    ++rank;
  }
  std::vector<std::vector<std::uint32_t>> kernel;
  for (unsigned free = 0; free < k; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    std::vector<std::uint32_t> v(k, 0);
    v[free] = 1;
    for (unsigned col = 0; col < k; ++col) {
      if (pivot_of_col[col] < 0) continue;
      const auto c = m[pivot_of_col[col]][free];
      v[col] = c == 0 ? 0 : p - c;
    }
    kernel.push_back(std::move(v));
  }
  return kernel;
}

}  // namespace

RootSet poly_roots(const Poly& f, const Field& search_field, std::uint64_t exhaustive_limit) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "poly_roots of the zero polynomial");
  const Poly g = lift(f, search_field);
  const Field& F = search_field;
  std::vector<Scalar> candidates;
  const bool additive = has_p_polynomial_support(g);
  if (F.order() <= exhaustive_limit && (F.is_prime_field() || !additive)) {
    for (std::uint64_t i = 0; i < F.order(); ++i) {
      if (g.eval(Scalar{i}).is_zero()) candidates.push_back(Scalar{i});
    }
  } else if (additive) {
    const auto kernel = additive_kernel(g, F);
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < kernel.size(); ++i) {
      if (count > exhaustive_limit / F.characteristic())
        throw Error(ErrorCode::BoundExceeded, "root space too large to enumerate");
      count *= F.characteristic();
    }
    std::vector<Scalar> basis;
    for (const auto& v : kernel) basis.push_back(F.from_coeffs(v));
    candidates.push_back(F.zero());
    for (Scalar b : basis) {
      const std::size_t n = candidates.size();
      for (std::uint32_t c = 1; c < F.characteristic(); ++c) {
        const Scalar cb = F.mul(F.from_int(c), b);
        for (std::size_t i = 0; i < n; ++i) candidates.push_back(F.add(candidates[i], cb));
      }
    }
    std::sort(candidates.begin(), candidates.end());
  } else {
    throw Error(ErrorCode::BoundExceeded, "exhaustive root search over " + F.describe() + " exceeds limit");
  }

  RootSet out;
  unsigned total = 0;
  for (Scalar r : candidates) {
    Poly rest = g;
    unsigned mult = 0;
    for (;;) {
      Scalar rem;
      Poly q = divide_linear(rest, r, rem);
      if (!rem.is_zero()) break;
      ++mult;
      rest = std::move(q);
    }
    out.roots.push_back({r, mult});
    total += mult;
  }
  out.splits = static_cast<long>(total) == g.degree();
  return out;
}

std::optional<unsigned> splitting_degree(const Poly& f, unsigned max_degree) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "splitting_degree of the zero polynomial");
  if (!f.field().is_prime_field()) throw Error(ErrorCode::FieldMismatch, "splitting_degree expects a prime-field polynomial");
  const std::uint32_t p = f.field().characteristic();
  const bool additive = has_p_polynomial_support(f);
  std::uint64_t q = 1;
  for (unsigned k = 1; k <= max_degree; ++k) {
    if (q > kMaxFieldOrder / p) break;
    q *= p;
    if (!additive && q > kTableBound) break;
    const Field F = Field::make(p, k, kMaxFieldOrder);
    if (poly_roots(f, F).splits) return k;
  }
  return std::nullopt;
}

}  // namespace cartanlie
