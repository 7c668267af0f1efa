#include "cartanlie/linalg.hpp"

#include <algorithm>

#include "cartanlie/random.hpp"

namespace cartanlie {

namespace {

void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw Error(ErrorCode::FieldMismatch, a.describe() + " vs " + b.describe());
}

// dst += c * src over the whole span; prime-field fast path.
void row_axpy(const Field& F, std::span<Scalar> dst, Scalar c, std::span<const Scalar> src, std::size_t from = 0) {
  if (c.is_zero()) return;
  if (F.is_prime_field()) {
    const std::uint64_t p = F.characteristic();
    for (std::size_t j = from; j < dst.size(); ++j) {
      if (src[j].code) dst[j].code = (dst[j].code + c.code * src[j].code) % p;
    }
    return;
  }
  for (std::size_t j = from; j < dst.size(); ++j) {
    if (!src[j].is_zero()) dst[j] = F.mul_add(c, src[j], dst[j]);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrix

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

Matrix Matrix::from_rows(const Field& field, std::size_t cols, std::span<const Vector> rows) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::AmbientMismatch, "row length mismatch");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

Matrix Matrix::from_columns(const Field& field, std::size_t rows, std::span<const Vector> cols) {
  Matrix m(field, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

void Matrix::set_column(std::size_t c, const Vector& v) {
  if (v.size() != rows_) throw Error(ErrorCode::AmbientMismatch, "column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = v[i];
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Scalar s) { return s.is_zero(); });
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw Error(ErrorCode::AmbientMismatch, "matrix-vector dimension mismatch");
  Vector out(rows_);
  if (field_.is_prime_field()) {
    const std::uint64_t p = field_.characteristic();
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      const Scalar* r = data_.data() + i * cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        acc += r[j].code * v[j].code;
        if (acc >= (std::uint64_t{1} << 62)) acc %= p;
      }
      out[i].code = acc % p;
    }
    return out;
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    Scalar acc = field_.zero();
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!v[j].is_zero()) acc = field_.mul_add((*this)(i, j), v[j], acc);
    }
    out[i] = acc;
  }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  if (a.cols() != b.rows()) throw Error(ErrorCode::AmbientMismatch, "matrix product dimension mismatch");
  const Field& F = a.field();
  Matrix c(F, a.rows(), b.cols());
  if (F.is_prime_field()) {
    const std::uint64_t p = F.characteristic();
    std::vector<std::uint64_t> acc(b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      std::size_t pending = 0;
      for (std::size_t l = 0; l < a.cols(); ++l) {
        const std::uint64_t x = a(i, l).code;
        if (!x) continue;
        const auto brow = b.row(l);
        for (std::size_t j = 0; j < b.cols(); ++j) acc[j] += x * brow[j].code;
        // p < 2^31, so 3 unreduced products always fit
        if (++pending == 3) {
          for (auto& s : acc) s %= p;
          pending = 0;
        }
      }
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j).code = acc[j] % p;
    }
    return c;
  }
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) row_axpy(F, c.row(i), a(i, l), b.row(l));
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::AmbientMismatch, "matrix sum shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().add(a(i, j), b(i, j));
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::AmbientMismatch, "matrix difference shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().sub(a(i, j), b(i, j));
  return c;
}

Matrix scale(const Matrix& a, Scalar s) {
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().mul(a(i, j), s);
  return c;
}

Matrix power(const Matrix& a, std::uint64_t e) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, "power of a non-square matrix");
  Matrix result = Matrix::identity(a.field(), a.rows());
  Matrix base = a;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Matrix lift(const Matrix& a, const Field& to) {
  Matrix c(to, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = to.embed(a.field(), a(i, j));
  return c;
}

// ---------------------------------------------------------------------------
// Row reduction

RrefResult rref(const Matrix& input) {
  Matrix m = input;
  const Field& F = m.field();
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != rank) std::swap_ranges(m.row(piv).begin(), m.row(piv).end(), m.row(rank).begin());
    const Scalar inv = F.inv(m(rank, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(rank, j) = F.mul(m(rank, j), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank || m(r, col).is_zero()) continue;
      row_axpy(F, m.row(r), F.neg(m(r, col)), m.row(rank), col);
    }
    pivots.push_back(col);
    ++rank;
  }
  Matrix reduced(F, rank, m.cols());
  for (std::size_t i = 0; i < rank; ++i) std::copy(m.row(i).begin(), m.row(i).end(), reduced.row(i).begin());
  return {std::move(reduced), std::move(pivots), rank};
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::span(const Field& field, std::size_t ambient_dim, std::span<const Vector> vectors) {
  return Subspace(rref(Matrix::from_rows(field, ambient_dim, vectors)));
}

Subspace Subspace::row_space(const Matrix& m) { return Subspace(rref(m)); }

Subspace Subspace::full(const Field& field, std::size_t n) { return Subspace(rref(Matrix::identity(field, n))); }

Subspace Subspace::coordinate(const Field& field, std::size_t n, std::span<const std::size_t> coords) {
  std::vector<std::size_t> sorted(coords.begin(), coords.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Matrix m(field, sorted.size(), n);
  for (std::size_t i = 0; i < sorted.size(); ++i) m(i, sorted[i]) = field.one();
  return Subspace(RrefResult{std::move(m), sorted, sorted.size()});
}

std::vector<Vector> Subspace::vectors() const {
  std::vector<Vector> out;
  out.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(vector(i));
  return out;
}

Vector Subspace::residual(const Vector& v) const {
  if (v.size() != ambient_dim()) throw Error(ErrorCode::AmbientMismatch, "vector length differs from ambient dimension");
  Vector r = v;
  const Field& F = field();
  for (std::size_t i = 0; i < dim(); ++i) {
    const Scalar c = r[pivots_[i]];
    if (!c.is_zero()) row_axpy(F, r, F.neg(c), basis_.row(i));
  }
  return r;
}

bool Subspace::contains(const Vector& v) const { return cartanlie::is_zero(residual(v)); }

Vector Subspace::coordinates(const Vector& v) const {
  Vector c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Vector Subspace::combine(const Vector& coeffs) const {
  if (coeffs.size() != dim()) throw Error(ErrorCode::AmbientMismatch, "coefficient count differs from subspace dimension");
  Vector out(ambient_dim());
  for (std::size_t i = 0; i < dim(); ++i) row_axpy(field(), out, coeffs[i], basis_.row(i));
  return out;
}

Subspace kernel(const Matrix& m) {
  const auto r = rref(m);
  const Field& F = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = F.one();
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = F.neg(r.reduced(i, f));
    basis.push_back(std::move(v));
  }
  return Subspace::span(F, m.cols(), basis);
}

Subspace image(const Matrix& m) { return Subspace::row_space(m.transpose()); }

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  require_same_field(a.field(), b.field());
  if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorCode::AmbientMismatch, "subspaces in different ambient spaces");
  std::vector<Vector> rows = a.vectors();
  for (auto& v : b.vectors()) rows.push_back(std::move(v));
  return Subspace::span(a.field(), a.ambient_dim(), rows);
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  require_same_field(a.field(), b.field());
  if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorCode::AmbientMismatch, "subspaces in different ambient spaces");
  const Field& F = a.field();
  const std::size_t n = a.ambient_dim();
  if (a.is_zero() || b.is_zero()) return Subspace(F, n);
  Matrix rel(F, n, a.dim() + b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t r = 0; r < n; ++r) rel(r, i) = a.basis()(i, r);
  for (std::size_t j = 0; j < b.dim(); ++j)
    for (std::size_t r = 0; r < n; ++r) rel(r, a.dim() + j) = F.neg(b.basis()(j, r));
  const Subspace rel_kernel = kernel(rel);
  std::vector<Vector> out;
  for (std::size_t k = 0; k < rel_kernel.dim(); ++k) {
    Vector coeffs(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) coeffs[i] = rel_kernel.basis()(k, i);
    out.push_back(a.combine(coeffs));
  }
  return Subspace::span(F, n, out);
}

bool subspace_contains(const Subspace& a, const Vector& v) { return a.contains(v); }

bool subspace_contains(const Subspace& a, const Subspace& b) {
  for (std::size_t i = 0; i < b.dim(); ++i)
    if (!a.contains(b.vector(i))) return false;
  return true;
}

bool subspace_equals(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorCode::AmbientMismatch, "subspaces in different ambient spaces");
  return a == b;
}

Subspace lift(const Subspace& s, const Field& to) { return Subspace::row_space(lift(s.basis(), to)); }

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::AmbientMismatch, "right-hand side length mismatch");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.reduced(i, m.cols());
  return x;
}

// ---------------------------------------------------------------------------
// Characteristic polynomial

Poly char_poly(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NotSquare, "characteristic polynomial of a non-square matrix");
  const Field& F = m.field();
  const std::size_t n = m.rows();
  if (n == 0) return Poly(F, {F.one()});

  // C holds the coefficients of the leading principal minor's char poly,
  // highest degree first.
  std::vector<Scalar> C{F.one(), F.neg(m(0, 0))};
  Vector v, w;
  for (std::size_t r = 1; r < n; ++r) {
    // leading block A = m[0..r)[0..r), S = m[0..r)[r], R = m[r][0..r)
    std::vector<Scalar> t(r + 2);
    t[0] = F.one();
    t[1] = F.neg(m(r, r));
    v.assign(r, Scalar{});
    for (std::size_t i = 0; i < r; ++i) v[i] = m(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      Scalar dot = F.zero();
      for (std::size_t i = 0; i < r; ++i) dot = F.mul_add(m(r, i), v[i], dot);
      t[k + 2] = F.neg(dot);
      if (k + 1 == r) break;
      w.assign(r, Scalar{});
      if (F.is_prime_field()) {
        const std::uint64_t p = F.characteristic();
        for (std::size_t i = 0; i < r; ++i) {
          std::uint64_t acc = 0;
          const auto row = m.row(i);
          for (std::size_t j = 0; j < r; ++j) {
            acc += row[j].code * v[j].code;
            if (acc >= (std::uint64_t{1} << 62)) acc %= p;
          }
          w[i].code = acc % p;
        }
      } else {
        for (std::size_t i = 0; i < r; ++i) {
          Scalar acc = F.zero();
          for (std::size_t j = 0; j < r; ++j) acc = F.mul_add(m(i, j), v[j], acc);
          w[i] = acc;
        }
      }
      std::swap(v, w);
    }
    std::vector<Scalar> next(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i) {
      Scalar acc = F.zero();
      for (std::size_t j = 0; j <= std::min(i, r); ++j) acc = F.mul_add(t[i - j], C[j], acc);
      next[i] = acc;
    }
    C = std::move(next);
  }
  std::vector<Scalar> low_to_high(C.rbegin(), C.rend());
  return Poly(F, std::move(low_to_high));
}

Matrix evaluate(const Poly& f, const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NotSquare, "polynomial evaluated at a non-square matrix");
  const Field& F = m.field();
  Matrix acc(F, m.rows(), m.cols());
  const Matrix id = Matrix::identity(F, m.rows());
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    acc = acc * m + scale(id, F.embed(f.field(), f.coeffs()[i]));
  }
  return acc;
}

bool is_p_polynomial(const Poly& f, unsigned samples, std::uint64_t seed) {
  if (!has_p_polynomial_support(f)) return false;
  const std::uint32_t p = f.field().characteristic();
  // Additivity is trivial on the prime field itself; test in a small extension.
  unsigned k = f.field().degree() * 3;
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) q *= p;
  while (k > 1 && q > kTableBound) {
    --k;
    q /= p;
  }
  if (f.field().degree() > 1 || k <= 1) k = f.field().degree();
  const Field F = Field::make(p, k, kMaxFieldOrder);
  const Poly g = lift(f, F);
  Rng rng(seed);
  for (unsigned s = 0; s < samples; ++s) {
    const Scalar a = rng.scalar(F), b = rng.scalar(F);
    if (g.eval(F.add(a, b)) != F.add(g.eval(a), g.eval(b))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Vectors

Vector zero_vector(std::size_t n) { return Vector(n); }

bool is_zero(const Vector& v) noexcept {
  return std::all_of(v.begin(), v.end(), [](Scalar s) { return s.is_zero(); });
}

Vector add(const Field& F, const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.add(a[i], b[i]);
  return out;
}

Vector sub(const Field& F, const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.sub(a[i], b[i]);
  return out;
}

Vector scale(const Field& F, const Vector& a, Scalar c) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.mul(a[i], c);
  return out;
}

void axpy(const Field& F, Vector& a, Scalar c, const Vector& b) { row_axpy(F, a, c, b); }

// ---------------------------------------------------------------------------
// EchelonBuilder

Vector EchelonBuilder::reduce(Vector v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar c = v[pivots_[i]];
    if (!c.is_zero()) row_axpy(field_, v, field_.neg(c), rows_[i], pivots_[i]);
  }
  return v;
}

bool EchelonBuilder::insert(Vector v) {
  if (v.size() != n_) throw Error(ErrorCode::AmbientMismatch, "vector length differs from ambient dimension");
  v = reduce(std::move(v));
  std::size_t piv = 0;
  while (piv < n_ && v[piv].is_zero()) ++piv;
  if (piv == n_) return false;
  const Scalar inv = field_.inv(v[piv]);
  for (std::size_t j = piv; j < n_; ++j) v[j] = field_.mul(v[j], inv);
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

Subspace EchelonBuilder::finish() const { return Subspace::span(field_, n_, rows_); }

}  // namespace cartanlie
