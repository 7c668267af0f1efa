#include "cartanlie/lie.hpp"

#include <algorithm>

namespace cartanlie {

namespace {

std::vector<std::uint32_t> support(const Vector& v) {
  std::vector<std::uint32_t> s;
  for (std::uint32_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.push_back(i);
  return s;
}

const std::vector<std::uint32_t> kEmptyBlock;

}  // namespace

LieAlgebra::LieAlgebra(Field field, std::string name, std::vector<int> degrees, const BasisBracket& bracket)
    : field_(std::move(field)), name_(std::move(name)), degrees_(std::move(degrees)) {
  const std::size_t n = degrees_.size();
  local_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    auto& b = blocks_[degrees_[i]];
    local_[i] = static_cast<std::uint32_t>(b.size());
    b.push_back(i);
  }
  if (!blocks_.empty()) {
    min_degree_ = blocks_.begin()->first;
    max_degree_ = blocks_.rbegin()->first;
  }
  offsets_.reserve(n * n + 1);
  offsets_.push_back(0);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      SparseVector s = bracket(i, j);
      std::sort(s.begin(), s.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
      for (const auto& e : s) {
        if (e.coeff.is_zero()) continue;
        if (e.index >= n) throw Error(ErrorCode::IndexOutOfRange, "structure constant outside the basis");
        if (!entries_.empty() && entries_.size() > offsets_.back() && entries_.back().index == e.index) {
          entries_.back().coeff = field_.add(entries_.back().coeff, e.coeff);
          if (entries_.back().coeff.is_zero()) entries_.pop_back();
        } else {
          entries_.push_back(e);
        }
      }
      offsets_.push_back(entries_.size());
    }
  }
}

const std::vector<std::uint32_t>& LieAlgebra::block(int d) const {
  auto it = blocks_.find(d);
  return it == blocks_.end() ? kEmptyBlock : it->second;
}

Vector LieAlgebra::bracket(const Vector& u, const Vector& v) const {
  if (u.size() != dim() || v.size() != dim()) throw Error(ErrorCode::AmbientMismatch, "bracket operands have wrong length");
  const auto su = support(u), sv = support(v);
  Vector out(dim());
  if (field_.is_prime_field()) {
    const std::uint64_t p = field_.characteristic();
    std::vector<std::uint64_t> acc(dim(), 0);
    for (auto i : su) {
      for (auto j : sv) {
        const std::uint64_t c = u[i].code * v[j].code % p;
        for (const auto& e : basis_bracket(i, j)) acc[e.index] = (acc[e.index] + c * e.coeff.code) % p;
      }
    }
    for (std::size_t k = 0; k < dim(); ++k) out[k].code = acc[k];
    return out;
  }
  for (auto i : su) {
    for (auto j : sv) {
      const Scalar c = field_.mul(u[i], v[j]);
      for (const auto& e : basis_bracket(i, j)) out[e.index] = field_.mul_add(c, e.coeff, out[e.index]);
    }
  }
  return out;
}

Matrix LieAlgebra::ad(const Vector& x) const {
  const auto sx = support(x);
  Matrix m(field_, dim(), dim());
  for (std::uint32_t j = 0; j < dim(); ++j) {
    for (auto i : sx) {
      for (const auto& e : basis_bracket(i, j)) m(e.index, j) = field_.mul_add(x[i], e.coeff, m(e.index, j));
    }
  }
  return m;
}

std::optional<int> LieAlgebra::homogeneous_degree(const Vector& v) const {
  std::optional<int> d;
  for (std::uint32_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (d && *d != degrees_[i]) return std::nullopt;
    d = degrees_[i];
  }
  return d;
}

Vector LieAlgebra::to_local(int d, const Vector& v) const {
  const auto& b = block(d);
  Vector out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = v[b[i]];
  return out;
}

Vector LieAlgebra::to_ambient(int d, const Vector& local) const {
  const auto& b = block(d);
  Vector out(dim());
  for (std::size_t i = 0; i < b.size(); ++i) out[b[i]] = local[i];
  return out;
}

const char* to_string(Label label) noexcept {
  switch (label) {
    case Label::W: return "W";
    case Label::S: return "S";
    case Label::S1: return "S1";
    case Label::CS: return "CS";
    case Label::H: return "H";
    case Label::H2: return "H2";
    case Label::K: return "K";
    case Label::K1: return "K1";
    case Label::Generated: return "generated";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// SubalgebraHandle

namespace {

std::map<int, std::vector<Vector>> ambient_bases(const LieAlgebra& alg, const std::map<int, Subspace>& comps) {
  std::map<int, std::vector<Vector>> out;
  for (const auto& [d, s] : comps) {
    auto& vs = out[d];
    for (std::size_t i = 0; i < s.dim(); ++i) vs.push_back(alg.to_ambient(d, s.vector(i)));
  }
  return out;
}

}  // namespace

SubalgebraHandle SubalgebraHandle::graded(std::shared_ptr<const LieAlgebra> ambient, Label label,
                                          std::map<int, Subspace> components, bool verify) {
  const LieAlgebra& alg = *ambient;
  std::erase_if(components, [](const auto& kv) { return kv.second.is_zero(); });
  for (const auto& [d, s] : components) {
    if (s.ambient_dim() != alg.block(d).size())
      throw Error(ErrorCode::AmbientMismatch, "component does not match its degree block");
  }
  const auto bases = ambient_bases(alg, components);
  std::vector<Vector> all;
  for (const auto& [d, vs] : bases) all.insert(all.end(), vs.begin(), vs.end());

  if (verify) {
    for (auto ia = bases.begin(); ia != bases.end(); ++ia) {
      for (auto ib = ia; ib != bases.end(); ++ib) {
        const int t = ia->first + ib->first;
        auto it = components.find(t);
        for (std::size_t i = 0; i < ia->second.size(); ++i) {
          const std::size_t j0 = ia == ib ? i + 1 : 0;
          for (std::size_t j = j0; j < ib->second.size(); ++j) {
            const Vector w = alg.bracket(ia->second[i], ib->second[j]);
            if (is_zero(w)) continue;
            if (it == components.end() || !it->second.contains(alg.to_local(t, w)))
              throw Error(ErrorCode::NotAnIdeal, std::string(to_string(label)) + " is not closed under the bracket");
          }
        }
      }
    }
  }

  SubalgebraHandle h(ambient, label, Subspace::span(alg.field(), alg.dim(), all));
  h.graded_ = true;
  h.components_ = std::move(components);
  return h;
}

SubalgebraHandle SubalgebraHandle::ungraded(std::shared_ptr<const LieAlgebra> ambient, Label label, Subspace basis) {
  if (basis.ambient_dim() != ambient->dim()) throw Error(ErrorCode::AmbientMismatch, "basis outside the ambient algebra");
  return SubalgebraHandle(std::move(ambient), label, std::move(basis));
}

SubalgebraHandle SubalgebraHandle::whole(std::shared_ptr<const LieAlgebra> ambient, Label label) {
  std::map<int, Subspace> comps;
  for (int d = ambient->min_degree(); d <= ambient->max_degree(); ++d) {
    const auto n = ambient->block(d).size();
    if (n) comps.emplace(d, Subspace::full(ambient->field(), n));
  }
  return graded(std::move(ambient), label, std::move(comps), false);
}

Subspace SubalgebraHandle::component(int d) const {
  auto it = components_.find(d);
  if (it == components_.end()) return Subspace(ambient_->field(), ambient_->dim());
  std::vector<Vector> vs;
  for (std::size_t i = 0; i < it->second.dim(); ++i) vs.push_back(ambient_->to_ambient(d, it->second.vector(i)));
  return Subspace::span(ambient_->field(), ambient_->dim(), vs);
}

std::size_t SubalgebraHandle::component_dim(int d) const {
  auto it = components_.find(d);
  return it == components_.end() ? 0 : it->second.dim();
}

int SubalgebraHandle::min_degree() const {
  if (components_.empty()) throw Error(ErrorCode::InvalidArgument, "no graded components");
  return components_.begin()->first;
}

int SubalgebraHandle::top_degree() const {
  if (components_.empty()) throw Error(ErrorCode::InvalidArgument, "no graded components");
  return components_.rbegin()->first;
}

Subspace SubalgebraHandle::filtration(int k) const {
  if (!graded_) throw Error(ErrorCode::InvalidArgument, "filtration of an ungraded subalgebra");
  std::vector<Vector> vs;
  for (const auto& [d, s] : components_) {
    if (d < k) continue;
    for (std::size_t i = 0; i < s.dim(); ++i) vs.push_back(ambient_->to_ambient(d, s.vector(i)));
  }
  return Subspace::span(ambient_->field(), ambient_->dim(), vs);
}

Vector SubalgebraHandle::random_element(Rng& rng) const {
  Vector c(basis_.dim());
  for (auto& s : c) s = rng.scalar(ambient_->field());
  return basis_.combine(c);
}

// ---------------------------------------------------------------------------

SubalgebraHandle derived_subalgebra(const SubalgebraHandle& a, Label label) {
  if (!a.is_graded()) throw Error(ErrorCode::InvalidArgument, "derived subalgebra needs a graded handle");
  const LieAlgebra& alg = a.ambient();
  const auto bases = ambient_bases(alg, a.components());
  std::map<int, EchelonBuilder> builders;
  for (auto ia = bases.begin(); ia != bases.end(); ++ia) {
    for (auto ib = ia; ib != bases.end(); ++ib) {
      const int t = ia->first + ib->first;
      const std::size_t cap = a.component_dim(t);
      if (cap == 0) continue;  // brackets into this degree vanish inside a
      auto [it, fresh] = builders.try_emplace(t, alg.field(), alg.block(t).size());
      EchelonBuilder& eb = it->second;
      for (std::size_t i = 0; i < ia->second.size() && eb.rank() < cap; ++i) {
        const std::size_t j0 = ia == ib ? i + 1 : 0;
        for (std::size_t j = j0; j < ib->second.size() && eb.rank() < cap; ++j) {
          eb.insert(alg.to_local(t, alg.bracket(ia->second[i], ib->second[j])));
        }
      }
    }
  }
  std::map<int, Subspace> comps;
  for (const auto& [d, eb] : builders) comps.emplace(d, eb.finish());
  return SubalgebraHandle::graded(a.ambient_ptr(), label, std::move(comps), false);
}

bool is_ideal(const SubalgebraHandle& l, const SubalgebraHandle& h) {
  if (&l.ambient() != &h.ambient()) throw Error(ErrorCode::AmbientMismatch, "handles live in different algebras");
  const LieAlgebra& alg = l.ambient();
  const auto lb = ambient_bases(alg, l.components()), hb = ambient_bases(alg, h.components());
  for (const auto& [da, va] : lb) {
    for (const auto& [db, vb] : hb) {
      const int t = da + db;
      auto it = h.components().find(t);
      for (const auto& x : va) {
        for (const auto& y : vb) {
          const Vector w = alg.bracket(x, y);
          if (is_zero(w)) continue;
          if (it == h.components().end() || !it->second.contains(alg.to_local(t, w))) return false;
        }
      }
    }
  }
  return true;
}

AdMatrix ad_matrix(const LieAlgebra& alg, const Vector& x, const Subspace& v) {
  std::vector<Vector> cols;
  bool stable = true;
  for (std::size_t j = 0; j < v.dim(); ++j) {
    cols.push_back(alg.bracket(x, v.vector(j)));
    if (stable && !v.contains(cols.back())) stable = false;
  }
  if (stable) {
    Matrix m(alg.field(), v.dim(), v.dim());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, v.coordinates(cols[j]));
    return {std::move(m), true};
  }
  return {Matrix::from_columns(alg.field(), alg.dim(), cols), false};
}

Subspace centraliser(const LieAlgebra& alg, const Vector& x, const Subspace& within) {
  if (x.size() != alg.dim() || within.ambient_dim() != alg.dim())
    throw Error(ErrorCode::ShapeMismatch, "centraliser operands outside the algebra");
  if (within.is_zero()) return within;
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < within.dim(); ++j) cols.push_back(alg.bracket(x, within.vector(j)));
  const Subspace k = kernel(Matrix::from_columns(alg.field(), alg.dim(), cols));
  std::vector<Vector> out;
  for (std::size_t i = 0; i < k.dim(); ++i) out.push_back(within.combine(k.vector(i)));
  return Subspace::span(alg.field(), alg.dim(), out);
}

}  // namespace cartanlie
