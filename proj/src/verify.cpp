#include "cartanlie/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "parallel.hpp"

namespace cartanlie {

namespace {

using detail::parallel_for;

const std::vector<std::string> kSuites{"jacobi",  "divergence",    "embedding", "dimensions",
                                       "decomposition", "contact", "witness", "nongeneration",
                                       "sanity",  "audit",         "remark"};

bool is_theorem_code(ErrorCode c) {
  return c == ErrorCode::NoConstantFound || c == ErrorCode::ZeroWitness || c == ErrorCode::LemmaViolation;
}

Status failure_status(ErrorCode c) { return is_theorem_code(c) ? Status::TheoremViolation : Status::Fail; }

std::string algebra_name(char type, const Shape& s) {
  std::ostringstream os;
  os << type << '(' << s.m() << ",(";
  for (unsigned i = 0; i < s.m(); ++i) os << (i ? "," : "") << s.n()[i];
  os << "))";
  return os.str();
}

Json target_params(char type, const Shape& s) {
  return Json{{"algebra", algebra_name(type, s)}, {"m", s.m()}, {"n", s.n()}, {"p", s.p()}};
}

Report run_check(std::string name, Json params, const std::function<void(Report&)>& body) {
  Report r;
  r.name = std::move(name);
  r.parameters = std::move(params);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const Error& e) {
    r.status = failure_status(e.code());
    r.message = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Status pass_if(bool ok) { return ok ? Status::Pass : Status::Fail; }

DPoly random_poly(const Shape& S, Rng& rng, unsigned max_terms) {
  std::vector<Term> ts;
  const unsigned count = 1 + static_cast<unsigned>(rng.below(max_terms));
  for (unsigned i = 0; i < count; ++i)
    ts.push_back({static_cast<std::uint32_t>(rng.below(S.dim())), rng.scalar(S.field())});
  return DPoly::from_terms(S, std::move(ts));
}

Deriv random_deriv(const Shape& S, Rng& rng, unsigned max_terms) {
  std::vector<DPoly> c;
  for (unsigned k = 0; k < S.m(); ++k) c.push_back(random_poly(S, rng, max_terms));
  return Deriv(S, std::move(c));
}

DPoly random_invertible(const Shape& S, Rng& rng, unsigned max_terms) {
  const DPoly f = random_poly(S, rng, max_terms);
  return f - DPoly::constant(S, f.constant_term()) + DPoly::constant(S, rng.nonzero_scalar(S.field()));
}

/// Combination of at most `terms` basis vectors with nonzero coefficients.
Vector sparse_element(const Subspace& basis, Rng& rng, unsigned terms) {
  const Field& F = basis.field();
  Vector v(basis.ambient_dim());
  const unsigned count = 1 + static_cast<unsigned>(rng.below(terms));
  for (unsigned i = 0; i < count; ++i) axpy(F, v, rng.nonzero_scalar(F), basis.vector(rng.below(basis.dim())));
  return v;
}

Json histogram(const std::map<std::uint64_t, std::size_t>& h) {
  Json j = Json::object();
  for (const auto& [k, v] : h) j[std::to_string(k)] = v;
  return j;
}

Json grading(const SubalgebraHandle& h) {
  Json j = Json::array();
  for (const auto& [d, s] : h.components()) j.push_back(Json::array({d, s.dim()}));
  return j;
}

// ---------------------------------------------------------------------------

struct Target {
  char type;
  Shape shape;
};

/// Families built once per run and shared between suites.
class Context {
 public:
  explicit Context(const RunConfig& cfg) : cfg_(cfg), field_(Field::make(cfg.p)) {}

  const RunConfig& cfg() const { return cfg_; }
  const Field& field() const { return field_; }
  std::size_t samples(std::size_t fallback) const { return cfg_.samples.value_or(fallback); }
  std::uint64_t seed(std::string_view salt) const {
    std::uint64_t h = cfg_.seed;
    for (char c : salt) h = derive_seed(h, static_cast<unsigned char>(c));
    return h;
  }
  Shape shape(std::vector<unsigned> n) const { return Shape::make(field_, std::move(n)); }

  /// Defaults when no --type was given; otherwise the configured algebra if
  /// its type is in `applicable`, else nothing.
  std::vector<Target> targets(std::vector<Target> defaults, std::string_view applicable) const {
    if (!cfg_.type) return defaults;
    if (applicable.find(*cfg_.type) == std::string_view::npos) return {};
    return {Target{*cfg_.type, config_shape(cfg_)}};
  }

  const WAlgebra& w(const Shape& s) { return get(w_, s, [&] { return WAlgebra::make(s, cfg_.dim_cap); }); }
  const SpecialFamily& s(const Shape& s) { return get(s_, s, [&] { return build_S(s, cfg_.dim_cap); }); }
  const HamiltonianFamily& h(const Shape& s) { return get(h_, s, [&] { return build_H(s, cfg_.dim_cap); }); }
  const ContactFamily& k(const Shape& s) { return get(k_, s, [&] { return build_K(s, cfg_.dim_cap); }); }

  /// The algebra a suite works in for a target: W, S, H or K itself.
  SubalgebraHandle algebra(const Target& t) {
    switch (t.type) {
      case 'S': return s(t.shape).s;
      case 'H': return h(t.shape).h;
      case 'K': return k(t.shape).k;
      default: return SubalgebraHandle::whole(w(t.shape).lie_ptr(), Label::W);
    }
  }
  /// S1, H2 or K1.
  SubalgebraHandle simple(const Target& t) {
    switch (t.type) {
      case 'S': return s(t.shape).s1;
      case 'H': return h(t.shape).h2;
      case 'K': return k(t.shape).k1;
      default: throw Error(ErrorCode::InvalidArgument, "no simple subalgebra attached to W");
    }
  }
  std::string element_text(const Target& t, const Vector& v) {
    if (t.type == 'K') return k(t.shape).algebra.from_vector(v).to_string();
    return w(t.shape).from_vector(v).to_string();
  }

 private:
  template <class T, class Make>
  const T& get(std::map<std::string, std::unique_ptr<T>>& cache, const Shape& s, Make make) {
    const std::string key = s.describe();
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<T>(make())).first;
    return *it->second;
  }

  const RunConfig& cfg_;
  Field field_;
  std::map<std::string, std::unique_ptr<WAlgebra>> w_;
  std::map<std::string, std::unique_ptr<SpecialFamily>> s_;
  std::map<std::string, std::unique_ptr<HamiltonianFamily>> h_;
  std::map<std::string, std::unique_ptr<ContactFamily>> k_;
};

Report not_applicable(const std::string& suite, const RunConfig& cfg) {
  Report r;
  r.name = suite;
  r.status = Status::Skipped;
  r.parameters = Json{{"type", std::string(1, cfg.type.value_or('?'))}};
  r.message = "suite does not apply to this algebra type";
  return r;
}

// ---------------------------------------------------------------------------
// Suites

void suite_jacobi(Context& cx, std::vector<Report>& out) {
  const auto ts = cx.targets({{'W', cx.shape({1})}, {'W', cx.shape({2})}, {'W', cx.shape({1, 1})},
                              {'W', cx.shape({1, 1, 1})}},
                             "WSHK");
  if (ts.empty()) out.push_back(not_applicable("jacobi", cx.cfg()));
  for (const auto& t : ts) {
    out.push_back(run_check("jacobi", target_params(t.type, t.shape), [&](Report& r) {
      const SubalgebraHandle a = cx.algebra(t);
      const LieAlgebra& L = a.ambient();
      const Field& F = L.field();
      std::atomic<std::size_t> jacobi_fail{0}, anti_fail{0};
      auto check = [&](const Vector& x, const Vector& y, const Vector& z, const Vector& xy, const Vector& yz,
                       const Vector& zx) {
        Vector j = L.bracket(x, yz);
        j = add(F, j, L.bracket(y, zx));
        j = add(F, j, L.bracket(z, xy));
        if (!is_zero(j)) ++jacobi_fail;
      };
      std::size_t triples = 0;
      const std::size_t dim = a.dim();
      if (dim <= 25 && !cx.cfg().samples) {
        const auto vs = a.basis().vectors();
        std::vector<std::vector<Vector>> br(dim, std::vector<Vector>(dim));
        for (std::size_t i = 0; i < dim; ++i)
          for (std::size_t j = 0; j < dim; ++j) br[i][j] = L.bracket(vs[i], vs[j]);
        for (std::size_t i = 0; i < dim; ++i)
          for (std::size_t j = 0; j < dim; ++j)
            if (!is_zero(add(F, br[i][j], br[j][i]))) ++anti_fail;
        parallel_for(dim, [&](std::size_t i) {
          for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k) check(vs[i], vs[j], vs[k], br[i][j], br[j][k], br[k][i]);
        });
        triples = dim * dim * dim;
        r.evidence["mode"] = "exhaustive";
      } else {
        triples = cx.samples(10000);
        const std::uint64_t seed = cx.seed("jacobi" + algebra_name(t.type, t.shape));
        parallel_for(triples, [&](std::size_t i) {
          Rng rng(derive_seed(seed, i));
          const Vector x = sparse_element(a.basis(), rng, 3), y = sparse_element(a.basis(), rng, 3),
                       z = sparse_element(a.basis(), rng, 3);
          const Vector xy = L.bracket(x, y);
          if (!is_zero(add(F, xy, L.bracket(y, x))) || !is_zero(L.bracket(x, x))) ++anti_fail;
          check(x, y, z, xy, L.bracket(y, z), L.bracket(z, x));
        });
        r.evidence["mode"] = "sampled";
      }
      r.evidence["dim"] = dim;
      r.evidence["triples"] = triples;
      r.evidence["jacobi_failures"] = jacobi_fail.load();
      r.evidence["anticommutativity_failures"] = anti_fail.load();
      r.status = pass_if(jacobi_fail == 0 && anti_fail == 0);
    }));
  }
}

void suite_divergence(Context& cx, std::vector<Report>& out) {
  const auto ts = cx.targets({{'W', cx.shape({1, 1})}, {'W', cx.shape({1, 2})}}, "WS");
  if (ts.empty()) out.push_back(not_applicable("divergence", cx.cfg()));
  for (const auto& t : ts) {
    out.push_back(run_check("divergence", target_params('W', t.shape), [&](Report& r) {
      const Shape& S = t.shape;
      const std::size_t n = cx.samples(1000);
      const std::uint64_t seed = cx.seed("divergence" + S.describe());
      std::atomic<std::size_t> module_fail{0}, bracket_fail{0};
      parallel_for(n, [&](std::size_t i) {
        Rng rng(derive_seed(seed, i));
        const DPoly f = random_poly(S, rng, 8);
        const Deriv d = random_deriv(S, rng, 6), e = random_deriv(S, rng, 6);
        if (!(divergence(d_module_mul(f, d)) == f * divergence(d) + d_apply(d, f))) ++module_fail;
        if (!(divergence(d_bracket(d, e)) == d_apply(d, divergence(e)) - d_apply(e, divergence(d)))) ++bracket_fail;
      });
      r.evidence = Json{{"samples", n}, {"module_failures", module_fail.load()}, {"bracket_failures", bracket_fail.load()}};
      r.status = pass_if(module_fail == 0 && bracket_fail == 0);
    }));
  }
}

void suite_embedding(Context& cx, std::vector<Report>& out) {
  const auto ts = cx.targets({{'W', cx.shape({2})}, {'W', cx.shape({1, 2})}}, "WS");
  if (ts.empty()) out.push_back(not_applicable("embedding", cx.cfg()));
  for (const auto& t : ts) {
    out.push_back(run_check("embedding", target_params('W', t.shape), [&](Report& r) {
      const Shape& S = t.shape;
      const SigmaIso iso(S);
      std::size_t basis = 0, basis_fail = 0;
      for (std::uint32_t a = 0; a < S.dim(); ++a) {
        for (unsigned k = 0; k < S.m(); ++k, ++basis) {
          const Deriv d = Deriv::basis(S, a, k, S.field().one());
          if (!(divergence(iso.iota(d)) == iso.apply(divergence(d)))) ++basis_fail;
        }
      }
      const std::size_t n = cx.samples(500);
      const std::uint64_t seed = cx.seed("embedding" + S.describe());
      std::atomic<std::size_t> hom_fail{0};
      parallel_for(n, [&](std::size_t i) {
        Rng rng(derive_seed(seed, i));
        const Deriv d = random_deriv(S, rng, 6), e = random_deriv(S, rng, 6);
        if (!(iso.iota(d_bracket(d, e)) == d_bracket(iso.iota(d), iso.iota(e)))) ++hom_fail;
      });
      r.parameters["target"] = algebra_name('W', iso.target());
      r.evidence = Json{{"basis_elements", basis},
                        {"divergence_failures", basis_fail},
                        {"pairs", n},
                        {"homomorphism_failures", hom_fail.load()}};
      r.status = pass_if(basis_fail == 0 && hom_fail == 0);
    }));
  }
}

void suite_dimensions(Context& cx, std::vector<Report>& out) {
  const auto ts = cx.targets({{'W', cx.shape({1})},
                              {'W', cx.shape({2})},
                              {'W', cx.shape({1, 1})},
                              {'W', cx.shape({1, 2})},
                              {'W', cx.shape({1, 1, 1})},
                              {'S', cx.shape({1, 1})},
                              {'S', cx.shape({1, 1, 1})},
                              {'S', cx.shape({1, 2})},
                              {'H', cx.shape({1, 1})},
                              {'H', cx.shape({1, 2})},
                              {'K', cx.shape({1, 1, 1})},
                              {'K', cx.shape(std::vector<unsigned>(7, 1))}},
                             "WSHK");
  for (const auto& t : ts) {
    out.push_back(run_check("dimensions", target_params(t.type, t.shape), [&](Report& r) {
      const Shape& S = t.shape;
      const std::uint64_t q = S.dim();
      const unsigned m = S.m();
      const std::size_t needed = t.type == 'K' ? q : m * q;
      if (needed > cx.cfg().dim_cap) {
        r.status = Status::Skipped;
        r.message = "dimension " + std::to_string(needed) + " exceeds the cap " + std::to_string(cx.cfg().dim_cap);
        return;
      }
      Json& ev = r.evidence;
      bool ok = true;
      auto expect = [&](const char* key, std::size_t got, std::size_t want) {
        ev[key] = Json{{"computed", got}, {"expected", want}};
        ok = ok && got == want;
      };
      expect("dim_O", S.dim(), q);
      switch (t.type) {
        case 'W':
          expect("dim_W", cx.w(S).dim(), m * q);
          break;
        case 'S': {
          const auto& f = cx.s(S);
          ev["dim_S"] = f.s.dim();
          ev["dim_S1"] = f.s1.dim();
          expect("codim_S1_in_S", f.s.dim() - f.s1.dim(), m);
          if (S.is_ones()) expect("codim_S1_in_CS", f.cs.dim() - f.s1.dim(), m + 1);
          break;
        }
        case 'H': {
          const auto& f = cx.h(S);
          expect("dim_H", f.h.dim(), q - 1);
          expect("dim_H2", f.h2.dim(), q - 2);
          break;
        }
        case 'K': {
          const auto& f = cx.k(S);
          expect("dim_K", f.k.dim(), q);
          expect("codim_K1_in_K", f.k.dim() - f.k1.dim(), (m + 3) % S.p() == 0 ? 1 : 0);
          break;
        }
      }
      r.status = pass_if(ok);
    }));
  }
}

struct DecompositionSample {
  bool constant_free = false;
  std::size_t constants_dim = 0;
  std::size_t centraliser_dim = 0;
  bool decomposed = false;
  unsigned r = 0;
  unsigned field_degree = 0;
  std::string error;
};

void suite_decomposition(Context& cx, std::vector<Report>& out) {
  auto ts = cx.targets({{'W', cx.shape({1})}, {'W', cx.shape({1, 1})}}, "W");
  if (ts.empty() || (cx.cfg().type && !ts.front().shape.is_ones())) {
    out.push_back(not_applicable("decomposition", cx.cfg()));
    return;
  }
  for (const auto& t : ts) {
    out.push_back(run_check("decomposition", target_params('W', t.shape), [&](Report& r) {
      const Shape& S = t.shape;
      const unsigned m = S.m();
      const WAlgebra& w = cx.w(S);
      const auto whole = SubalgebraHandle::whole(w.lie_ptr(), Label::W);
      const std::size_t want = cx.samples(100);
      const std::size_t limit = 50 * want + 50;
      const std::uint64_t seed = cx.seed("decomposition" + S.describe());
      const unsigned max_ext = cx.cfg().max_ext;

      std::size_t accepted = 0, rejected = 0, law_fail = 0, dec_fail = 0, contra_checked = 0, contra_fail = 0;
      std::map<std::uint64_t, std::size_t> rs, degrees;
      std::string first_error;
      const std::size_t batch = 32;
      for (std::size_t start = 0; accepted < want && start < limit; start += batch) {
        std::vector<DecompositionSample> res(batch);
        parallel_for(batch, [&](std::size_t b) {
          Rng rng(derive_seed(seed, start + b));
          const Vector v = whole.random_element(rng);
          const Deriv d = w.from_vector(v);
          auto& s = res[b];
          s.constants_dim = constants_ring(d).dim();
          s.constant_free = s.constants_dim == 1;
          s.centraliser_dim = centraliser(w.lie(), v, whole.basis()).dim();
          if (!s.constant_free) return;
          try {
            const auto dec = decompose_derivation(d, max_ext);
            s.decomposed = dec.ok();
            s.r = dec.r;
            s.field_degree = dec.field.degree();
            if (!s.decomposed) s.error = "invariant check failed for " + d.to_string();
          } catch (const Error& e) {
            s.error = e.what();
          }
        });
        for (const auto& s : res) {
          if (accepted == want) break;
          if (s.centraliser_dim > m) {
            ++contra_checked;
            if (s.constant_free) ++contra_fail;
          }
          if (!s.constant_free) {
            ++rejected;
            continue;
          }
          ++accepted;
          if (s.centraliser_dim != m) ++law_fail;
          if (!s.decomposed) {
            ++dec_fail;
            if (first_error.empty()) first_error = s.error;
          } else {
            ++rs[s.r];
            ++degrees[s.field_degree];
          }
        }
      }
      r.evidence = Json{{"accepted", accepted},
                        {"rejected_with_constants", rejected},
                        {"centraliser_law_failures", law_fail},
                        {"contrapositive_checked", contra_checked},
                        {"contrapositive_failures", contra_fail},
                        {"decomposition_failures", dec_fail},
                        {"r_histogram", histogram(rs)},
                        {"splitting_degree_histogram", histogram(degrees)}};
      if (!first_error.empty()) r.message = first_error;
      r.status = pass_if(accepted == want && law_fail == 0 && contra_fail == 0 && dec_fail == 0);
    }));
  }
}

void suite_contact(Context& cx, std::vector<Report>& out) {
  const auto ts = cx.targets({{'K', cx.shape({1, 1, 1})}}, "K");
  if (ts.empty()) out.push_back(not_applicable("contact", cx.cfg()));
  for (const auto& t : ts) {
    const Shape& S = t.shape;
    const Json params = target_params('K', S);
    const Field& F = S.field();
    const unsigned last = S.m() - 1;

    out.push_back(run_check("contact.bracket", params, [&](Report& r) {
      const std::size_t n = cx.samples(500);
      const std::uint64_t seed = cx.seed("contact.bracket");
      std::atomic<std::size_t> fail{0};
      parallel_for(n, [&](std::size_t i) {
        Rng rng(derive_seed(seed, i));
        const DPoly f = random_poly(S, rng, 8), g = random_poly(S, rng, 8);
        if (!(d_bracket(d_K_map(f), d_K_map(g)) == d_K_map(contact_bracket(f, g)))) ++fail;
      });
      // 1 is not central: <1, x_last> = 2
      const DPoly unit = contact_bracket(DPoly::constant(S, F.one()), DPoly::variable(S, last));
      r.evidence = Json{{"pairs", n}, {"failures", fail.load()}, {"bracket_of_1_with_last_variable", unit.to_string()}};
      r.status = pass_if(fail == 0 && unit == DPoly::constant(S, F.from_int(2)));
    }));

    out.push_back(run_check("contact.conjugation", params, [&](Report& r) {
      const std::size_t n = cx.samples(200);
      const std::uint64_t seed = cx.seed("contact.conjugation");
      std::atomic<std::size_t> fail{0};
      parallel_for(n, [&](std::size_t i) {
        Rng rng(derive_seed(seed, i));
        const DPoly f = random_poly(S, rng, 8);
        const Matrix mu = multiplication_matrix(f);
        if (!(contact_ad_matrix(f) * mu == mu * derivation_matrix(d_K_map(f)))) ++fail;
      });
      r.evidence = Json{{"samples", n}, {"failures", fail.load()}};
      r.status = pass_if(fail == 0);
    }));

    out.push_back(run_check("contact.char_poly", params, [&](Report& r) {
      const std::size_t n = cx.samples(50);
      const std::uint64_t seed = cx.seed("contact.char_poly");
      std::atomic<std::size_t> poly_fail{0}, transport_fail{0};
      parallel_for(n, [&](std::size_t i) {
        Rng rng(derive_seed(seed, i));
        const DPoly f = random_invertible(S, rng, 8);
        const Matrix ad = contact_ad_matrix(f), dk = derivation_matrix(d_K_map(f));
        if (!(char_poly(ad) == char_poly(dk))) ++poly_fail;
        // centraliser of f under the contact bracket is f times the constants of D_K(f)
        const Subspace consts = kernel(dk);
        const Matrix mu = multiplication_matrix(f);
        std::vector<Vector> moved;
        for (const auto& v : consts.vectors()) moved.push_back(mu.apply(v));
        if (!(kernel(ad) == Subspace::span(F, S.dim(), moved))) ++transport_fail;
      });
      r.evidence = Json{{"samples", n}, {"char_poly_failures", poly_fail.load()},
                        {"transport_failures", transport_fail.load()}};
      r.status = pass_if(poly_fail == 0 && transport_fail == 0);
    }));

    out.push_back(run_check("contact.centralisers", params, [&](Report& r) {
      const auto& fam = cx.k(S);
      const std::size_t n = cx.samples(50);
      const std::uint64_t seed = cx.seed("contact.centralisers");
      std::vector<std::size_t> full(n), pos(n);
      parallel_for(n, [&](std::size_t i) {
        Rng rng(derive_seed(seed, i));
        const auto wk = witness_K(sample_omega_K(fam, rng), fam);
        full[i] = wk.centraliser.dim();
        pos[i] = wk.in_filtration.dim();
      });
      const std::size_t bound = std::min<std::size_t>(S.m(), S.p());
      std::map<std::uint64_t, std::size_t> hf, hp;
      std::size_t fail = 0;
      for (std::size_t i = 0; i < n; ++i) {
        ++hf[full[i]];
        ++hp[pos[i]];
        if (full[i] < bound || pos[i] < 2) ++fail;
      }
      r.evidence = Json{{"samples", n},
                        {"bound_full", bound},
                        {"bound_positive", 2},
                        {"violations", fail},
                        {"centraliser_dims", histogram(hf)},
                        {"positive_part_dims", histogram(hp)}};
      r.status = fail == 0 ? Status::Pass : Status::TheoremViolation;
    }));
  }
}

void suite_witness(Context& cx, std::vector<Report>& out) {
  const auto ts = cx.targets({{'S', cx.shape({1, 1})}, {'H', cx.shape({1, 1})}, {'K', cx.shape({1, 1, 1})}}, "SHK");
  if (ts.empty()) out.push_back(not_applicable("witness", cx.cfg()));
  for (const auto& t : ts) {
    out.push_back(run_check("witness", target_params(t.type, t.shape), [&](Report& r) {
      const std::size_t n = cx.samples(t.type == 'K' ? 50 : 200);
      const std::uint64_t seed = cx.seed("witness" + algebra_name(t.type, t.shape));
      std::vector<char> ok(n, 0);
      std::vector<Json> example(n);
      std::atomic<std::size_t> min_positive{~std::size_t{0}};
      parallel_for(n, [&](std::size_t i) {
        Rng rng(derive_seed(seed, i));
        switch (t.type) {
          case 'S': {
            const auto& fam = cx.s(t.shape);
            const Deriv d = sample_omega_S(fam, rng);
            const auto wit = witness_S(d, fam);
            ok[i] = wit.ok();
            if (i == 0) example[i] = Json{{"D", d.to_string()}, {"f", wit.f.to_string()}, {"delta", wit.delta.to_string()}};
            break;
          }
          case 'H': {
            const auto& fam = cx.h(t.shape);
            const auto wit = witness_H(sample_omega_H(fam, rng), fam);
            ok[i] = wit.ok();
            if (i == 0) example[i] = Json{{"f", wit.f.to_string()}, {"delta", wit.delta.to_string()}};
            break;
          }
          default: {
            const auto& fam = cx.k(t.shape);
            const DPoly f = sample_omega_K(fam, rng);
            const auto wit = witness_K(f, fam);
            ok[i] = wit.centraliser.dim() >= wit.bound && wit.in_filtration.dim() >= 2;
            std::size_t cur = min_positive.load();
            while (wit.in_filtration.dim() < cur && !min_positive.compare_exchange_weak(cur, wit.in_filtration.dim())) {
            }
            if (i == 0) example[i] = Json{{"f", f.to_string()}, {"centraliser_dim", wit.centraliser.dim()}};
            break;
          }
        }
      });
      const auto passed = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
      r.evidence = Json{{"samples", n}, {"passed", passed}};
      if (n > 0) r.evidence["example"] = example[0];
      if (t.type == 'K' && n > 0) r.evidence["min_positive_centraliser_dim"] = min_positive.load();
      r.status = passed == n ? Status::Pass : Status::TheoremViolation;
      if (passed != n) r.message = "witness postconditions failed on " + std::to_string(n - passed) + " samples";
    }));
  }
}

void suite_nongeneration(Context& cx, std::vector<Report>& out) {
  const auto ts = cx.targets({{'S', cx.shape({1, 1})}, {'H', cx.shape({1, 1})}, {'K', cx.shape({1, 1, 1})}}, "SHK");
  if (ts.empty()) out.push_back(not_applicable("nongeneration", cx.cfg()));
  for (const auto& t : ts) {
    out.push_back(run_check("nongeneration", target_params(t.type, t.shape), [&](Report& r) {
      const SubalgebraHandle h = cx.simple(t);
      const std::size_t n = cx.samples(t.type == 'K' ? 50 : 200);
      const std::uint64_t seed = cx.seed("nongeneration" + algebra_name(t.type, t.shape));
      const int top = h.top_degree();
      const Subspace comp = h.component(top);
      Json probes = Json::array();
      std::size_t generating = 0;
      for (std::size_t i = 0; i < comp.dim(); ++i) {
        const Vector x = comp.vector(i);
        const auto pr = nongeneration_probe(x, h, n, derive_seed(seed, i));
        generating += pr.generating;
        Json j{{"x", cx.element_text(t, x)}, {"max_closure_dim", pr.max_dim}, {"min_closure_dim", pr.min_dim},
               {"generating_samples", pr.generating}};
        if (pr.first_generating) j["generating_y"] = cx.element_text(t, *pr.first_generating);
        probes.push_back(std::move(j));
      }
      r.evidence = Json{{"subalgebra", to_string(h.label())},
                        {"dim", h.dim()},
                        {"top_degree", top},
                        {"top_component_dim", comp.dim()},
                        {"samples_per_element", n},
                        {"probes", probes}};
      if (generating > 0) {
        r.status = Status::TheoremViolation;
        r.message = "a top-component element generated the whole algebra with a partner";
      } else {
        r.status = comp.dim() > 0 ? Status::Pass : Status::Fail;
      }
    }));
  }
}

void suite_sanity(Context& cx, std::vector<Report>& out) {
  const auto ts = cx.targets({{'H', cx.shape({1, 1})}}, "SHK");
  if (ts.empty()) out.push_back(not_applicable("sanity", cx.cfg()));
  for (const auto& t : ts) {
    Report rep = run_check("sanity", target_params(t.type, t.shape), [&](Report& r) {
      const SubalgebraHandle h = cx.simple(t);
      const Subspace top = h.component(h.top_degree());
      const std::uint64_t seed = cx.seed("sanity" + algebra_name(t.type, t.shape));
      Rng rng(seed);
      Vector x = h.random_element(rng);
      while (is_zero(x) || top.contains(x)) x = h.random_element(rng);
      const std::size_t n = cx.samples(50);
      const auto pr = nongeneration_probe(x, h, n, derive_seed(seed, 1));
      r.evidence = Json{{"x", cx.element_text(t, x)}, {"samples", n}, {"generating_samples", pr.generating},
                        {"max_closure_dim", pr.max_dim}, {"dim", h.dim()}};
      r.status = pass_if(pr.generating > 0);
      if (pr.generating == 0) r.message = "no sampled partner generated the algebra";
    });
    rep.gating = false;
    out.push_back(std::move(rep));
  }
}

void suite_audit(Context& cx, std::vector<Report>& out) {
  const auto ts = cx.targets({{'S', cx.shape({1, 1})}, {'H', cx.shape({1, 1})}, {'K', cx.shape({1, 1, 1})}}, "SHK");
  if (ts.empty()) out.push_back(not_applicable("audit", cx.cfg()));
  for (const auto& t : ts) {
    out.push_back(run_check("audit", target_params(t.type, t.shape), [&](Report& r) {
      const std::size_t n = cx.samples(50);
      const std::uint64_t seed = cx.seed("audit" + algebra_name(t.type, t.shape));
      std::function<Vector(Rng&)> omega;
      switch (t.type) {
        case 'S': {
          const auto& f = cx.s(t.shape);
          omega = [&f](Rng& rng) { return f.w.to_vector(sample_omega_S(f, rng)); };
          break;
        }
        case 'H': {
          const auto& f = cx.h(t.shape);
          omega = [&f](Rng& rng) { return f.w.to_vector(d_H_map(sample_omega_H(f, rng))); };
          break;
        }
        default: {
          const auto& f = cx.k(t.shape);
          omega = [&f](Rng& rng) { return f.algebra.to_vector(sample_omega_K(f, rng)); };
          break;
        }
      }
      const auto a = criterion_audit(cx.algebra(t), cx.simple(t), n, seed, omega);
      r.evidence = Json{{"is_ideal", a.is_ideal},
                        {"centraliser_of_ideal_dim", a.centraliser_of_h},
                        {"samples", a.samples},
                        {"positive_centralisers", a.positive_centraliser},
                        {"intersection_dim", a.intersection_dim},
                        {"intersection_contains_top", a.contains_top}};
      r.status = pass_if(a.ok());
    }));
  }
}

void suite_remark(Context& cx, std::vector<Report>& out) {
  auto ts = cx.targets({{'W', cx.shape({1})}, {'W', cx.shape({1, 1})}}, "W");
  if (ts.empty() || (cx.cfg().type && !ts.front().shape.is_ones())) {
    out.push_back(not_applicable("remark", cx.cfg()));
    return;
  }
  for (const auto& t : ts) {
    Report rep = run_check("remark", target_params('W', t.shape), [&](Report& r) {
      const Shape& S = t.shape;
      try {
        const auto pr = remark_W_probe(S, cx.seed("remark" + S.describe()));
        r.evidence = Json{{"x", pr.x.to_string()},
                          {"fixed_candidate", pr.candidate},
                          {"random_attempts", pr.attempts},
                          {"kernel_dim_on_nonnegative_part", pr.kernel_dim}};
        r.evidence["nilpotency_index"] = pr.nilpotency ? Json(*pr.nilpotency) : Json(nullptr);
        r.evidence["regular_nilpotent"] = pr.nilpotency == std::optional<std::uint64_t>{S.dim()};
        r.status = pass_if(pr.kernel_dim == 0);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SearchExhausted) throw;
        r.status = Status::Skipped;
        r.message = e.what();
      }
    });
    out.push_back(std::move(rep));
  }
}

using SuiteFn = void (*)(Context&, std::vector<Report>&);
const std::map<std::string, SuiteFn>& suite_table() {
  static const std::map<std::string, SuiteFn> t{
      {"jacobi", suite_jacobi},       {"divergence", suite_divergence},
      {"embedding", suite_embedding}, {"dimensions", suite_dimensions},
      {"decomposition", suite_decomposition}, {"contact", suite_contact},
      {"witness", suite_witness},     {"nongeneration", suite_nongeneration},
      {"sanity", suite_sanity},       {"audit", suite_audit},
      {"remark", suite_remark}};
  return t;
}

void require_type_shape(char type, const Shape& s) {
  switch (type) {
    case 'S':
      if (s.m() < 2) throw Error(ErrorCode::BadShape, "type S needs m >= 2");
      break;
    case 'H':
      if (s.m() % 2 != 0) throw Error(ErrorCode::BadShape, "type H needs an even m");
      break;
    case 'K':
      if (s.m() < 3 || s.m() % 2 == 0) throw Error(ErrorCode::BadShape, "type K needs an odd m >= 3");
      break;
    default:
      break;
  }
}

}  // namespace

const std::vector<std::string>& suite_names() { return kSuites; }

Shape config_shape(const RunConfig& c) {
  const char type = c.type.value_or('W');
  std::vector<unsigned> n;
  if (c.n) {
    n = *c.n;
    if (c.m && *c.m != n.size())
      throw Error(ErrorCode::InvalidArgument,
                  "--n lists " + std::to_string(n.size()) + " entries but --m is " + std::to_string(*c.m));
  } else {
    n.assign(c.m.value_or(type == 'K' ? 3 : 2), 1);
  }
  if (n.empty()) throw Error(ErrorCode::BadShape, "m must be at least 1");
  return Shape::make(Field::make(c.p), n);
}

void validate(const RunConfig& c) {
  Field::make(c.p);
  if (c.type && std::string_view("WSHK").find(*c.type) == std::string_view::npos)
    throw Error(ErrorCode::InvalidArgument, std::string("unknown type ") + *c.type);
  if (c.max_ext == 0) throw Error(ErrorCode::InvalidArgument, "max-ext must be at least 1");
  for (const auto& s : c.suites)
    if (!suite_table().count(s)) throw Error(ErrorCode::InvalidArgument, "unknown suite " + s);
  if (c.type || c.m || c.n) require_type_shape(c.type.value_or('W'), config_shape(c));
}

ReportDocument cmd_info(const RunConfig& c) {
  validate(c);
  const char type = c.type.value_or('W');
  const Shape S = config_shape(c);
  ReportDocument doc{to_json(c), {}};
  Report r;
  r.name = "info";
  r.parameters = target_params(type, S);
  const auto t0 = std::chrono::steady_clock::now();
  Json& ev = r.evidence;
  ev["dim_O"] = S.dim();
  switch (type) {
    case 'W': {
      const WAlgebra w = WAlgebra::make(S, c.dim_cap);
      ev["dim_W"] = w.dim();
      ev["grading"] = grading(SubalgebraHandle::whole(w.lie_ptr(), Label::W));
      break;
    }
    case 'S': {
      const auto f = build_S(S, c.dim_cap);
      ev["dim_W"] = f.w.dim();
      ev["dim_S"] = f.s.dim();
      ev["dim_S1"] = f.s1.dim();
      ev["dim_CS"] = f.cs.dim();
      ev["codim_S1_in_S"] = f.s.dim() - f.s1.dim();
      ev["codim_S1_in_CS"] = f.cs.dim() - f.s1.dim();
      ev["grading"] = grading(f.s1);
      break;
    }
    case 'H': {
      const auto f = build_H(S, c.dim_cap);
      ev["dim_W"] = f.w.dim();
      ev["dim_H"] = f.h.dim();
      ev["dim_H2"] = f.h2.dim();
      ev["grading"] = grading(f.h2);
      break;
    }
    case 'K': {
      const auto f = build_K(S, c.dim_cap);
      ev["dim_K"] = f.k.dim();
      ev["dim_K1"] = f.k1.dim();
      ev["codim_K1_in_K"] = f.k.dim() - f.k1.dim();
      ev["grading"] = grading(f.k1);
      break;
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  doc.reports.push_back(std::move(r));
  return doc;
}

ReportDocument cmd_verify(const RunConfig& c) {
  validate(c);
  Context cx(c);
  ReportDocument doc{to_json(c), {}};
  for (const auto& name : kSuites) {
    if (!c.suites.empty() && std::find(c.suites.begin(), c.suites.end(), name) == c.suites.end()) continue;
    suite_table().at(name)(cx, doc.reports);
  }
  return doc;
}

ReportDocument cmd_witness(const RunConfig& c) {
  validate(c);
  if (!c.type || *c.type == 'W') throw Error(ErrorCode::InvalidArgument, "witness needs --type S, H or K");
  if (!c.elem) throw Error(ErrorCode::InvalidArgument, "witness needs --elem");
  const char type = *c.type;
  const Shape S = config_shape(c);
  ReportDocument doc{to_json(c), {}};
  // parse before building anything so bad input is a config error
  std::optional<Deriv> d;
  std::optional<DPoly> f;
  if (type == 'S')
    d = parse_deriv(S, *c.elem);
  else
    f = parse_dpoly(S, *c.elem);

  doc.reports.push_back(run_check("witness", target_params(type, S), [&](Report& r) {
    Json& ev = r.evidence;
    r.parameters["elem"] = *c.elem;
    try {
      switch (type) {
        case 'S': {
          const auto fam = build_S(S, c.dim_cap);
          const auto w = witness_S(*d, fam);
          ev = Json{{"D", d->to_string()},          {"f", w.f.to_string()},
                    {"delta", w.delta.to_string()}, {"delta_nonzero", w.nonzero},
                    {"delta_in_S_ge_1", w.in_filtration}, {"bracket_D_delta_zero", w.commutes},
                    {"div_delta_zero", w.divergence_free}};
          r.status = w.ok() ? Status::Pass : Status::TheoremViolation;
          break;
        }
        case 'H': {
          const auto fam = build_H(S, c.dim_cap);
          const auto w = witness_H(*f, fam);
          ev = Json{{"f", w.f.to_string()},         {"D", w.d.to_string()},
                    {"delta", w.delta.to_string()}, {"delta_nonzero", w.nonzero},
                    {"delta_in_H_ge_1", w.in_filtration}, {"bracket_D_delta_zero", w.commutes}};
          r.status = w.ok() ? Status::Pass : Status::TheoremViolation;
          break;
        }
        default: {
          const auto fam = build_K(S, c.dim_cap);
          const auto w = witness_K(*f, fam);
          Json basis = Json::array();
          for (const auto& v : w.in_filtration.vectors()) basis.push_back(fam.algebra.from_vector(v).to_string());
          ev = Json{{"f", f->to_string()},
                    {"centraliser_dim", w.centraliser.dim()},
                    {"centraliser_bound", w.bound},
                    {"positive_centraliser_dim", w.in_filtration.dim()},
                    {"positive_centraliser_basis", basis}};
          r.status = Status::Pass;
          break;
        }
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotInOmega) throw;
      r.status = Status::Fail;
      r.message = e.what();
    }
  }));
  return doc;
}

}  // namespace cartanlie
