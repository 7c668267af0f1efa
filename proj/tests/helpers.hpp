#pragma once

#include "cartanlie/derivations.hpp"
#include "cartanlie/random.hpp"

namespace testing_helpers {

using namespace cartanlie;

inline DPoly random_dpoly(const Shape& S, Rng& rng, unsigned max_terms) {
  std::vector<Term> ts;
  const unsigned count = 1 + static_cast<unsigned>(rng.below(max_terms));
  for (unsigned i = 0; i < count; ++i)
    ts.push_back({static_cast<std::uint32_t>(rng.below(S.dim())), rng.scalar(S.field())});
  return DPoly::from_terms(S, ts);
}

inline Deriv random_deriv(const Shape& S, Rng& rng, unsigned max_terms) {
  std::vector<DPoly> c;
  for (unsigned k = 0; k < S.m(); ++k) c.push_back(random_dpoly(S, rng, max_terms));
  return Deriv(S, c);
}

}  // namespace testing_helpers
