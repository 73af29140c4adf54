#pragma once

#include <random>

#include "brjuno/cf.hpp"

namespace testutil {

// Deterministic random eventually periodic specs.
inline brjuno::CFSpec random_spec(std::mt19937& rng, long max_q = 20) {
  std::uniform_int_distribution<long> plen(0, 4), per(1, 3), q(1, max_q);
  brjuno::CFSpec s;
  long np = plen(rng), pp = per(rng);
  for (long i = 0; i < np; ++i) s.prefix.push_back(q(rng));
  for (long i = 0; i < pp; ++i) s.period.push_back(q(rng));
  return s;
}

}  // namespace testutil
