#pragma once

#include <cstdint>
#include <vector>

#include "nilaw/group.hpp"
#include "nilaw/rational.hpp"

namespace nilaw {

constexpr uint64_t kDefaultDensityBudget = 1000000000ull;

// Counting density of the k-step law set: the proportion of (k+1)-tuples
// whose left-normed commutator is the identity. Exact mode keeps the raw
// numerator over denominator = |G|^{k+1}; sampled mode carries a Wilson 95%
// interval and the seed that reproduces it.
struct DensityEstimate {
  enum class Mode { kExact, kSampled };
  Mode mode = Mode::kExact;

  uint64_t numerator = 0;
  uint64_t denominator = 1;

  uint64_t samples = 0;
  uint64_t hits = 0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
  uint64_t seed = 0;

  double value() const;
  Rational exact_value() const { return Rational(int64_t(numerator), int64_t(denominator)); }
};

// Enumerates k-tuple prefixes (budget: n^k operations) and collapses the
// final coordinate through a precomputed centralizer-size table.
DensityEstimate exact_density(const Group& g, int k, uint64_t budget = kDefaultDensityBudget,
                              int workers = 0);

// Uniform tuples over G^{k+1}; deterministic for a fixed seed, independent of
// worker count. Wilson score interval at z = 1.96.
DensityEstimate mc_density(const Group& g, int k, uint64_t samples, uint64_t seed,
                           int workers = 0);

// Independent k=1 oracle: k(G)/|G| with k(G) the number of conjugacy classes.
Rational commuting_probability_via_classes(const Group& g);

int conjugacy_class_count(const Group& g);
std::vector<int> centralizer_sizes(const Group& g);

}  // namespace nilaw
