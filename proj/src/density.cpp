#include "nilaw/density.hpp"

#include <cmath>

#include "nilaw/parallel.hpp"
#include "nilaw/rng.hpp"

namespace nilaw {

namespace {

// n^k with saturation; anything above limit comes back as limit+1.
uint64_t pow_saturating(uint64_t n, int k, uint64_t limit) {
  unsigned __int128 acc = 1;
  for (int i = 0; i < k; ++i) {
    acc *= n;
    if (acc > limit) return limit + 1;
  }
  return uint64_t(acc);
}

// Tuples completing a prefix whose running commutator is c: the final
// coordinate must centralize the running value, and if the running value is
// already trivial every deeper commutator stays trivial.
uint64_t count_suffix(const Group& g, const std::vector<int>& cent, int k, int depth,
                      element_t running) {
  const uint64_t n = uint64_t(g.order());
  if (running == 0) {
    uint64_t free_coords = 1;
    for (int i = depth; i < k; ++i) free_coords *= n;
    return free_coords * n;
  }
  if (depth == k) return uint64_t(cent[running]);
  uint64_t total = 0;
  for (element_t x = 0; x < g.order(); ++x)
    total += count_suffix(g, cent, k, depth + 1, g.comm(running, x));
  return total;
}

}  // namespace

double DensityEstimate::value() const {
  if (mode == Mode::kExact) return double(numerator) / double(denominator);
  return samples == 0 ? 0.0 : double(hits) / double(samples);
}

std::vector<int> centralizer_sizes(const Group& g) {
  const int n = g.order();
  std::vector<int> cent(n, 0);
  for (element_t c = 0; c < n; ++c) {
    int size = 0;
    for (element_t x = 0; x < n; ++x)
      if (g.commute(c, x)) ++size;
    cent[c] = size;
  }
  return cent;
}

DensityEstimate exact_density(const Group& g, int k, uint64_t budget, int workers) {
  if (k < 1) fail(ErrorKind::kInvalidArgument, "density requires k >= 1");
  const uint64_t n = uint64_t(g.order());
  uint64_t prefixes = pow_saturating(n, k, budget);
  if (prefixes > budget)
    fail(ErrorKind::kBudget, "exact density needs " + std::to_string(g.order()) + "^" +
                                 std::to_string(k) + " prefix enumerations, above the budget " +
                                 std::to_string(budget) + "; use sampling (--samples) instead");

  std::vector<int> cent = centralizer_sizes(g);

  // partition on the first coordinate; partial sums merge by addition
  std::vector<uint64_t> partial(g.order(), 0);
  run_tasks(size_t(g.order()), workers, [&](size_t x1) {
    partial[x1] = count_suffix(g, cent, k, 1, element_t(x1));
  });
  uint64_t numerator = 0;
  for (uint64_t p : partial) numerator += p;

  DensityEstimate d;
  d.mode = DensityEstimate::Mode::kExact;
  d.numerator = numerator;
  d.denominator = prefixes * n;
  return d;
}

DensityEstimate mc_density(const Group& g, int k, uint64_t samples, uint64_t seed, int workers) {
  if (k < 1) fail(ErrorKind::kInvalidArgument, "density requires k >= 1");
  if (samples < 1) fail(ErrorKind::kInvalidArgument, "sampling requires samples >= 1");
  const uint64_t n = uint64_t(g.order());
  const uint64_t draws_per_sample = uint64_t(k) + 1;

  auto chunks = make_chunks(samples, workers, 4096);
  std::vector<uint64_t> chunk_hits(chunks.size(), 0);
  run_tasks(chunks.size(), workers, [&](size_t ci) {
    uint64_t local = 0;
    for (uint64_t s = chunks[ci].lo; s < chunks[ci].hi; ++s) {
      uint64_t base = s * draws_per_sample;
      element_t acc = element_t(SplitMix64::bounded_at(seed, base, n));
      for (uint64_t t = 1; t < draws_per_sample; ++t)
        acc = g.comm(acc, element_t(SplitMix64::bounded_at(seed, base + t, n)));
      if (acc == 0) ++local;
    }
    chunk_hits[ci] = local;
  });
  uint64_t hits = 0;
  for (uint64_t h : chunk_hits) hits += h;

  DensityEstimate d;
  d.mode = DensityEstimate::Mode::kSampled;
  d.samples = samples;
  d.hits = hits;
  d.seed = seed;

  // Wilson score interval, z = 1.96
  const double z = 1.96;
  double ns = double(samples);
  double phat = double(hits) / ns;
  double denom = 1.0 + z * z / ns;
  double center = (phat + z * z / (2.0 * ns)) / denom;
  double half = (z / denom) * std::sqrt(phat * (1.0 - phat) / ns + z * z / (4.0 * ns * ns));
  d.ci_lo = std::max(0.0, center - half);
  d.ci_hi = std::min(1.0, center + half);
  return d;
}

int conjugacy_class_count(const Group& g) {
  const int n = g.order();
  std::vector<char> seen(n, 0);
  int classes = 0;
  for (element_t a = 0; a < n; ++a) {
    if (seen[a]) continue;
    ++classes;
    for (element_t b = 0; b < n; ++b) seen[g.conj(a, b)] = 1;
  }
  return classes;
}

Rational commuting_probability_via_classes(const Group& g) {
  return Rational(conjugacy_class_count(g), g.order());
}

}  // namespace nilaw
