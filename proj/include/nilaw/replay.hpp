#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "nilaw/density.hpp"
#include "nilaw/group.hpp"
#include "nilaw/pattern.hpp"

namespace nilaw {

constexpr uint64_t kDefaultWitnessBudget = 134217728ull;  // 512^3 bits

// Bitset over G^3 marking the triples whose left-normed commutator is the
// identity, indexed x1*n^2 + x2*n + x3. The popcount is cross-checked against
// the exact density on construction.
class WitnessSet {
 public:
  WitnessSet(const Group& g, uint64_t bit_budget = kDefaultWitnessBudget, int workers = 0);

  const Group& group() const { return *g_; }

  bool contains(element_t a, element_t b, element_t c) const {
    uint64_t idx = (uint64_t(a) * n_ + b) * n_ + c;
    return (bits_[idx >> 6] >> (idx & 63)) & 1;
  }

  uint64_t popcount() const { return popcount_; }

 private:
  const Group* g_;
  uint64_t n_;
  uint64_t popcount_ = 0;
  std::vector<uint64_t> bits_;
};

using Triple = std::array<element_t, 3>;

// First triple x (odometer order) whose pattern-translated tuples all lie in
// X, or nullopt. The pattern must be a right pattern of arity 3.
std::optional<Triple> translate_intersection_nonempty(const WitnessSet& x, const Triple& g,
                                                      const TranslationPattern& p =
                                                          TranslationPattern::canonical_right());

// |A  ∩ Au_1 ∩ ... ∩ Au_k| / |G| for A given as a bitset over G.
Rational measure_translate_intersection(const Group& g, const std::vector<uint64_t>& a_bits,
                                        std::span<const element_t> us);

// Symmetric identity-containing set grown greedily in index order; every
// g-triple over the set carries a stored witness. The map key is the
// odometer index (g1*n + g2)*n + g3.
struct AdmissibleSet {
  std::vector<element_t> members;
  std::map<uint64_t, Triple> certificates;
  uint64_t rejected_candidates = 0;
};

AdmissibleSet find_admissible_u(const Group& g, const WitnessSet& x, int workers = 0);

struct ReplayResult {
  DensityEstimate density;  // exact law-set density from the witness popcount
  AdmissibleSet u;
  Subgroup h;
  std::optional<int> h_class;
  int index = 0;
};

// Full pipeline: witness set -> admissible U -> H = <U> -> class certificate.
// The certified class <= 2 is re-checked through the lemma evaluators; a
// failure aborts with a soundness error (it would contradict a theorem).
ReplayResult replay(const Group& g, uint64_t witness_budget = kDefaultWitnessBudget,
                    int workers = 0);

// Self-contained JSON bundle for the independent `verify` checker.
std::string certificate_json(const Group& g, const std::string& spec, const ReplayResult& r);

}  // namespace nilaw
