#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilaw/group.hpp"
#include "nilaw/pattern.hpp"

namespace nilaw {

constexpr uint64_t kDefaultSweepBudget = 16777216ull;  // 2^24 instances
constexpr uint64_t kDefaultSearchTrials = 1000000ull;
constexpr int kMaxViolationsKept = 16;

// Bit r set iff the commutator of row r's translated tuple is the identity.
uint64_t premise_mask(const Group& g, const TranslationPattern& p,
                      std::span<const element_t> x, std::span<const element_t> gs);
bool premises_hold(const Group& g, const TranslationPattern& p,
                   std::span<const element_t> x, std::span<const element_t> gs);
bool conclusion_holds(const Group& g, std::span<const element_t> gs);

// An instance whose premises all hold while the conclusion fails. Every
// counterexample is re-verified through a second, independently coded
// evaluation path before it is reported; `transcript` is that re-check.
struct Counterexample {
  std::string group_name;
  std::vector<element_t> x;
  std::vector<element_t> g;
  element_t conclusion_value = 0;
  std::vector<std::string> transcript;
};

struct SweepReport {
  bool exhaustive = true;
  uint64_t tuples_scanned = 0;  // instances in exhaustive mode, trials otherwise
  uint64_t premise_count = 0;
  bool vacuous = false;  // premise_count == 0
  uint64_t violations_total = 0;
  std::vector<Counterexample> violations;  // first kMaxViolationsKept in scan order
};

// Scans all |G|^(2*arity) instances in odometer order
// (x_1..x_a, g_1..g_a). Budget is an instance count; exceeding it is an
// error (use the randomized verifier instead).
SweepReport verify_lemma_exhaustive(const Group& g, const TranslationPattern& p,
                                    uint64_t budget = kDefaultSweepBudget, int workers = 0);

// Uniform instances; trial t draws its coordinates statelessly from the
// seed, so reports are identical for any worker count.
SweepReport verify_lemma_randomized(const Group& g, const TranslationPattern& p,
                                    uint64_t trials, uint64_t seed, int workers = 0);

struct SearchOutcome {
  SweepReport sweep;
  std::optional<Counterexample> found;
  std::string certificate;  // exhaustion/coverage statement when no hit
  uint64_t seed = 0;
  bool used_seed = false;
};

// Left version of the canonical pattern: exhaustive when |G|^6 fits the
// budget, sampled otherwise (seed then required).
SearchOutcome search_left_version(const Group& g, uint64_t budget = kDefaultSweepBudget,
                                  std::optional<uint64_t> seed = std::nullopt,
                                  uint64_t trials = kDefaultSearchTrials, int workers = 0);

// Arity-4 variant over 8-tuples; pattern4 may be user-supplied.
SearchOutcome search_length4(const Group& g, const TranslationPattern& pattern4,
                             uint64_t budget = kDefaultSweepBudget,
                             std::optional<uint64_t> seed = std::nullopt,
                             uint64_t trials = kDefaultSearchTrials, int workers = 0);

struct IdentityReport {
  uint64_t expansion_checks = 0;  // [ab,c] and [a,bc] expansions over G^3
  uint64_t chain_instances = 0;   // premise-satisfying 6-tuples checked
  uint64_t failures = 0;
};

// Exhaustively checks the commutator expansions the proof chain relies on,
// and on every premise-satisfying instance the three derived relations plus
// the conclusion. Requires |G| <= 24.
IdentityReport proof_step_identities(const Group& g, int workers = 0);

}  // namespace nilaw
