#include "nilaw/lemma.hpp"

#include <algorithm>

#include "nilaw/parallel.hpp"
#include "nilaw/rng.hpp"

namespace nilaw {

namespace {

uint64_t pow_u64(uint64_t n, int k) {
  uint64_t acc = 1;
  for (int i = 0; i < k; ++i) acc *= n;
  return acc;
}

// n^k with saturation at limit+1 (instance spaces can exceed 64 bits).
uint64_t pow_saturating(uint64_t n, int k, uint64_t limit) {
  unsigned __int128 acc = 1;
  for (int i = 0; i < k; ++i) {
    acc *= n;
    if (acc > limit) return limit + 1;
  }
  return uint64_t(acc);
}

inline element_t translated(const Group& g, bool left, element_t xc, int t, const element_t* gs) {
  if (t == 0) return xc;
  return left ? g.mul(gs[t - 1], xc) : g.mul(xc, gs[t - 1]);
}

inline bool row_holds(const Group& g, bool left, const std::array<int, 4>& row, int arity,
                      const element_t* x, const element_t* gs) {
  element_t acc = translated(g, left, x[0], row[0], gs);
  for (int c = 1; c < arity; ++c) acc = g.comm(acc, translated(g, left, x[c], row[c], gs));
  return acc == 0;
}

// Rows grouped by the largest translation index they use, so that inside the
// odometer (x_1..x_a, g_1..g_a) each row is tested as early as possible.
// Within a stage, rows keep pattern order (the default evaluation order).
struct StagedRows {
  std::array<std::vector<std::array<int, 4>>, 5> by_stage;
  int arity = 3;
  bool left = false;

  explicit StagedRows(const TranslationPattern& p) {
    p.validate();
    arity = p.arity;
    left = p.side == TranslationPattern::Side::kLeft;
    for (const auto& row : p.rows) {
      int hi = 0;
      for (int c = 0; c < p.arity; ++c) hi = std::max(hi, row[c]);
      by_stage[hi].push_back(row);
    }
  }

  bool stage_holds(const Group& g, int stage, const element_t* x, const element_t* gs) const {
    for (const auto& row : by_stage[stage])
      if (!row_holds(g, left, row, arity, x, gs)) return false;
    return true;
  }
};

struct RawViolation {
  uint64_t index;  // odometer instance index (or trial number)
  std::array<element_t, 4> x{};
  std::array<element_t, 4> g{};
};

struct ChunkResult {
  uint64_t premise_count = 0;
  uint64_t violations_total = 0;
  std::vector<RawViolation> kept;
};

inline void record_violation(ChunkResult& out, uint64_t index, const element_t* x,
                             const element_t* g, int arity) {
  ++out.violations_total;
  if (out.kept.size() < size_t(kMaxViolationsKept)) {
    RawViolation v;
    v.index = index;
    for (int c = 0; c < arity; ++c) {
      v.x[c] = x[c];
      v.g[c] = g[c];
    }
    out.kept.push_back(v);
  }
}

// Exhaustive scan of one x-prefix range [xlo, xhi). Instance index is the
// flat odometer position, so merged violation lists stay in global order.
void sweep_chunk(const Group& grp, const StagedRows& s, uint64_t xlo, uint64_t xhi,
                 ChunkResult& out) {
  const element_t n = element_t(grp.order());
  const int a = s.arity;
  const uint64_t g_space = pow_u64(uint64_t(n), a);
  element_t x[4] = {0, 0, 0, 0};
  element_t g[4] = {0, 0, 0, 0};
  for (uint64_t xf = xlo; xf < xhi; ++xf) {
    uint64_t rem = xf;
    for (int c = a - 1; c >= 0; --c) {
      x[c] = element_t(rem % n);
      rem /= n;
    }
    if (!s.stage_holds(grp, 0, x, g)) continue;
    const uint64_t x_base = xf * g_space;
    if (a == 3) {
      for (g[0] = 0; g[0] < n; ++g[0]) {
        if (!s.stage_holds(grp, 1, x, g)) continue;
        for (g[1] = 0; g[1] < n; ++g[1]) {
          if (!s.stage_holds(grp, 2, x, g)) continue;
          for (g[2] = 0; g[2] < n; ++g[2]) {
            if (!s.stage_holds(grp, 3, x, g)) continue;
            ++out.premise_count;
            if (grp.comm(grp.comm(g[0], g[1]), g[2]) != 0)
              record_violation(out, x_base + (uint64_t(g[0]) * n + g[1]) * n + g[2], x, g, 3);
          }
        }
      }
    } else {
      for (g[0] = 0; g[0] < n; ++g[0]) {
        if (!s.stage_holds(grp, 1, x, g)) continue;
        for (g[1] = 0; g[1] < n; ++g[1]) {
          if (!s.stage_holds(grp, 2, x, g)) continue;
          for (g[2] = 0; g[2] < n; ++g[2]) {
            if (!s.stage_holds(grp, 3, x, g)) continue;
            for (g[3] = 0; g[3] < n; ++g[3]) {
              if (!s.stage_holds(grp, 4, x, g)) continue;
              ++out.premise_count;
              if (grp.comm(grp.comm(grp.comm(g[0], g[1]), g[2]), g[3]) != 0)
                record_violation(
                    out,
                    x_base + ((uint64_t(g[0]) * n + g[1]) * n + g[2]) * n + g[3], x, g, 4);
            }
          }
        }
      }
    }
  }
}

// Independent re-verification path: different commutator formula
// ([a,b] = (ba)^-1 (ab)), rows walked in reverse, no shared evaluation code
// with the sweep kernel. Returns the transcript; throws if it disagrees with
// the caller's claim (premises hold, conclusion fails).
Counterexample recheck_violation(const Group& grp, const TranslationPattern& p,
                                 const element_t* x, const element_t* g) {
  auto comm2 = [&](element_t a, element_t b) {
    return grp.mul(grp.inv(grp.mul(b, a)), grp.mul(a, b));
  };
  const bool left = p.side == TranslationPattern::Side::kLeft;
  Counterexample ce;
  ce.group_name = grp.name();
  ce.x.assign(x, x + p.arity);
  ce.g.assign(g, g + p.arity);

  std::vector<std::string> transcript;
  bool all_premises = true;
  for (size_t r = p.rows.size(); r-- > 0;) {
    const auto& row = p.rows[r];
    std::vector<element_t> tuple(p.arity);
    for (int c = 0; c < p.arity; ++c) {
      if (row[c] == 0)
        tuple[c] = x[c];
      else
        tuple[c] = left ? grp.mul(g[row[c] - 1], x[c]) : grp.mul(x[c], g[row[c] - 1]);
    }
    element_t acc = tuple[0];
    for (int c = 1; c < p.arity; ++c) acc = comm2(acc, tuple[c]);
    std::string line = "row " + std::to_string(r) + ": tuple=(";
    for (int c = 0; c < p.arity; ++c) line += (c ? "," : "") + std::to_string(tuple[c]);
    line += ") commutator=" + std::to_string(acc) + (acc == 0 ? " (law holds)" : " (LAW FAILS)");
    transcript.push_back(std::move(line));
    if (acc != 0) all_premises = false;
  }
  std::reverse(transcript.begin(), transcript.end());

  element_t conclusion = g[0];
  for (int c = 1; c < p.arity; ++c) conclusion = comm2(conclusion, g[c]);
  transcript.push_back("conclusion commutator of g = " + std::to_string(conclusion) +
                       (conclusion == 0 ? " (identity)" : " (non-identity)"));

  if (!all_premises || conclusion == 0)
    fail(ErrorKind::kSoundness,
         "independent re-verification disagrees with the sweep kernel on a reported violation");

  ce.conclusion_value = conclusion;
  ce.transcript = std::move(transcript);
  return ce;
}

SweepReport finish_report(const Group& grp, const TranslationPattern& p,
                          std::vector<ChunkResult>& chunks, bool exhaustive,
                          uint64_t tuples_scanned) {
  SweepReport rep;
  rep.exhaustive = exhaustive;
  rep.tuples_scanned = tuples_scanned;
  std::vector<RawViolation> raw;
  for (auto& c : chunks) {
    rep.premise_count += c.premise_count;
    rep.violations_total += c.violations_total;
    for (auto& v : c.kept)
      if (raw.size() < size_t(kMaxViolationsKept)) raw.push_back(v);
  }
  rep.vacuous = rep.premise_count == 0;
  for (const auto& v : raw)
    rep.violations.push_back(recheck_violation(grp, p, v.x.data(), v.g.data()));
  return rep;
}

}  // namespace

uint64_t premise_mask(const Group& g, const TranslationPattern& p,
                      std::span<const element_t> x, std::span<const element_t> gs) {
  p.validate();
  if (int(x.size()) != p.arity || int(gs.size()) != p.arity)
    fail(ErrorKind::kInvalidArgument, "instance size does not match pattern arity");
  for (element_t e : x)
    if (!g.valid_element(e)) fail(ErrorKind::kInvalidArgument, "x element out of range");
  for (element_t e : gs)
    if (!g.valid_element(e)) fail(ErrorKind::kInvalidArgument, "g element out of range");
  const bool left = p.side == TranslationPattern::Side::kLeft;
  uint64_t mask = 0;
  for (size_t r = 0; r < p.rows.size(); ++r)
    if (row_holds(g, left, p.rows[r], p.arity, x.data(), gs.data())) mask |= uint64_t(1) << r;
  return mask;
}

bool premises_hold(const Group& g, const TranslationPattern& p, std::span<const element_t> x,
                   std::span<const element_t> gs) {
  uint64_t full = p.rows.size() >= 64 ? ~uint64_t(0) : (uint64_t(1) << p.rows.size()) - 1;
  return premise_mask(g, p, x, gs) == full;
}

bool conclusion_holds(const Group& g, std::span<const element_t> gs) {
  return g.comm(gs) == 0;
}

SweepReport verify_lemma_exhaustive(const Group& g, const TranslationPattern& p, uint64_t budget,
                                    int workers) {
  p.validate();
  if (budget > (uint64_t(1) << 62)) budget = uint64_t(1) << 62;
  const uint64_t n = uint64_t(g.order());
  uint64_t instances = pow_saturating(n, 2 * p.arity, budget);
  if (instances > budget)
    fail(ErrorKind::kBudget,
         "exhaustive sweep needs " + std::to_string(g.order()) + "^" +
             std::to_string(2 * p.arity) + " instances, above the budget " +
             std::to_string(budget) + "; use the randomized verifier or raise the budget");

  StagedRows staged(p);
  uint64_t x_total = pow_u64(n, p.arity);
  auto chunks = make_chunks(x_total, workers, 64);
  std::vector<ChunkResult> results(chunks.size());
  run_tasks(chunks.size(), workers, [&](size_t ci) {
    sweep_chunk(g, staged, chunks[ci].lo, chunks[ci].hi, results[ci]);
  });
  return finish_report(g, p, results, /*exhaustive=*/true, instances);
}

SweepReport verify_lemma_randomized(const Group& g, const TranslationPattern& p, uint64_t trials,
                                    uint64_t seed, int workers) {
  p.validate();
  if (trials < 1) fail(ErrorKind::kInvalidArgument, "randomized verification requires trials >= 1");
  StagedRows staged(p);
  const uint64_t n = uint64_t(g.order());
  const int a = p.arity;
  const uint64_t draws = uint64_t(2 * a);

  auto chunks = make_chunks(trials, workers, 4096);
  std::vector<ChunkResult> results(chunks.size());
  run_tasks(chunks.size(), workers, [&](size_t ci) {
    ChunkResult& out = results[ci];
    element_t x[4] = {0, 0, 0, 0};
    element_t gs[4] = {0, 0, 0, 0};
    for (uint64_t t = chunks[ci].lo; t < chunks[ci].hi; ++t) {
      uint64_t base = t * draws;
      for (int c = 0; c < a; ++c) x[c] = element_t(SplitMix64::bounded_at(seed, base + c, n));
      for (int c = 0; c < a; ++c)
        gs[c] = element_t(SplitMix64::bounded_at(seed, base + a + c, n));
      bool ok = true;
      for (int stage = 0; stage <= a && ok; ++stage) ok = staged.stage_holds(g, stage, x, gs);
      if (!ok) continue;
      ++out.premise_count;
      element_t conclusion = gs[0];
      for (int c = 1; c < a; ++c) conclusion = g.comm(conclusion, gs[c]);
      if (conclusion != 0) record_violation(out, t, x, gs, a);
    }
  });
  return finish_report(g, p, results, /*exhaustive=*/false, trials);
}

namespace {

SearchOutcome run_search(const Group& g, const TranslationPattern& p, uint64_t budget,
                         std::optional<uint64_t> seed, uint64_t trials, int workers) {
  if (budget > (uint64_t(1) << 62)) budget = uint64_t(1) << 62;
  const uint64_t n = uint64_t(g.order());
  uint64_t instances = pow_saturating(n, 2 * p.arity, budget);

  SearchOutcome out;
  if (instances <= budget) {
    out.sweep = verify_lemma_exhaustive(g, p, budget, workers);
  } else {
    if (!seed)
      fail(ErrorKind::kInvalidArgument,
           "the instance space of " + g.name() +
               " exceeds the exhaustive budget; a sampled search needs an explicit seed");
    out.sweep = verify_lemma_randomized(g, p, trials, *seed, workers);
    out.seed = *seed;
    out.used_seed = true;
  }
  if (!out.sweep.violations.empty()) {
    out.found = out.sweep.violations.front();
  } else if (out.sweep.exhaustive) {
    out.certificate = "no counterexample in " + g.name() + ": exhausted all " +
                      std::to_string(out.sweep.tuples_scanned) + " instances";
  } else {
    out.certificate = "no counterexample found in " + std::to_string(out.sweep.tuples_scanned) +
                      " sampled instances of " + g.name() + " (seed " + std::to_string(out.seed) +
                      "; not exhaustive)";
  }
  return out;
}

}  // namespace

SearchOutcome search_left_version(const Group& g, uint64_t budget, std::optional<uint64_t> seed,
                                  uint64_t trials, int workers) {
  return run_search(g, TranslationPattern::canonical_left(), budget, seed, trials, workers);
}

SearchOutcome search_length4(const Group& g, const TranslationPattern& pattern4, uint64_t budget,
                             std::optional<uint64_t> seed, uint64_t trials, int workers) {
  pattern4.validate();
  if (pattern4.arity != 4)
    fail(ErrorKind::kInvalidArgument, "length-4 search requires an arity-4 pattern");
  return run_search(g, pattern4, budget, seed, trials, workers);
}

IdentityReport proof_step_identities(const Group& g, int workers) {
  if (g.order() > 24)
    fail(ErrorKind::kBudget, "proof identity checks are exhaustive and capped at order 24");

  IdentityReport rep;
  const element_t n = element_t(g.order());

  // the two expansions every derivation step instantiates:
  //   [ab,c] = [a,c]^b [b,c]   and   [a,bc] = [a,c] [a,b]^c
  std::vector<uint64_t> expansion_failures(size_t(n), 0);
  run_tasks(size_t(n), workers, [&](size_t ai) {
    element_t a = element_t(ai);
    uint64_t bad = 0;
    for (element_t b = 0; b < n; ++b)
      for (element_t c = 0; c < n; ++c) {
        if (g.comm(g.mul(a, b), c) != g.mul(g.conj(g.comm(a, c), b), g.comm(b, c))) ++bad;
        if (g.comm(a, g.mul(b, c)) != g.mul(g.comm(a, c), g.conj(g.comm(a, b), c))) ++bad;
      }
    expansion_failures[ai] = bad;
  });
  rep.expansion_checks = 2 * uint64_t(n) * n * n;
  for (uint64_t f : expansion_failures) rep.failures += f;

  // on every premise-satisfying instance, the three derived relations the
  // proof chain establishes, then the conclusion
  TranslationPattern p = TranslationPattern::canonical_right();
  StagedRows staged(p);
  uint64_t x_total = pow_u64(uint64_t(n), 3);
  auto chunks = make_chunks(x_total, workers, 64);
  struct ChainResult {
    uint64_t instances = 0;
    uint64_t failures = 0;
  };
  std::vector<ChainResult> results(chunks.size());
  run_tasks(chunks.size(), workers, [&](size_t ci) {
    ChainResult& out = results[ci];
    element_t x[4] = {0, 0, 0, 0};
    element_t gs[4] = {0, 0, 0, 0};
    for (uint64_t xf = chunks[ci].lo; xf < chunks[ci].hi; ++xf) {
      uint64_t rem = xf;
      for (int c = 2; c >= 0; --c) {
        x[c] = element_t(rem % n);
        rem /= n;
      }
      if (!staged.stage_holds(g, 0, x, gs)) continue;
      for (gs[0] = 0; gs[0] < n; ++gs[0]) {
        if (!staged.stage_holds(g, 1, x, gs)) continue;
        for (gs[1] = 0; gs[1] < n; ++gs[1]) {
          if (!staged.stage_holds(g, 2, x, gs)) continue;
          for (gs[2] = 0; gs[2] < n; ++gs[2]) {
            if (!staged.stage_holds(g, 3, x, gs)) continue;
            ++out.instances;
            bool ok = g.comm(g.comm(g.mul(x[0], gs[0]), gs[1]), gs[2]) == 0 &&  // derived (I)
                      g.comm(g.comm(x[0], gs[1]), gs[0]) == 0 &&                // derived (II)
                      g.comm(g.comm(x[0], gs[1]), gs[2]) == 0 &&                // derived (III)
                      g.comm(g.comm(gs[0], gs[1]), gs[2]) == 0;                 // conclusion
            if (!ok) ++out.failures;
          }
        }
      }
    }
  });
  for (const auto& r : results) {
    rep.chain_instances += r.instances;
    rep.failures += r.failures;
  }
  return rep;
}

}  // namespace nilaw
