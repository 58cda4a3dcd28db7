#include "nilaw/replay.hpp"

#include <algorithm>

#include "nilaw/lemma.hpp"
#include "nilaw/parallel.hpp"
#include "nilaw/report.hpp"

namespace nilaw {

WitnessSet::WitnessSet(const Group& g, uint64_t bit_budget, int workers)
    : g_(&g), n_(uint64_t(g.order())) {
  uint64_t total_bits = n_ * n_ * n_;
  if (total_bits > bit_budget)
    fail(ErrorKind::kBudget, "witness bitset needs " + std::to_string(total_bits) +
                                 " bits for order " + std::to_string(g.order()) +
                                 ", above the budget " + std::to_string(bit_budget));

  const int n = g.order();
  const size_t row_words = (size_t(n) + 63) / 64;

  // commute_rows[c] marks the x that centralize c; the witness row for
  // (x1, x2) is exactly the commute row of [x1, x2]
  std::vector<uint64_t> commute_rows(size_t(n) * row_words, 0);
  run_tasks(size_t(n), workers, [&](size_t c) {
    uint64_t* row = commute_rows.data() + c * row_words;
    for (element_t x = 0; x < n; ++x)
      if (g.commute(element_t(c), x)) row[size_t(x) >> 6] |= uint64_t(1) << (x & 63);
  });

  // Rows are packed end-to-end at n-bit (not word) granularity, so n must be
  // copied bitwise unless n is a multiple of 64. Simpler: store each (x1,x2)
  // row at bit offset (x1*n + x2)*n in the flat bitset.
  bits_.assign((total_bits + 63) / 64, 0);
  std::vector<uint64_t> partial_pop(size_t(n), 0);
  run_tasks(size_t(n), workers, [&](size_t x1) {
    uint64_t pop = 0;
    for (element_t x2 = 0; x2 < n; ++x2) {
      element_t c = g.comm(element_t(x1), x2);
      const uint64_t* row = commute_rows.data() + size_t(c) * row_words;
      uint64_t base = (uint64_t(x1) * n + uint64_t(x2)) * n;
      for (element_t x3 = 0; x3 < n; ++x3) {
        if ((row[size_t(x3) >> 6] >> (x3 & 63)) & 1) {
          uint64_t idx = base + uint64_t(x3);
          bits_[idx >> 6] |= uint64_t(1) << (idx & 63);
          ++pop;
        }
      }
    }
    partial_pop[x1] = pop;
  });
  for (uint64_t p : partial_pop) popcount_ += p;

  // cross-check against the density module (two different counting routes)
  DensityEstimate d = exact_density(g, 2);
  if (d.numerator != popcount_ || d.denominator != total_bits)
    fail(ErrorKind::kSoundness,
         "witness popcount " + std::to_string(popcount_) + "/" + std::to_string(total_bits) +
             " disagrees with exact density " + std::to_string(d.numerator) + "/" +
             std::to_string(d.denominator));
}

namespace {

struct RowTranslations {
  // per row: translation index for each coordinate
  std::vector<std::array<int, 3>> rows;
};

RowTranslations right_rows(const TranslationPattern& p) {
  p.validate();
  if (p.side != TranslationPattern::Side::kRight || p.arity != 3)
    fail(ErrorKind::kInvalidArgument,
         "witness search expects a right pattern of arity 3");
  RowTranslations rt;
  for (const auto& row : p.rows) rt.rows.push_back({row[0], row[1], row[2]});
  return rt;
}

// All pattern rows of x lie in X, with per-coordinate translated values
// precomputed as x_c * g_t lookups (t = 0 leaves the coordinate alone).
inline bool witness_ok(const WitnessSet& x_set, const RowTranslations& rt,
                       const element_t* t1, const element_t* t2, const element_t* t3) {
  for (const auto& row : rt.rows)
    if (!x_set.contains(t1[row[0]], t2[row[1]], t3[row[2]])) return false;
  return true;
}

inline void fill_translates(const Group& g, element_t xc, const Triple& gs, element_t* out) {
  out[0] = xc;
  out[1] = g.mul(xc, gs[0]);
  out[2] = g.mul(xc, gs[1]);
  out[3] = g.mul(xc, gs[2]);
}

std::optional<Triple> find_witness(const WitnessSet& x_set, const RowTranslations& rt,
                                   const Triple& gs, const std::optional<Triple>& hint) {
  const Group& g = x_set.group();
  const element_t n = element_t(g.order());
  element_t t1[4], t2[4], t3[4];
  if (hint) {
    fill_translates(g, (*hint)[0], gs, t1);
    fill_translates(g, (*hint)[1], gs, t2);
    fill_translates(g, (*hint)[2], gs, t3);
    if (witness_ok(x_set, rt, t1, t2, t3)) return hint;
  }
  for (element_t x1 = 0; x1 < n; ++x1) {
    fill_translates(g, x1, gs, t1);
    for (element_t x2 = 0; x2 < n; ++x2) {
      fill_translates(g, x2, gs, t2);
      for (element_t x3 = 0; x3 < n; ++x3) {
        fill_translates(g, x3, gs, t3);
        if (witness_ok(x_set, rt, t1, t2, t3)) return Triple{x1, x2, x3};
      }
    }
  }
  return std::nullopt;
}

uint64_t triple_key(const Group& g, const Triple& t) {
  uint64_t n = uint64_t(g.order());
  return (uint64_t(t[0]) * n + t[1]) * n + t[2];
}

}  // namespace

std::optional<Triple> translate_intersection_nonempty(const WitnessSet& x, const Triple& g,
                                                      const TranslationPattern& p) {
  for (element_t e : g)
    if (!x.group().valid_element(e))
      fail(ErrorKind::kInvalidArgument, "g element out of range");
  return find_witness(x, right_rows(p), g, std::nullopt);
}

Rational measure_translate_intersection(const Group& g, const std::vector<uint64_t>& a_bits,
                                        std::span<const element_t> us) {
  const int n = g.order();
  if (a_bits.size() != (size_t(n) + 63) / 64)
    fail(ErrorKind::kInvalidArgument, "subset bitset does not match the group order");
  for (element_t u : us)
    if (!g.valid_element(u)) fail(ErrorKind::kInvalidArgument, "translate element out of range");
  auto in_a = [&](element_t e) { return (a_bits[size_t(e) >> 6] >> (e & 63)) & 1; };
  int64_t count = 0;
  for (element_t e = 0; e < n; ++e) {
    if (!in_a(e)) continue;
    bool all = true;
    for (element_t u : us)
      if (!in_a(g.mul(e, g.inv(u)))) {  // e in Au iff e u^-1 in A
        all = false;
        break;
      }
    if (all) ++count;
  }
  return Rational(count, n);
}

AdmissibleSet find_admissible_u(const Group& g, const WitnessSet& x, int workers) {
  const element_t n = element_t(g.order());
  const TranslationPattern pattern = TranslationPattern::canonical_right();
  const RowTranslations rt = right_rows(pattern);

  AdmissibleSet result;
  std::vector<char> in_u(size_t(n), 0);

  // bootstrap with the identity; its only triple always has a witness
  // because the identity triple lies in X
  {
    auto w = find_witness(x, rt, {0, 0, 0}, std::nullopt);
    if (!w) fail(ErrorKind::kSoundness, "witness set does not contain the identity triple");
    result.certificates[0] = *w;
  }
  in_u[0] = 1;
  result.members = {0};

  for (element_t cand = 1; cand < n; ++cand) {
    if (in_u[cand]) continue;
    element_t icand = g.inv(cand);
    std::vector<element_t> extended = result.members;
    extended.push_back(cand);
    if (icand != cand) extended.push_back(icand);
    std::sort(extended.begin(), extended.end());

    auto is_new = [&](element_t e) { return e == cand || e == icand; };

    // triples not already certified: at least one coordinate is new.
    // Tasks are whole (g1, g2) slabs so the witness hint chain inside a slab
    // never depends on the worker count.
    struct Slab {
      element_t g1, g2;
    };
    std::vector<Slab> slabs;
    for (element_t g1 : extended)
      for (element_t g2 : extended) slabs.push_back({g1, g2});

    struct SlabResult {
      bool feasible = true;
      std::vector<std::pair<uint64_t, Triple>> certs;
    };
    std::vector<SlabResult> slab_results(slabs.size());
    std::atomic<bool> failed{false};
    run_tasks(slabs.size(), workers, [&](size_t si) {
      if (failed.load(std::memory_order_relaxed)) {
        slab_results[si].feasible = false;  // outcome already decided
        return;
      }
      const Slab& slab = slabs[si];
      SlabResult& out = slab_results[si];
      bool slab_has_new = is_new(slab.g1) || is_new(slab.g2);
      std::optional<Triple> hint;
      for (element_t g3 : extended) {
        if (!slab_has_new && !is_new(g3)) continue;
        Triple gs{slab.g1, slab.g2, g3};
        auto w = find_witness(x, rt, gs, hint);
        if (!w) {
          out.feasible = false;
          failed.store(true, std::memory_order_relaxed);
          return;
        }
        hint = w;
        out.certs.emplace_back(triple_key(g, gs), *w);
      }
    });

    bool feasible = !failed.load();
    if (!feasible) {
      ++result.rejected_candidates;
      continue;
    }
    for (auto& sr : slab_results)
      for (auto& [key, witness] : sr.certs) result.certificates[key] = witness;
    result.members = std::move(extended);
    in_u[cand] = 1;
    in_u[icand] = 1;
  }
  return result;
}

ReplayResult replay(const Group& g, uint64_t witness_budget, int workers) {
  WitnessSet x(g, witness_budget, workers);

  ReplayResult r;
  r.density.mode = DensityEstimate::Mode::kExact;
  r.density.numerator = x.popcount();
  r.density.denominator = uint64_t(g.order()) * g.order() * g.order();

  r.u = find_admissible_u(g, x, workers);

  // soundness chain: every stored certificate must satisfy all premises and
  // therefore force the conclusion — checked through the lemma evaluators,
  // not trusted from the construction above
  const TranslationPattern pattern = TranslationPattern::canonical_right();
  const uint64_t n = uint64_t(g.order());
  for (const auto& [key, witness] : r.u.certificates) {
    Triple gs{element_t(key / (n * n)), element_t((key / n) % n), element_t(key % n)};
    if (!premises_hold(g, pattern, witness, gs))
      fail(ErrorKind::kSoundness, "stored certificate fails the premise re-check for g=(" +
                                      std::to_string(gs[0]) + "," + std::to_string(gs[1]) + "," +
                                      std::to_string(gs[2]) + ")");
    if (!conclusion_holds(g, gs))
      fail(ErrorKind::kSoundness, "certified triple violates the forced conclusion at g=(" +
                                      std::to_string(gs[0]) + "," + std::to_string(gs[1]) + "," +
                                      std::to_string(gs[2]) + ")");
  }

  r.h = generate_subgroup(g, r.u.members);
  r.h_class = nilpotency_class(r.h);
  if (!r.h_class || *r.h_class > 2)
    fail(ErrorKind::kSoundness,
         "generated subgroup has nilpotency class " +
             (r.h_class ? std::to_string(*r.h_class) : std::string("none")) +
             " > 2, contradicting the certified law");
  r.index = g.order() / r.h.order();
  return r;
}

std::string certificate_json(const Group& g, const std::string& spec, const ReplayResult& r) {
  Json j;
  j["format"] = "nilaw-certificate-v1";
  j["tool_version"] = kToolVersion;
  j["group"] = group_json(g, spec);
  TranslationPattern p = TranslationPattern::canonical_right();
  Json rows = Json::array();
  for (const auto& row : p.rows) rows.push_back({row[0], row[1], row[2]});
  j["pattern"] = Json{{"side", "right"}, {"rows", rows}};
  j["u_members"] = r.u.members;
  j["h_members"] = r.h.members;
  j["nilpotency_class"] = r.h_class ? Json(*r.h_class) : Json();
  j["index"] = r.index;
  Json witnesses = Json::array();
  const uint64_t n = uint64_t(g.order());
  for (const auto& [key, w] : r.u.certificates) {
    Json entry;
    entry["g"] = {element_t(key / (n * n)), element_t((key / n) % n), element_t(key % n)};
    entry["x"] = {w[0], w[1], w[2]};
    witnesses.push_back(entry);
  }
  j["witnesses"] = witnesses;
  return j.dump(2) + "\n";
}

}  // namespace nilaw
