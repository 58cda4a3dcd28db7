#include "nilaw.h"

#include <chrono>
#include <cstring>
#include <string>

#include "nilaw/catalog.hpp"
#include "nilaw/density.hpp"
#include "nilaw/lemma.hpp"
#include "nilaw/replay.hpp"
#include "nilaw/report.hpp"
#include "nilaw/verify.hpp"

using namespace nilaw;

struct nilaw_group {
  Group group;
  std::string spec;
};

namespace {

thread_local std::string t_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nilaw_status status_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kSoundness:
      return NILAW_SOUNDNESS;
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kParse:
    case ErrorKind::kBudget:
    case ErrorKind::kIo:
      return NILAW_INVALID;
  }
  return NILAW_INTERNAL;
}

template <typename Fn>
nilaw_status guarded(Fn&& fn) {
  try {
    t_last_error.clear();
    return fn();
  } catch (const Error& e) {
    t_last_error = e.what();
    return status_for(e);
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return NILAW_INTERNAL;
  }
}

class Timer {
 public:
  double ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Json density_json(const DensityEstimate& d) {
  Json j;
  if (d.mode == DensityEstimate::Mode::kExact) {
    j["mode"] = "exact";
    j["numerator"] = d.numerator;
    j["denominator"] = d.denominator;
    Rational r = d.exact_value();
    j["reduced"] = r.str();
    j["value"] = d.value();
  } else {
    j["mode"] = "sampled";
    j["samples"] = d.samples;
    j["hits"] = d.hits;
    j["estimate"] = d.value();
    j["wilson_ci"] = Json{{"lo", d.ci_lo}, {"hi", d.ci_hi}};
  }
  return j;
}

Json pattern_json(const TranslationPattern& p) {
  Json rows = Json::array();
  for (const auto& row : p.rows) {
    Json r = Json::array();
    for (int c = 0; c < p.arity; ++c) r.push_back(row[c]);
    rows.push_back(r);
  }
  return Json{{"side", p.side == TranslationPattern::Side::kLeft ? "left" : "right"},
              {"arity", p.arity},
              {"rows", rows}};
}

Json counterexample_json(const Counterexample& ce) {
  Json j;
  j["group"] = ce.group_name;
  j["x"] = ce.x;
  j["g"] = ce.g;
  j["conclusion_value"] = ce.conclusion_value;
  j["transcript"] = ce.transcript;
  return j;
}

Json sweep_json(const SweepReport& rep) {
  Json j;
  j["mode"] = rep.exhaustive ? "exhaustive" : "randomized";
  j["tuples_scanned"] = rep.tuples_scanned;
  j["premise_count"] = rep.premise_count;
  j["vacuous"] = rep.vacuous;
  j["violations_total"] = rep.violations_total;
  Json vs = Json::array();
  for (const auto& v : rep.violations) vs.push_back(counterexample_json(v));
  j["violations"] = vs;
  return j;
}

void emit(char** out, const Report& report) {
  if (out) *out = dup_string(report.render());
}

TranslationPattern pattern_or_canonical(const char* text) {
  if (!text) return TranslationPattern::canonical_right();
  return TranslationPattern::parse(text);
}

const nilaw_group* require(const nilaw_group* g) {
  if (!g) fail(ErrorKind::kInvalidArgument, "group handle is null");
  return g;
}

nilaw_status lemma_verify_common(const nilaw_group* g, const TranslationPattern& p,
                                 const SweepReport& sweep, Json params, Json seed, double ms,
                                 char** out_report) {
  Report rep;
  rep.group = group_json(g->group, g->spec);
  rep.operation = "verify-lemma";
  rep.params = std::move(params);
  rep.params["pattern"] = pattern_json(p);
  rep.seed = std::move(seed);
  rep.result = sweep_json(sweep);
  rep.result["sound"] = sweep.violations_total == 0;
  rep.elapsed_ms = ms;
  emit(out_report, rep);
  if (p.is_canonical_right() && sweep.violations_total > 0) {
    t_last_error =
        "the canonical right pattern reported a violation; this contradicts a proved "
        "theorem and indicates an implementation bug";
    return NILAW_SOUNDNESS;
  }
  return NILAW_OK;
}

nilaw_status search_common(const nilaw_group* g, const char* variant, const TranslationPattern& p,
                           uint64_t budget, uint64_t trials, const uint64_t* seed, int workers,
                           char** out_report) {
  Timer timer;
  std::optional<uint64_t> seed_opt;
  if (seed) seed_opt = *seed;
  SearchOutcome outcome =
      std::string(variant) == "left"
          ? search_left_version(g->group, budget, seed_opt, trials, workers)
          : search_length4(g->group, p, budget, seed_opt, trials, workers);

  Report rep;
  rep.group = group_json(g->group, g->spec);
  rep.operation = "search";
  rep.params = Json{{"variant", variant}, {"budget", budget}};
  if (!outcome.sweep.exhaustive) rep.params["trials"] = trials;
  rep.params["pattern"] = pattern_json(p);
  rep.seed = outcome.used_seed ? Json(outcome.seed) : Json();
  rep.result = sweep_json(outcome.sweep);
  rep.result["counterexample"] =
      outcome.found ? counterexample_json(*outcome.found) : Json();
  rep.result["certificate"] = outcome.certificate.empty() ? Json() : Json(outcome.certificate);
  rep.elapsed_ms = timer.ms();
  emit(out_report, rep);
  return NILAW_OK;
}

}  // namespace

extern "C" {

const char* nilaw_version(void) { return NILAW_VERSION_STRING; }

const char* nilaw_last_error(void) { return t_last_error.c_str(); }

void nilaw_string_free(char* s) { delete[] s; }

nilaw_status nilaw_group_create(const char* spec, long order_cap, nilaw_group** out) {
  return guarded([&]() -> nilaw_status {
    if (!spec || !out) fail(ErrorKind::kInvalidArgument, "spec and out must be non-null");
    int cap = order_cap > 0 ? int(order_cap) : kDefaultOrderCap;
    BuiltGroup built = build_group_spec(spec, cap);
    *out = new nilaw_group{std::move(built.group), std::move(built.spec)};
    return NILAW_OK;
  });
}

nilaw_status nilaw_group_from_cayley(const char* text, const char* origin, long order_cap,
                                     nilaw_group** out) {
  return guarded([&]() -> nilaw_status {
    if (!text || !out) fail(ErrorKind::kInvalidArgument, "text and out must be non-null");
    int cap = order_cap > 0 ? int(order_cap) : kDefaultOrderCap;
    Group g = parse_cayley(text, cap);
    *out = new nilaw_group{std::move(g), origin ? origin : "cayley"};
    return NILAW_OK;
  });
}

nilaw_status nilaw_group_from_permutations(const char* text, const char* origin, long order_cap,
                                           nilaw_group** out) {
  return guarded([&]() -> nilaw_status {
    if (!text || !out) fail(ErrorKind::kInvalidArgument, "text and out must be non-null");
    int cap = order_cap > 0 ? int(order_cap) : kDefaultOrderCap;
    Group g = parse_permutations(text, cap);
    *out = new nilaw_group{std::move(g), origin ? origin : "permutations"};
    return NILAW_OK;
  });
}

void nilaw_group_destroy(nilaw_group* g) { delete g; }

long nilaw_group_order(const nilaw_group* g) { return g ? g->group.order() : 0; }

const char* nilaw_group_name(const nilaw_group* g) { return g ? g->group.name().c_str() : ""; }

nilaw_status nilaw_group_cayley(const nilaw_group* g, char** out_text) {
  return guarded([&]() -> nilaw_status {
    require(g);
    if (!out_text) fail(ErrorKind::kInvalidArgument, "out_text must be non-null");
    *out_text = dup_string(serialize_cayley(g->group));
    return NILAW_OK;
  });
}

uint64_t nilaw_default_budget(const char* operation) {
  std::string op = operation ? operation : "";
  if (op == "density") return kDefaultDensityBudget;
  if (op == "replay") return kDefaultWitnessBudget;
  return kDefaultSweepBudget;
}

int nilaw_exhaustive_feasible(const nilaw_group* g, int arity, uint64_t budget) {
  if (!g || arity < 1) return 0;
  unsigned __int128 acc = 1;
  for (int i = 0; i < 2 * arity; ++i) {
    acc *= uint64_t(g->group.order());
    if (acc > budget) return 0;
  }
  return 1;
}

nilaw_status nilaw_group_info(const nilaw_group* g, char** out_report) {
  return guarded([&]() -> nilaw_status {
    require(g);
    Timer timer;
    Report rep;
    rep.group = group_json(g->group, g->spec);
    rep.operation = "info";
    Json result;
    result["order"] = g->group.order();
    result["abelian"] = g->group.is_abelian();
    auto cls = nilpotency_class(g->group);
    result["nilpotency_class"] = cls ? Json(*cls) : Json();
    result["conjugacy_classes"] = conjugacy_class_count(g->group);
    result["commuting_probability"] = commuting_probability_via_classes(g->group).str();
    rep.result = result;
    rep.elapsed_ms = timer.ms();
    emit(out_report, rep);
    return NILAW_OK;
  });
}

nilaw_status nilaw_catalog_list(char** out_report) {
  return guarded([&]() -> nilaw_status {
    Timer timer;
    Report rep;
    rep.group = Json();
    rep.operation = "catalog";
    Json groups = Json::array();
    for (const auto& entry : small_catalog())
      groups.push_back(Json{{"name", entry.name}, {"spec", entry.spec}, {"order", entry.order}});
    rep.result = Json{{"groups", groups}};
    rep.elapsed_ms = timer.ms();
    emit(out_report, rep);
    return NILAW_OK;
  });
}

nilaw_status nilaw_density_exact(const nilaw_group* g, int k, uint64_t budget, int workers,
                                 char** out_report) {
  return guarded([&]() -> nilaw_status {
    require(g);
    Timer timer;
    DensityEstimate d = exact_density(g->group, k, budget, workers);
    Report rep;
    rep.group = group_json(g->group, g->spec);
    rep.operation = "density";
    rep.params = Json{{"k", k}, {"mode", "exact"}, {"budget", budget}};
    rep.result = density_json(d);
    rep.elapsed_ms = timer.ms();
    emit(out_report, rep);
    return NILAW_OK;
  });
}

nilaw_status nilaw_density_sampled(const nilaw_group* g, int k, uint64_t samples, uint64_t seed,
                                   int workers, char** out_report) {
  return guarded([&]() -> nilaw_status {
    require(g);
    Timer timer;
    DensityEstimate d = mc_density(g->group, k, samples, seed, workers);
    Report rep;
    rep.group = group_json(g->group, g->spec);
    rep.operation = "density";
    rep.params = Json{{"k", k}, {"mode", "sampled"}, {"samples", samples}};
    rep.seed = seed;
    rep.result = density_json(d);
    rep.elapsed_ms = timer.ms();
    emit(out_report, rep);
    return NILAW_OK;
  });
}

nilaw_status nilaw_lemma_verify_exhaustive(const nilaw_group* g, const char* pattern_text,
                                           uint64_t budget, int workers, char** out_report) {
  return guarded([&]() -> nilaw_status {
    require(g);
    Timer timer;
    TranslationPattern p = pattern_or_canonical(pattern_text);
    SweepReport sweep = verify_lemma_exhaustive(g->group, p, budget, workers);
    return lemma_verify_common(g, p, sweep, Json{{"mode", "exhaustive"}, {"budget", budget}},
                               Json(), timer.ms(), out_report);
  });
}

nilaw_status nilaw_lemma_verify_randomized(const nilaw_group* g, const char* pattern_text,
                                           uint64_t trials, uint64_t seed, int workers,
                                           char** out_report) {
  return guarded([&]() -> nilaw_status {
    require(g);
    Timer timer;
    TranslationPattern p = pattern_or_canonical(pattern_text);
    SweepReport sweep = verify_lemma_randomized(g->group, p, trials, seed, workers);
    return lemma_verify_common(g, p, sweep, Json{{"mode", "randomized"}, {"trials", trials}},
                               Json(seed), timer.ms(), out_report);
  });
}

nilaw_status nilaw_proof_identities(const nilaw_group* g, int workers, char** out_report) {
  return guarded([&]() -> nilaw_status {
    require(g);
    Timer timer;
    IdentityReport ir = proof_step_identities(g->group, workers);
    Report rep;
    rep.group = group_json(g->group, g->spec);
    rep.operation = "verify-lemma";
    rep.params = Json{{"mode", "identities"}};
    rep.result = Json{{"expansion_checks", ir.expansion_checks},
                      {"chain_instances", ir.chain_instances},
                      {"failures", ir.failures}};
    rep.elapsed_ms = timer.ms();
    emit(out_report, rep);
    if (ir.failures > 0) {
      t_last_error = "commutator expansion identities failed; this indicates an implementation bug";
      return NILAW_SOUNDNESS;
    }
    return NILAW_OK;
  });
}

nilaw_status nilaw_search_left(const nilaw_group* g, uint64_t budget, uint64_t trials,
                               const uint64_t* seed, int workers, char** out_report) {
  return guarded([&]() -> nilaw_status {
    require(g);
    return search_common(g, "left", TranslationPattern::canonical_left(), budget, trials, seed,
                         workers, out_report);
  });
}

nilaw_status nilaw_search_length4(const nilaw_group* g, const char* pattern_text, uint64_t budget,
                                  uint64_t trials, const uint64_t* seed, int workers,
                                  char** out_report) {
  return guarded([&]() -> nilaw_status {
    require(g);
    TranslationPattern p =
        pattern_text ? TranslationPattern::parse(pattern_text) : TranslationPattern::default_arity4();
    return search_common(g, "length4", p, budget, trials, seed, workers, out_report);
  });
}

nilaw_status nilaw_replay(const nilaw_group* g, uint64_t budget, int workers, char** out_report,
                          char** out_certificate) {
  return guarded([&]() -> nilaw_status {
    require(g);
    Timer timer;
    ReplayResult r = replay(g->group, budget, workers);
    Report rep;
    rep.group = group_json(g->group, g->spec);
    rep.operation = "replay";
    rep.params = Json{{"budget", budget}};
    Json result;
    result["density"] = density_json(r.density);
    result["u"] = Json{{"size", r.u.members.size()},
                       {"members", r.u.members},
                       {"rejected_candidates", r.u.rejected_candidates}};
    result["h"] = Json{{"order", r.h.order()},
                       {"index", r.index},
                       {"nilpotency_class", r.h_class ? Json(*r.h_class) : Json()},
                       {"members", r.h.members}};
    result["certificates"] = r.u.certificates.size();
    rep.result = result;
    rep.elapsed_ms = timer.ms();
    emit(out_report, rep);
    if (out_certificate) *out_certificate = dup_string(certificate_json(g->group, g->spec, r));
    return NILAW_OK;
  });
}

nilaw_status nilaw_verify_certificate(const nilaw_group* g, const char* certificate_text,
                                      char** out_report) {
  return guarded([&]() -> nilaw_status {
    require(g);
    if (!certificate_text) fail(ErrorKind::kInvalidArgument, "certificate text must be non-null");
    Timer timer;
    VerifyOutcome v = verify_certificate(g->group, certificate_text);
    Report rep;
    rep.group = group_json(g->group, g->spec);
    rep.operation = "verify";
    rep.result = Json{{"ok", v.ok},
                      {"checked_triples", v.checked_triples},
                      {"mismatch", v.ok ? Json() : Json(v.first_mismatch)}};
    rep.elapsed_ms = timer.ms();
    emit(out_report, rep);
    if (!v.ok) {
      t_last_error = v.first_mismatch;
      return NILAW_VERIFY_MISMATCH;
    }
    return NILAW_OK;
  });
}

}  // extern "C"
