// nilaw command-line tool. Talks to the engine exclusively through the C API
// in nilaw.h; exit codes are the nilaw_status values (0 ok, 1 verification
// mismatch, 2 invalid input/budget, 3 soundness failure).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nilaw.h"

namespace {

struct GroupArgs {
  std::string spec;
  std::string cayley_file;
  std::string perm_file;
  long order_cap = 0;  // 0 = library default
};

void add_group_options(CLI::App* cmd, GroupArgs& args) {
  auto* spec = cmd->add_option("-g,--group", args.spec, "group spec, e.g. \"S3\" or "
                                                        "\"heisenberg(3) x S3\"");
  auto* cay = cmd->add_option("--cayley-file", args.cayley_file,
                              "file with \"order n\" and an n x n table");
  auto* perm = cmd->add_option("--perm-file", args.perm_file,
                               "file with one cycle-notation generator per line");
  spec->excludes(cay)->excludes(perm);
  cay->excludes(perm);
  cmd->add_option("--order-cap", args.order_cap, "maximum group order (default 2048)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open file: " << path << "\n";
    std::exit(NILAW_INVALID);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

[[noreturn]] void die(nilaw_status status) {
  const char* msg = nilaw_last_error();
  std::cerr << "error: " << (msg && *msg ? msg : "unknown failure") << "\n";
  std::exit(status);
}

nilaw_group* open_group(const GroupArgs& args) {
  nilaw_group* g = nullptr;
  nilaw_status st;
  if (!args.cayley_file.empty()) {
    std::string text = read_file(args.cayley_file);
    std::string origin = "cayley-file(" + args.cayley_file + ")";
    st = nilaw_group_from_cayley(text.c_str(), origin.c_str(), args.order_cap, &g);
  } else if (!args.perm_file.empty()) {
    std::string text = read_file(args.perm_file);
    std::string origin = "perm-file(" + args.perm_file + ")";
    st = nilaw_group_from_permutations(text.c_str(), origin.c_str(), args.order_cap, &g);
  } else if (!args.spec.empty()) {
    st = nilaw_group_create(args.spec.c_str(), args.order_cap, &g);
  } else {
    std::cerr << "error: a group is required (--group, --cayley-file or --perm-file)\n";
    std::exit(NILAW_INVALID);
  }
  if (st != NILAW_OK) die(st);
  return g;
}

void write_output(const char* text, const std::string& output_path) {
  if (!text) return;
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write to " << output_path << "\n";
    std::exit(NILAW_INVALID);
  }
  out << text;
}

// --budget flag beats NILAW_BUDGET beats the per-operation default.
uint64_t pick_budget(const std::optional<uint64_t>& flag, const char* operation) {
  if (flag) return *flag;
  if (const char* env = std::getenv("NILAW_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    std::cerr << "error: NILAW_BUDGET is not a positive integer: " << env << "\n";
    std::exit(NILAW_INVALID);
  }
  return nilaw_default_budget(operation);
}

struct Emitted {
  char* report = nullptr;
  ~Emitted() { nilaw_string_free(report); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nilaw: measure nilpotency-law densities on finite groups, verify the "
               "12-condition translation lemma, search its open variants, and replay the "
               "admissible-set construction of a 2-step nilpotent subgroup"};
  app.require_subcommand(1);
  app.set_version_flag("--version", NILAW_VERSION_STRING);

  int workers = 0;
  app.add_option("-j,--workers", workers,
                 "worker threads (default: hardware parallelism; results do not depend on it)");

  std::string output_path;
  app.add_option("-o,--output", output_path, "write the report to a file instead of stdout");

  // density
  auto* density = app.add_subcommand("density", "law-set density, exact or sampled");
  GroupArgs density_group;
  add_group_options(density, density_group);
  int density_k = 0;
  density->add_option("--k", density_k, "commutator length k (k+1 coordinates)")->required();
  bool density_exact = false;
  density->add_flag("--exact", density_exact, "exact rational count");
  std::optional<uint64_t> density_samples, density_seed, density_budget;
  density->add_option("--samples", density_samples, "sample count for the Monte Carlo estimate");
  density->add_option("--seed", density_seed, "RNG seed (required for sampling)");
  density->add_option("--budget", density_budget, "prefix-enumeration budget (default 1e9)");

  // verify-lemma
  auto* verify_lemma = app.add_subcommand("verify-lemma",
                                          "check the translation lemma over a group");
  GroupArgs lemma_group;
  add_group_options(verify_lemma, lemma_group);
  bool lemma_exhaustive = false, lemma_randomized = false, lemma_identities = false;
  verify_lemma->add_flag("--exhaustive", lemma_exhaustive, "scan every instance");
  verify_lemma->add_flag("--randomized", lemma_randomized, "sample instances (needs --seed)");
  verify_lemma->add_flag("--identities", lemma_identities,
                         "check the commutator expansions and derived relations instead");
  std::optional<uint64_t> lemma_trials, lemma_seed, lemma_budget;
  verify_lemma->add_option("--trials", lemma_trials, "randomized trial count (default 1e6)");
  verify_lemma->add_option("--seed", lemma_seed, "RNG seed for --randomized");
  verify_lemma->add_option("--budget", lemma_budget, "instance budget (default 2^24)");
  std::string lemma_pattern_file;
  verify_lemma->add_option("--pattern", lemma_pattern_file, "pattern file (default: canonical)");

  // search
  auto* search = app.add_subcommand("search", "hunt for counterexamples to the open variants");
  GroupArgs search_group;
  add_group_options(search, search_group);
  std::string search_variant;
  search->add_option("--variant", search_variant, "left | length4")
      ->required()
      ->check(CLI::IsMember({"left", "length4"}));
  std::optional<uint64_t> search_trials, search_seed, search_budget;
  search->add_option("--trials", search_trials, "sampled trial count (default 1e6)");
  search->add_option("--seed", search_seed, "RNG seed (required when sampling)");
  search->add_option("--budget", search_budget, "instance budget (default 2^24)");
  std::string search_pattern_file;
  search->add_option("--pattern", search_pattern_file,
                     "arity-4 pattern file (length4 only; default: built-in probe)");

  // replay
  auto* replay = app.add_subcommand("replay",
                                    "witness set -> admissible U -> H = <U> -> class certificate");
  GroupArgs replay_group;
  add_group_options(replay, replay_group);
  std::optional<uint64_t> replay_budget;
  replay->add_option("--budget", replay_budget, "witness bitset budget in bits (default 512^3)");
  std::string certificate_out;
  replay->add_option("--certificate-out", certificate_out, "write the certificate bundle here");

  // catalog
  auto* catalog = app.add_subcommand("catalog", "list built-in groups, or dump/inspect one");
  GroupArgs catalog_group;
  add_group_options(catalog, catalog_group);
  bool catalog_dump = false, catalog_info = false;
  catalog->add_flag("--dump", catalog_dump, "write the group's Cayley table");
  catalog->add_flag("--info", catalog_info, "order, class, conjugacy data for the group");

  // verify
  auto* verify = app.add_subcommand("verify", "independently re-check a replay certificate");
  GroupArgs verify_group;
  add_group_options(verify, verify_group);
  std::string certificate_file;
  verify->add_option("--certificate", certificate_file, "certificate bundle to check")
      ->required();

  // let -j / -o appear after the subcommand as well
  for (CLI::App* sub : {density, verify_lemma, search, replay, catalog, verify})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return NILAW_INVALID;
  }

  Emitted out;
  nilaw_status st = NILAW_OK;

  if (density->parsed()) {
    nilaw_group* g = open_group(density_group);
    if (density_exact == density_samples.has_value()) {
      std::cerr << "error: choose exactly one of --exact or --samples\n";
      return NILAW_INVALID;
    }
    if (density_exact) {
      st = nilaw_density_exact(g, density_k, pick_budget(density_budget, "density"), workers,
                               &out.report);
    } else {
      if (!density_seed) {
        std::cerr << "error: sampling is a randomized mode and requires --seed\n";
        return NILAW_INVALID;
      }
      st = nilaw_density_sampled(g, density_k, *density_samples, *density_seed, workers,
                                 &out.report);
    }
    nilaw_group_destroy(g);
  } else if (verify_lemma->parsed()) {
    if (int(lemma_exhaustive) + int(lemma_randomized) + int(lemma_identities) != 1) {
      std::cerr << "error: choose exactly one of --exhaustive, --randomized, --identities\n";
      return NILAW_INVALID;
    }
    nilaw_group* g = open_group(lemma_group);
    std::string pattern_text;
    const char* pattern = nullptr;
    if (!lemma_pattern_file.empty()) {
      pattern_text = read_file(lemma_pattern_file);
      pattern = pattern_text.c_str();
    }
    if (lemma_identities) {
      st = nilaw_proof_identities(g, workers, &out.report);
    } else if (lemma_exhaustive) {
      st = nilaw_lemma_verify_exhaustive(g, pattern, pick_budget(lemma_budget, "sweep"), workers,
                                         &out.report);
    } else {
      if (!lemma_seed) {
        std::cerr << "error: --randomized requires --seed\n";
        return NILAW_INVALID;
      }
      st = nilaw_lemma_verify_randomized(g, pattern, lemma_trials.value_or(1000000), *lemma_seed,
                                         workers, &out.report);
    }
    nilaw_group_destroy(g);
  } else if (search->parsed()) {
    nilaw_group* g = open_group(search_group);
    uint64_t budget = pick_budget(search_budget, "sweep");
    uint64_t trials = search_trials.value_or(1000000);
    int arity = search_variant == "left" ? 3 : 4;
    if (!nilaw_exhaustive_feasible(g, arity, budget) && !search_seed) {
      std::cerr << "error: " << nilaw_group_name(g) << " is too large to exhaust within the "
                << "budget; the sampled search is a randomized mode and requires --seed\n";
      nilaw_group_destroy(g);
      return NILAW_INVALID;
    }
    const uint64_t* seed_ptr = search_seed ? &*search_seed : nullptr;
    if (search_variant == "left") {
      if (!search_pattern_file.empty()) {
        std::cerr << "error: --pattern applies to the length4 variant only\n";
        nilaw_group_destroy(g);
        return NILAW_INVALID;
      }
      st = nilaw_search_left(g, budget, trials, seed_ptr, workers, &out.report);
    } else {
      std::string pattern_text;
      const char* pattern = nullptr;
      if (!search_pattern_file.empty()) {
        pattern_text = read_file(search_pattern_file);
        pattern = pattern_text.c_str();
      }
      st = nilaw_search_length4(g, pattern, budget, trials, seed_ptr, workers, &out.report);
    }
    nilaw_group_destroy(g);
  } else if (replay->parsed()) {
    nilaw_group* g = open_group(replay_group);
    char* certificate = nullptr;
    st = nilaw_replay(g, pick_budget(replay_budget, "replay"), workers, &out.report,
                      certificate_out.empty() ? nullptr : &certificate);
    if (st == NILAW_OK && certificate) write_output(certificate, certificate_out);
    nilaw_string_free(certificate);
    nilaw_group_destroy(g);
  } else if (catalog->parsed()) {
    if (catalog_dump || catalog_info) {
      nilaw_group* g = open_group(catalog_group);
      if (catalog_dump) {
        char* text = nullptr;
        st = nilaw_group_cayley(g, &text);
        if (st == NILAW_OK) write_output(text, output_path);
        nilaw_string_free(text);
        nilaw_group_destroy(g);
        if (st != NILAW_OK) die(st);
        return st;  // raw table, not a report
      }
      st = nilaw_group_info(g, &out.report);
      nilaw_group_destroy(g);
    } else {
      st = nilaw_catalog_list(&out.report);
    }
  } else if (verify->parsed()) {
    nilaw_group* g = open_group(verify_group);
    std::string certificate_text = read_file(certificate_file);
    st = nilaw_verify_certificate(g, certificate_text.c_str(), &out.report);
    nilaw_group_destroy(g);
  }

  if (out.report) write_output(out.report, output_path);
  if (st != NILAW_OK) {
    const char* msg = nilaw_last_error();
    std::cerr << "error: " << (msg && *msg ? msg : "operation failed") << "\n";
  }
  return st;
}
