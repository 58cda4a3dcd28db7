// Exercises the shared-library surface the CLI is built on.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include "json.hpp"
#include "nilaw.h"

using Json = nlohmann::json;

namespace {

struct Owned {
  char* s = nullptr;
  ~Owned() { nilaw_string_free(s); }
  Json json() const { return Json::parse(std::string(s ? s : "null")); }
};

struct GroupHandle {
  nilaw_group* g = nullptr;
  ~GroupHandle() { nilaw_group_destroy(g); }
};

}  // namespace

TEST_CASE("version and budgets") {
  CHECK(std::string(nilaw_version()) == NILAW_VERSION_STRING);
  CHECK(nilaw_default_budget("density") == 1000000000ull);
  CHECK(nilaw_default_budget("sweep") == 16777216ull);
  CHECK(nilaw_default_budget("replay") == 134217728ull);
}

TEST_CASE("group creation and metadata") {
  GroupHandle h;
  REQUIRE(nilaw_group_create("S3", 0, &h.g) == NILAW_OK);
  CHECK(nilaw_group_order(h.g) == 6);
  CHECK(std::string(nilaw_group_name(h.g)) == "S3");
  CHECK(nilaw_exhaustive_feasible(h.g, 3, 16777216) == 1);

  Owned table;
  REQUIRE(nilaw_group_cayley(h.g, &table.s) == NILAW_OK);
  CHECK(std::string(table.s).rfind("order 6", 0) == 0);

  GroupHandle big;
  REQUIRE(nilaw_group_create("S4", 0, &big.g) == NILAW_OK);
  CHECK(nilaw_exhaustive_feasible(big.g, 3, 16777216) == 0);

  nilaw_group* out = nullptr;
  CHECK(nilaw_group_create("nonsense(1)", 0, &out) == NILAW_INVALID);
  CHECK(out == nullptr);
  CHECK(std::strlen(nilaw_last_error()) > 0);

  CHECK(nilaw_group_create("symmetric(3)", 2, &out) == NILAW_INVALID);  // cap 2
}

TEST_CASE("cayley and permutation entry points") {
  GroupHandle h;
  REQUIRE(nilaw_group_from_cayley("order 2\n0 1\n1 0\n", "cayley-file(k.txt)", 0, &h.g) ==
          NILAW_OK);
  CHECK(nilaw_group_order(h.g) == 2);

  nilaw_group* bad = nullptr;
  CHECK(nilaw_group_from_cayley("order 2\n0 0\n0 1\n", nullptr, 0, &bad) == NILAW_INVALID);

  GroupHandle p;
  REQUIRE(nilaw_group_from_permutations("(1 2), (1 2 3)", nullptr, 0, &p.g) == NILAW_OK);
  CHECK(nilaw_group_order(p.g) == 6);
}

TEST_CASE("density reports") {
  GroupHandle h;
  REQUIRE(nilaw_group_create("S3", 0, &h.g) == NILAW_OK);

  Owned exact;
  REQUIRE(nilaw_density_exact(h.g, 2, 1000000000ull, 0, &exact.s) == NILAW_OK);
  Json j = exact.json();
  CHECK(j["operation"] == "density");
  CHECK(j["group"]["spec"] == "symmetric(3)");
  CHECK(j["result"]["numerator"] == 162);
  CHECK(j["result"]["denominator"] == 216);
  CHECK(j["result"]["reduced"] == "3/4");
  CHECK(j["seed"].is_null());

  Owned sampled;
  REQUIRE(nilaw_density_sampled(h.g, 2, 10000, 42, 0, &sampled.s) == NILAW_OK);
  Json s = sampled.json();
  CHECK(s["seed"] == 42);
  CHECK(s["result"]["samples"] == 10000);
  CHECK(s["result"]["wilson_ci"]["lo"].get<double>() <= s["result"]["estimate"].get<double>());

  Owned broke;
  CHECK(nilaw_density_exact(h.g, 5, 100, 0, &broke.s) == NILAW_INVALID);  // budget
}

TEST_CASE("lemma verification reports") {
  GroupHandle h;
  REQUIRE(nilaw_group_create("S3", 0, &h.g) == NILAW_OK);

  Owned rep;
  REQUIRE(nilaw_lemma_verify_exhaustive(h.g, nullptr, 16777216ull, 0, &rep.s) == NILAW_OK);
  Json j = rep.json();
  CHECK(j["result"]["violations_total"] == 0);
  CHECK(j["result"]["sound"] == true);
  CHECK(j["result"]["premise_count"].get<uint64_t>() > 0);
  CHECK(j["params"]["pattern"]["rows"].size() == 12);

  Owned rnd;
  REQUIRE(nilaw_lemma_verify_randomized(h.g, nullptr, 5000, 9, 0, &rnd.s) == NILAW_OK);
  CHECK(rnd.json()["seed"] == 9);

  // custom pattern text flows through
  const char* weak = "side=right\n0 0 0\n";
  Owned weak_rep;
  REQUIRE(nilaw_lemma_verify_exhaustive(h.g, weak, 16777216ull, 0, &weak_rep.s) == NILAW_OK);
  CHECK(weak_rep.json()["result"]["violations_total"].get<uint64_t>() > 0);

  Owned bad;
  CHECK(nilaw_lemma_verify_exhaustive(h.g, "side=sideways\n0 0 0\n", 16777216ull, 0, &bad.s) ==
        NILAW_INVALID);
}

TEST_CASE("proof identities") {
  GroupHandle h;
  REQUIRE(nilaw_group_create("Q8", 0, &h.g) == NILAW_OK);
  Owned rep;
  REQUIRE(nilaw_proof_identities(h.g, 0, &rep.s) == NILAW_OK);
  CHECK(rep.json()["result"]["failures"] == 0);

  GroupHandle big;
  REQUIRE(nilaw_group_create("heisenberg(3)", 0, &big.g) == NILAW_OK);
  Owned over;
  CHECK(nilaw_proof_identities(big.g, 0, &over.s) == NILAW_INVALID);  // order 27 > 24
}

TEST_CASE("searches") {
  GroupHandle h;
  REQUIRE(nilaw_group_create("S3", 0, &h.g) == NILAW_OK);

  Owned left;
  REQUIRE(nilaw_search_left(h.g, 16777216ull, 0, nullptr, 0, &left.s) == NILAW_OK);
  Json j = left.json();
  CHECK(j["params"]["variant"] == "left");
  CHECK(j["result"]["mode"] == "exhaustive");
  bool has_hit = !j["result"]["counterexample"].is_null();
  bool has_cert = !j["result"]["certificate"].is_null();
  CHECK(has_hit != has_cert);

  GroupHandle s4;
  REQUIRE(nilaw_group_create("S4", 0, &s4.g) == NILAW_OK);
  Owned refused;
  CHECK(nilaw_search_left(s4.g, 16777216ull, 1000, nullptr, 0, &refused.s) == NILAW_INVALID);

  uint64_t seed = 7;
  Owned sampled;
  REQUIRE(nilaw_search_left(s4.g, 16777216ull, 1000, &seed, 0, &sampled.s) == NILAW_OK);
  CHECK(sampled.json()["result"]["mode"] == "randomized");

  Owned len4;
  REQUIRE(nilaw_search_length4(h.g, nullptr, 16777216ull, 1000, &seed, 0, &len4.s) == NILAW_OK);
  CHECK(len4.json()["params"]["pattern"]["arity"] == 4);
}

TEST_CASE("replay and certificate verification round-trip") {
  GroupHandle h;
  REQUIRE(nilaw_group_create("C2 x S3", 0, &h.g) == NILAW_OK);

  Owned rep;
  char* cert_raw = nullptr;
  REQUIRE(nilaw_replay(h.g, 134217728ull, 0, &rep.s, &cert_raw) == NILAW_OK);
  Owned cert;
  cert.s = cert_raw;
  Json j = rep.json();
  CHECK(j["result"]["h"]["nilpotency_class"].get<int>() <= 2);
  CHECK(j["result"]["h"]["index"].get<int>() * j["result"]["h"]["order"].get<int>() == 12);

  Owned verified;
  REQUIRE(nilaw_verify_certificate(h.g, cert.s, &verified.s) == NILAW_OK);
  CHECK(verified.json()["result"]["ok"] == true);

  // verifying against the wrong group names the mismatch and exits 1
  GroupHandle wrong;
  REQUIRE(nilaw_group_create("C6", 0, &wrong.g) == NILAW_OK);
  Owned mismatch;
  CHECK(nilaw_verify_certificate(wrong.g, cert.s, &mismatch.s) == NILAW_VERIFY_MISMATCH);
  CHECK(mismatch.json()["result"]["ok"] == false);
  CHECK(std::strlen(nilaw_last_error()) > 0);
}

TEST_CASE("catalog listing") {
  Owned rep;
  REQUIRE(nilaw_catalog_list(&rep.s) == NILAW_OK);
  Json j = rep.json();
  bool found = false;
  for (const auto& entry : j["result"]["groups"])
    if (entry["name"] == "Heis3 x S3") found = true;
  CHECK(found);

  GroupHandle h;
  REQUIRE(nilaw_group_create("D4", 0, &h.g) == NILAW_OK);
  Owned info;
  REQUIRE(nilaw_group_info(h.g, &info.s) == NILAW_OK);
  CHECK(info.json()["result"]["nilpotency_class"] == 2);
  CHECK(info.json()["result"]["commuting_probability"] == "5/8");
}
