#include "nilaw/verify.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace nilaw {

namespace {

using Json = nlohmann::json;

// Own transcription of the canonical right-pattern rows. Deliberately not
// shared with the search kernels: the checker must stand on its own feet.
constexpr int kRows[12][3] = {
    {0, 0, 0}, {1, 2, 3}, {1, 2, 0}, {1, 0, 2}, {1, 0, 0}, {1, 0, 3},
    {0, 0, 1}, {0, 2, 1}, {0, 2, 0}, {0, 0, 2}, {0, 2, 3}, {0, 0, 3},
};

std::string triple_str(element_t a, element_t b, element_t c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

}  // namespace

VerifyOutcome verify_certificate(const Group& g, const std::string& certificate_text) {
  VerifyOutcome out;
  auto mismatch = [&](const std::string& what) {
    out.ok = false;
    out.first_mismatch = what;
    return out;
  };

  Json j;
  try {
    j = Json::parse(certificate_text);
  } catch (const std::exception& e) {
    return mismatch(std::string("certificate is not valid JSON: ") + e.what());
  }

  const int n = g.order();
  if (j.contains("group") && j["group"].contains("order")) {
    int claimed = j["group"]["order"].get<int>();
    if (claimed != n)
      return mismatch("certificate group order " + std::to_string(claimed) +
                      " does not match the given group order " + std::to_string(n));
  }

  if (j.contains("pattern")) {
    const Json& pat = j["pattern"];
    if (pat.value("side", "right") != "right")
      return mismatch("certificate pattern side is not right");
    if (pat.contains("rows")) {
      const Json& rows = pat["rows"];
      if (rows.size() != 12) return mismatch("certificate pattern does not have 12 rows");
      for (size_t r = 0; r < 12; ++r)
        for (size_t c = 0; c < 3; ++c)
          if (rows[r][c].get<int>() != kRows[r][c])
            return mismatch("certificate pattern row " + std::to_string(r) +
                            " differs from the canonical pattern");
    }
  }

  // U: defaults to {identity}; must contain the identity, stay in range and
  // be closed under inversion
  std::vector<element_t> u;
  if (j.contains("u_members") && !j["u_members"].empty())
    for (const auto& v : j["u_members"]) u.push_back(v.get<element_t>());
  else
    u.push_back(0);
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  for (element_t e : u)
    if (!g.valid_element(e))
      return mismatch("U member " + std::to_string(e) + " out of range");
  if (u.front() != 0) return mismatch("U does not contain the identity");
  {
    std::vector<char> in_u(size_t(n), 0);
    for (element_t e : u) in_u[e] = 1;
    for (element_t e : u)
      if (!in_u[g.inv(e)])
        return mismatch("U is not symmetric: inverse of " + std::to_string(e) + " is missing");
  }

  std::map<uint64_t, std::array<element_t, 3>> witnesses;
  if (j.contains("witnesses"))
    for (const auto& entry : j["witnesses"]) {
      auto ge = entry["g"];
      auto xe = entry["x"];
      element_t g1 = ge[0].get<element_t>(), g2 = ge[1].get<element_t>(),
                g3 = ge[2].get<element_t>();
      element_t x1 = xe[0].get<element_t>(), x2 = xe[1].get<element_t>(),
                x3 = xe[2].get<element_t>();
      for (element_t e : {g1, g2, g3, x1, x2, x3})
        if (!g.valid_element(e))
          return mismatch("witness entry contains an out-of-range element");
      witnesses[(uint64_t(g1) * n + g2) * uint64_t(n) + g3] = {x1, x2, x3};
    }

  // every triple over U must satisfy all twelve conditions through its
  // witness (default witness: the identity triple), and the conclusion
  for (element_t g1 : u)
    for (element_t g2 : u)
      for (element_t g3 : u) {
        uint64_t key = (uint64_t(g1) * n + g2) * uint64_t(n) + g3;
        std::array<element_t, 3> x{0, 0, 0};
        if (auto it = witnesses.find(key); it != witnesses.end()) x = it->second;
        const element_t gs[3] = {g1, g2, g3};
        for (int r = 0; r < 12; ++r) {
          element_t y[3];
          for (int c = 0; c < 3; ++c)
            y[c] = kRows[r][c] == 0 ? x[c] : g.mul(x[c], gs[kRows[r][c] - 1]);
          if (g.comm(g.comm(y[0], y[1]), y[2]) != 0)
            return mismatch("witness " + triple_str(x[0], x[1], x[2]) + " for g=" +
                            triple_str(g1, g2, g3) + " fails condition row " + std::to_string(r));
        }
        if (g.comm(g.comm(g1, g2), g3) != 0)
          return mismatch("certified triple g=" + triple_str(g1, g2, g3) +
                          " does not satisfy the conclusion");
        ++out.checked_triples;
      }

  // H = <U> recomputed from scratch
  Subgroup h = generate_subgroup(g, u);
  if (j.contains("h_members")) {
    std::vector<element_t> claimed;
    for (const auto& v : j["h_members"]) claimed.push_back(v.get<element_t>());
    std::sort(claimed.begin(), claimed.end());
    if (claimed != h.members)
      return mismatch("claimed H membership differs from the recomputed subgroup (" +
                      std::to_string(claimed.size()) + " vs " +
                      std::to_string(h.members.size()) + " elements)");
  }

  auto cls = nilpotency_class(h);
  if (!cls || *cls > 2)
    return mismatch("recomputed subgroup has nilpotency class " +
                    (cls ? std::to_string(*cls) : std::string("none")) + " > 2");
  if (j.contains("nilpotency_class") && !j["nilpotency_class"].is_null() &&
      j["nilpotency_class"].get<int>() != *cls)
    return mismatch("claimed nilpotency class " + std::to_string(j["nilpotency_class"].get<int>()) +
                    " differs from the recomputed class " + std::to_string(*cls));

  int index = n / h.order();
  if (j.contains("index") && j["index"].get<int>() != index)
    return mismatch("claimed index " + std::to_string(j["index"].get<int>()) +
                    " differs from the recomputed index " + std::to_string(index));

  return out;
}

}  // namespace nilaw
