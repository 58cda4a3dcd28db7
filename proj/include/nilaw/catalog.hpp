#pragma once

#include <string>
#include <vector>

#include "nilaw/group.hpp"

namespace nilaw {

constexpr int kDefaultOrderCap = 2048;

// Group-spec grammar: family(name) terms joined by infix "x" for direct
// products. Families: cyclic(n), dihedral(n), symmetric(n), alternating(n),
// quaternion8, heisenberg(p), extraspecial(p, p|p2), klein,
// cayley-file(path), perm-file(path). Shorthands: C6, D4, S3, A4, Q8.
// Same spec always yields the same table byte-for-byte.
struct BuiltGroup {
  Group group;
  std::string spec;  // canonical form of the accepted spec
};

BuiltGroup build_group_spec(const std::string& spec, int order_cap = kDefaultOrderCap);
Group build_group(const std::string& spec, int order_cap = kDefaultOrderCap);

// Cayley text format: first line "order n", then n rows of n element indices.
// The identity is relabelled to index 0 if the table uses another index.
Group parse_cayley(const std::string& text, int order_cap = kDefaultOrderCap);
std::string serialize_cayley(const Group& g);

// One generator per line (commas between generators also accepted), cycles on
// points 1..16 as "(a b c)(d e)". The group is enumerated by closure.
Group parse_permutations(const std::string& text, int order_cap = kDefaultOrderCap);

// Direct product with lexicographic index pairing: (a, b) -> a * |G2| + b.
Group direct_product(const Group& a, const Group& b, int order_cap = kDefaultOrderCap);

struct CatalogEntry {
  std::string name;
  std::string spec;
  int order;
};

// The built-in corpus used by sweeps and tests. All orders <= 200.
const std::vector<CatalogEntry>& small_catalog();

}  // namespace nilaw
