#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nilaw/error.hpp"

namespace nilaw {

using element_t = int32_t;

// Finite group on elements 0..n-1 stored as a dense multiplication table.
// Index 0 is always the identity; builders and parsers relabel if necessary.
// Construction validates the group axioms: identity, two-sided inverses,
// rows/columns are permutations, associativity (exhaustive for
// n <= kAssocExhaustiveCap, a fixed-seed random sample of triples above).
// Immutable after construction; safe to share across worker threads.
class Group {
 public:
  static constexpr int kAssocExhaustiveCap = 128;
  static constexpr uint64_t kAssocSampleCount = 100000;

  Group(std::string name, int order, std::vector<element_t> mul_table);

  int order() const { return n_; }
  const std::string& name() const { return name_; }

  element_t mul(element_t a, element_t b) const { return mul_[size_t(a) * n_ + b]; }
  element_t inv(element_t a) const { return inv_[a]; }

  // a^b = b^-1 a b
  element_t conj(element_t a, element_t b) const { return mul(mul(inv_[b], a), b); }

  // [a,b] = a^-1 b^-1 a b
  element_t comm(element_t a, element_t b) const {
    return mul(mul(mul(inv_[a], inv_[b]), a), b);
  }

  // Left-normed [x1,...,xm] = [[x1,...,x_{m-1}], xm]; a single element is
  // returned unchanged.
  element_t comm(std::span<const element_t> xs) const;

  bool commute(element_t a, element_t b) const { return mul(a, b) == mul(b, a); }
  bool is_abelian() const;
  bool valid_element(element_t a) const { return a >= 0 && a < n_; }

  const std::vector<element_t>& table() const { return mul_; }

 private:
  void validate() const;

  int n_;
  std::string name_;
  std::vector<element_t> mul_;
  std::vector<element_t> inv_;
};

// Subgroup of `parent`, stored as a sorted member list plus a bitset.
// Always contains the identity. The parent group must outlive the subgroup.
struct Subgroup {
  const Group* parent = nullptr;
  std::vector<element_t> members;
  std::vector<element_t> generators;
  std::vector<uint64_t> bits;

  int order() const { return int(members.size()); }
  bool contains(element_t a) const { return (bits[size_t(a) >> 6] >> (a & 63)) & 1; }
};

// Closure of gens, their inverses and the identity under multiplication
// (dense worklist over the table). Asserts Lagrange: |result| divides |G|.
Subgroup generate_subgroup(const Group& g, std::vector<element_t> gens);

Subgroup whole_group(const Group& g);

// gamma_1 = H, gamma_{i+1} = <[a,b] : a in gamma_i, b in H>. Returns the
// strictly descending chain ending at the first stable term (which repeats
// forever); the chain ends at the trivial subgroup iff H is nilpotent.
std::vector<Subgroup> lower_central_series(const Subgroup& h);

// Class c iff the series reaches the trivial subgroup in c steps; nullopt if
// it stabilizes above the identity (H not nilpotent).
std::optional<int> nilpotency_class(const Subgroup& h);
std::optional<int> nilpotency_class(const Group& g);

}  // namespace nilaw
