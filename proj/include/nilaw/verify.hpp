#pragma once

#include <cstdint>
#include <string>

#include "nilaw/group.hpp"

namespace nilaw {

// Independent certificate checker. Re-derives every claim in a replay bundle
// from scratch using only group-core arithmetic: U symmetry, all witness
// memberships and conclusions, H = <U>, its order, index and nilpotency
// class. Shares no evaluation code with the search kernels (it carries its
// own transcription of the canonical pattern).
struct VerifyOutcome {
  bool ok = true;
  std::string first_mismatch;  // empty when ok
  uint64_t checked_triples = 0;
};

VerifyOutcome verify_certificate(const Group& g, const std::string& certificate_text);

}  // namespace nilaw
