#pragma once

#include <stdexcept>
#include <string>

namespace nilaw {

// Error taxonomy mirrors the CLI exit codes: invalid/parse/budget -> 2,
// soundness -> 3. Soundness means an internal invariant that is guaranteed
// by theorem was observed to fail, i.e. an implementation bug.
enum class ErrorKind { kInvalidArgument, kParse, kBudget, kSoundness, kIo };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace nilaw
