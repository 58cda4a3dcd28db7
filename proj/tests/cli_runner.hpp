#pragma once

// Spawns the CLI binary and captures stdout + exit code. Test-only.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

namespace nilaw::testing {

struct CliResult {
  int exit_code = -1;
  std::string output;
  double seconds = 0.0;
};

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'')
      q += "'\\''";
    else
      q += c;
  }
  q += "'";
  return q;
}

inline CliResult run_cli(const std::string& cli, const std::vector<std::string>& args,
                         const std::string& env_prefix = "") {
  std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + shell_quote(cli);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>/dev/null";
  auto start = std::chrono::steady_clock::now();
  FILE* pipe = popen(cmd.c_str(), "r");
  CliResult r;
  if (!pipe) return r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  int status = pclose(pipe);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace nilaw::testing
