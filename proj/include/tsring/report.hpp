#pragma once

// Command implementations behind the command-line tool. Each command returns
// the full report text and the process exit code.

#include <cstdint>
#include <string>
#include <vector>

#include "tsring/scalar.hpp"

namespace tsring {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInconclusive = 3;

struct CommandOutput {
  std::string text;
  int exit_code = kExitOk;
};

struct VerifyOptions {
  std::vector<std::string> which;               // empty selects every check
  std::vector<FieldSpec> fields{FieldSpec{}};   // Q by default
  std::size_t scan_bound = 20;
  std::uint64_t seed = 0;                       // accepted, unused
  bool timing = false;
};

const std::vector<std::string>& known_checks();

// Parses "a,b,c" lists.
std::vector<std::string> split_list(const std::string& text);
std::vector<FieldSpec> parse_fields(const std::string& text);

CommandOutput cmd_basis(std::uint32_t p, std::uint32_t n, std::uint32_t e);
CommandOutput cmd_table(std::uint32_t p, std::uint32_t n, std::uint32_t e, const std::string& format);
CommandOutput cmd_verify(std::uint32_t p, std::uint32_t n, std::uint32_t e, const VerifyOptions& options);

}  // namespace tsring
