#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "run_config.hpp"

namespace vibecho::cli {

/// A non-OK status from the library, carried up to the exit-code mapping.
class LibraryError : public std::runtime_error {
 public:
  LibraryError(ve_status status, const std::string& message)
      : std::runtime_error(message), status_(status) {}
  ve_status status() const { return status_; }

 private:
  ve_status status_;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

int exit_code_for(ve_status status);

/// Each command writes into `out_dir` (created if missing) and returns 0.
/// Failures are thrown as ConfigError or LibraryError.
int cmd_run(const RunConfig& config, const std::filesystem::path& out_dir);
int cmd_scan_tau(const RunConfig& config, const std::filesystem::path& out_dir);
int cmd_compare(const RunConfig& config, const std::filesystem::path& out_dir);

/// JSON summary of the timescales, in the input unit system and in natural units.
std::string params_report(const RunConfig& config);

}  // namespace vibecho::cli
