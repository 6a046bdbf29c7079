#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace eclc::cli {

enum ExitStatus : int { kOk = 0, kFailure = 1, kUsage = 2 };

enum class OutputFormat { Json, Csv, Both };

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> trials;
    std::filesystem::path out_dir = ".";
    OutputFormat format = OutputFormat::Both;
    /// Used when neither the flag nor the file sets a seed.
    std::optional<std::uint64_t> env_seed;
};

int cmd_validate(const std::filesystem::path& path, std::ostream& out, std::ostream& err);

/// Proves a named sequent under the λ and κ of `world` (default: the
/// sequent's source world).
int cmd_prove(const std::filesystem::path& path, const std::string& sequent, const std::optional<std::string>& world,
              std::ostream& out, std::ostream& err);

/// Nothing is written unless the scenario ran to completion.
int cmd_run(const std::filesystem::path& path, const RunOptions& options, std::ostream& out, std::ostream& err);

/// Two-column κ,π CSV, optional header line.
int cmd_fit(const std::filesystem::path& csv, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; reads ECLC_SEED for `run`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eclc::cli
