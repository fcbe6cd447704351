#pragma once

// Command-line front end: seeded batches, eta export, convergence tables,
// resolvent checks and bound audits written as CSV or JSON.

#include "ssf/linalg.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssf::cli {

enum class Command { Verify, Eta, Converge, Resolvent, Bounds };
enum class Format { Csv, Json };

struct RunConfig {
    Command command = Command::Verify;
    int dim = 4;
    std::uint64_t seed = 1;
    int trials = 10;
    double scale = 1.0;  // ||A||_op
    int rmax = 8;
    int s_nodes = 64;
    int grid = 1025;
    double tol = 1e-8;
    int ambient = 256;
    std::vector<int> ranks{8, 16, 32, 64};  // cell counts n of the window partition
    Complex z{0.5, 0.0};
    std::filesystem::path out;  // output directory; empty: $SSF_OUTPUT_DIR or "."
    std::optional<Format> format;
    int threads = 1;
    int rank_L = 2;       // rank of A in converge / bounds
    int power = 2;        // converge uses p = z^power
    double threshold = 1e-3;
    int terms = 0;        // resolvent expansion length; 0 = from the tail bound
};

/// Bad configuration; maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Command parse_command(const std::string& name);
std::string command_name(Command c);
Format parse_format(const std::string& name);
/// Accepts "a", "a+bi", "a-bi", "bi" and "a,b".
Complex parse_complex(const std::string& text);

void validate(const RunConfig& cfg);

/// Fields present in a JSON object (same keys as the long flags, with '-'
/// replaced by '_') override `base`.
RunConfig apply_json(RunConfig base, const std::string& json_text);

struct RunResult {
    int exit_code = 0;
    std::vector<std::filesystem::path> files;
};

/// Runs one command; exit_code 0 iff every check passed, 1 otherwise.
/// Throws ConfigError for invalid configurations.
RunResult run(const RunConfig& cfg, std::ostream& log);

/// Full entry point: parses argv, runs, and maps failures to exit codes.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

/// 17 significant digits.
std::string format_real(double x);

}  // namespace ssf::cli
