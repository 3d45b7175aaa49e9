#pragma once

#include "lpconj/error.hpp"
#include "lpconj/lp_core.hpp"
#include "lpconj/warp_map.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lpconj::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kHypothesis = 3,
    kDomain = 4,
    kIo = 5,
    kVerificationFailed = 6,
};

/// A file or stream could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    std::string command;
    std::string weights;
    std::string exponents;
    std::string input;
    double p = 2.0;
    std::size_t samples = 1000;
    std::uint64_t seed = 7;
    double epsilon = 0.1;
    double radius_factor = 2.0;
    std::string indices = "1,10,100,1000";
    std::uint64_t cap = 1000000;
    std::optional<double> tolerance;
    std::string out;
    std::string format = "json";
    std::string mode = "auto";
    bool inverse = false;
};

/// Parses the command line and runs it. The report goes to `out` (or the
/// --out file); diagnostics and pass/fail lines go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "2", "-0.5", "3i", "-i", "1+2i", "1.5e-3-2e2i"
Complex parse_complex(const std::string& text);

/// Compact "constant:Z" | "list:Z1,Z2,...[,tail=Z]" | "harmonic:C,A" (w_n = C + A/n),
/// inline JSON starting with '{', or a path to a JSON file.
WeightSeq parse_weights(const std::string& spec);

/// As parse_weights with real values; "list" and others accept a trailing
/// "bound=R" token.
ExponentSeq parse_exponents(const std::string& spec);

std::vector<Index> parse_indices(const std::string& text);

/// Runs the invariant suite; returns the JSON report. Pass/fail lines for each
/// property are written to `log`.
nlohmann::json selftest(std::uint64_t seed, std::size_t samples, std::optional<double> tolerance,
                        std::ostream& log);

} // namespace lpconj::cli
