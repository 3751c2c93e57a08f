#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace antopt {

enum class Algorithm { Acs, Pas, Sbsam, Mbmp };
enum class Problem { Tsp, Mbmp, Lop, Route };

std::optional<Algorithm> algorithm_from_string(const std::string& s);
std::optional<Problem> problem_from_string(const std::string& s);
const char* to_string(Algorithm a);
const char* to_string(Problem p);

// Invalid experiment configuration (bad parameter, wrong file pairing, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Algorithm/problem pairing the harness does not support.
class CompatibilityError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

struct ExperimentConfig {
    Algorithm algorithm = Algorithm::Acs;
    Problem problem = Problem::Tsp;
    std::string instance_path;
    std::string demands_path;  // routing only
    std::uint64_t seed = 1;
    int repeats = 1;
    int iterations = -1;  // -1 keeps the per-algorithm default
    int ants = -1;
    int threads = 1;
    std::vector<std::pair<std::string, std::string>> params;
};

struct ExperimentReport {
    // Header plus one row per (run, iteration):
    // run,iteration,best_cost,mean_cost,uturns,blocked_edges
    std::string csv;
    nlohmann::json summary;
};

// Runs `repeats` solves with seeds seed, seed+1, ... and collects the trace
// and the cross-run summary. Deterministic for a fixed config, including
// between sequential (threads=1) and threaded execution.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Full command-line entry point; returns the process exit code.
// 0 success, 2 usage, 3 incompatible pairing, 4 unreadable/invalid instance,
// 5 invalid configuration.
int run_main(int argc, const char* const* argv);

}  // namespace antopt
