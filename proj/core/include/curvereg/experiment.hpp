#ifndef CURVEREG_EXPERIMENT_HPP
#define CURVEREG_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "curvereg/model.hpp"
#include "curvereg/registration.hpp"

namespace curvereg {

enum class Scenario { Sim, Stationary, Nonstationary };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

/// Full description of one Monte Carlo study over a (n, J) grid.
struct ExperimentConfig {
    Scenario scenario = Scenario::Sim;
    std::string template_name = "default";
    double sigma = 2.0;
    double varsigma = 4.0;  // perturbation scale, stationary / nonstationary
    double phi = 4.0;       // stationary covariance shape
    ShiftDensitySpec density{DensityKind::Uniform, 0.2};
    int cutoff = 7;
    std::vector<int> n_list{512, 1024};
    std::vector<int> j_list{20, 40, 60, 80, 100};
    int repetitions = 20;
    std::uint64_t seed = 2024;
    OptimizerOptions optimizer{};
    std::string output_dir;

    static ExperimentConfig defaults(Scenario scenario);

    void validate() const;
};

/// One (n, J, repetition) cell outcome.
struct ErrorRecord {
    std::string scenario;
    int n = 0;
    int j_count = 0;
    int rep = 0;
    std::uint64_t seed = 0;  // the derived cell seed
    double shift_err = 0.0;  // (1/J)||theta_hat - centered theta*||^2
    double pattern_err = 0.0;
    double criterion = 0.0;
    bool converged = false;
    double ms = 0.0;  // wall clock per cell; 0 when timing is disabled
};

struct RunOptions {
    int threads = 1;           // cells are independent; 0 means hardware choice
    bool measure_time = true;  // disable for byte-reproducible output files
};

/// Runs every (n, J, rep) cell: derive the cell seed, draw shifts and
/// perturbations, generate data, smooth, register, and record centered
/// errors. Deterministic given the config; records come back sorted by
/// (scenario, n, J, rep) regardless of thread count. A cell whose optimizer
/// fails to converge is recorded with converged=false, never dropped.
std::vector<ErrorRecord> run_experiment(const ExperimentConfig& config, const RunOptions& run = {});

struct Quartiles {
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

/// Linear-interpolation quantile: at probability p the value is
/// x_i + frac * (x_{i+1} - x_i) with i = floor((N-1) p) on sorted data.
Quartiles quartiles_of(std::vector<double> values);

struct CellSummary {
    std::string scenario;
    int n = 0;
    int j_count = 0;
    std::size_t count = 0;
    Quartiles shift_err;
    Quartiles pattern_err;
};

/// Per-(scenario, n, J) boxplot statistics. Rejects empty input; invariant
/// under record order.
std::vector<CellSummary> summarize(const std::vector<ErrorRecord>& records);

/// The derived per-cell seed used by run_experiment; exposed so external
/// drivers can reproduce a single cell.
std::uint64_t cell_seed(std::uint64_t master, Scenario scenario, int n, int j_count, int rep);

}  // namespace curvereg

#endif
