#include "curvereg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "curvereg/rng.hpp"
#include "curvereg/synth.hpp"

namespace curvereg {

namespace {

// Seed-stream salts for the independent randomness sinks of one cell.
constexpr std::uint64_t kShiftStream = 1;
constexpr std::uint64_t kProcessStream = 2;
constexpr std::uint64_t kNoiseStream = 3;
constexpr std::uint64_t kOptimizerStream = 4;

void parallel_cells(std::size_t count, int threads, const std::function<void(std::size_t)>& work) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int workers = std::min<int>(threads, static_cast<int>(count));
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) work(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::Sim: return "SIM";
        case Scenario::Stationary: return "stationary";
        case Scenario::Nonstationary: return "nonstationary";
    }
    return "SIM";
}

Scenario scenario_from_string(const std::string& s) {
    if (s == "SIM") return Scenario::Sim;
    if (s == "stationary") return Scenario::Stationary;
    if (s == "nonstationary") return Scenario::Nonstationary;
    throw std::invalid_argument("unknown scenario: " + s);
}

ExperimentConfig ExperimentConfig::defaults(Scenario scenario) {
    ExperimentConfig config;
    config.scenario = scenario;
    switch (scenario) {
        case Scenario::Sim:
            config.sigma = 2.0;
            break;
        case Scenario::Stationary:
            config.sigma = 8.0;
            config.varsigma = 4.0;
            config.phi = 4.0;
            break;
        case Scenario::Nonstationary:
            config.sigma = 8.0;
            config.varsigma = 4.0;
            break;
    }
    return config;
}

void ExperimentConfig::validate() const {
    if (n_list.empty()) throw std::invalid_argument("ExperimentConfig: n_list must be non-empty");
    if (j_list.empty()) throw std::invalid_argument("ExperimentConfig: J_list must be non-empty");
    const int n_min = *std::min_element(n_list.begin(), n_list.end());
    if (n_min < 3) throw std::invalid_argument("ExperimentConfig: every n must be >= 3");
    if (cutoff < 0 || 2 * cutoff >= n_min)
        throw std::invalid_argument("ExperimentConfig: lambda must satisfy lambda < min(n)/2");
    for (int j : j_list)
        if (j < 2) throw std::invalid_argument("ExperimentConfig: every J must be >= 2");
    if (repetitions < 1) throw std::invalid_argument("ExperimentConfig: repetitions must be >= 1");
    if (!(sigma >= 0.0)) throw std::invalid_argument("ExperimentConfig: sigma must be >= 0");
    if (!(varsigma >= 0.0)) throw std::invalid_argument("ExperimentConfig: varsigma must be >= 0");
    if (scenario == Scenario::Stationary && !(phi > 0.0))
        throw std::invalid_argument("ExperimentConfig: phi must be > 0");
    density.validate();
    optimizer.validate();
    builtin_template(template_name);  // throws for unknown names
}

std::uint64_t cell_seed(std::uint64_t master, Scenario scenario, int n, int j_count, int rep) {
    std::uint64_t s = master;
    s = derive_seed(s, static_cast<std::uint64_t>(scenario) + 11);
    s = derive_seed(s, static_cast<std::uint64_t>(n));
    s = derive_seed(s, static_cast<std::uint64_t>(j_count));
    s = derive_seed(s, static_cast<std::uint64_t>(rep));
    return s;
}

std::vector<ErrorRecord> run_experiment(const ExperimentConfig& config, const RunOptions& run) {
    config.validate();
    const FourierTemplate pattern = builtin_template(config.template_name);

    struct Cell {
        int n, j_count, rep;
    };
    std::vector<Cell> cells;
    for (int n : config.n_list)
        for (int j : config.j_list)
            for (int rep = 0; rep < config.repetitions; ++rep) cells.push_back({n, j, rep});

    std::vector<ErrorRecord> records(cells.size());

    parallel_cells(cells.size(), run.threads, [&](std::size_t idx) {
        const Cell& cell = cells[idx];
        const std::uint64_t seed =
            cell_seed(config.seed, config.scenario, cell.n, cell.j_count, cell.rep);
        const auto t0 = std::chrono::steady_clock::now();

        const DesignGrid grid(cell.n);
        const std::size_t J = static_cast<std::size_t>(cell.j_count);
        const ShiftVector shifts =
            sample_shifts(J, config.density, derive_seed(seed, kShiftStream));

        std::vector<ProcessRealization> processes;
        switch (config.scenario) {
            case Scenario::Sim:
                processes = zero_processes(J);
                break;
            case Scenario::Stationary: {
                StationaryCovSpec spec{config.varsigma, config.phi};
                processes = sample_stationary_processes(spec, J, cell.n / 2,
                                                        derive_seed(seed, kProcessStream));
                break;
            }
            case Scenario::Nonstationary: {
                NonstationarySpec spec{config.varsigma, default_amplitude_profile()};
                processes =
                    sample_nonstationary_processes(spec, J, derive_seed(seed, kProcessStream));
                break;
            }
        }

        const Dataset data = generate_dataset(pattern, shifts, processes, config.sigma, grid,
                                              derive_seed(seed, kNoiseStream));
        const SmoothedCurves smoothed = dft_coeffs(data, config.cutoff);

        OptimizerOptions opts = config.optimizer;
        opts.seed = derive_seed(derive_seed(seed, kOptimizerStream), config.optimizer.seed);
        const RegistrationResult fit = estimate_shifts(smoothed, opts);

        ErrorRecord rec;
        rec.scenario = to_string(config.scenario);
        rec.n = cell.n;
        rec.j_count = cell.j_count;
        rec.rep = cell.rep;
        rec.seed = seed;
        rec.shift_err = shift_error(fit.theta_hat, shifts, ErrorMode::Centered);
        rec.pattern_err = pattern_error(fit.frechet_mean, pattern, shifts.mean());
        rec.criterion = fit.criterion_value;
        rec.converged = fit.converged;
        if (run.measure_time) {
            const auto t1 = std::chrono::steady_clock::now();
            rec.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        }
        records[idx] = std::move(rec);
    });

    std::sort(records.begin(), records.end(), [](const ErrorRecord& a, const ErrorRecord& b) {
        return std::tie(a.scenario, a.n, a.j_count, a.rep) <
               std::tie(b.scenario, b.n, b.j_count, b.rep);
    });
    return records;
}

Quartiles quartiles_of(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("quartiles_of: empty input");
    std::sort(values.begin(), values.end());
    const auto at = [&values](double p) {
        const double h = p * static_cast<double>(values.size() - 1);
        const std::size_t i = static_cast<std::size_t>(h);
        const double frac = h - static_cast<double>(i);
        if (i + 1 >= values.size()) return values.back();
        return values[i] + frac * (values[i + 1] - values[i]);
    };
    return {values.front(), at(0.25), at(0.5), at(0.75), values.back()};
}

std::vector<CellSummary> summarize(const std::vector<ErrorRecord>& records) {
    if (records.empty()) throw std::invalid_argument("summarize: no records");

    struct Key {
        std::string scenario;
        int n, j_count;
        bool operator<(const Key& o) const {
            return std::tie(scenario, n, j_count) < std::tie(o.scenario, o.n, o.j_count);
        }
    };
    std::map<Key, std::pair<std::vector<double>, std::vector<double>>> groups;
    for (const auto& r : records) {
        auto& g = groups[{r.scenario, r.n, r.j_count}];
        g.first.push_back(r.shift_err);
        g.second.push_back(r.pattern_err);
    }

    std::vector<CellSummary> out;
    out.reserve(groups.size());
    for (auto& [key, vals] : groups) {
        CellSummary s;
        s.scenario = key.scenario;
        s.n = key.n;
        s.j_count = key.j_count;
        s.count = vals.first.size();
        s.shift_err = quartiles_of(std::move(vals.first));
        s.pattern_err = quartiles_of(std::move(vals.second));
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace curvereg
