#ifndef CURVEREG_IO_HPP
#define CURVEREG_IO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "curvereg/dataset.hpp"
#include "curvereg/experiment.hpp"
#include "curvereg/registration.hpp"

namespace curvereg {

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

/// Records CSV, fixed header
/// scenario,n,J,rep,seed,shift_err,pattern_err,criterion,converged,ms
void write_records_csv(const std::vector<ErrorRecord>& records, const std::filesystem::path& path);
std::vector<ErrorRecord> read_records_csv(const std::filesystem::path& path);

/// Summary CSV, header
/// scenario,n,J,metric,count,min,q1,median,q3,max  (one line per metric)
void write_summary_csv(const std::vector<CellSummary>& summaries,
                       const std::filesystem::path& path);

/// Dataset CSV: header j,t_1..t_n, one row per curve.
void write_dataset_csv(const Dataset& data, const std::filesystem::path& path);
Dataset read_dataset_csv(const std::filesystem::path& path);

/// Generation metadata persisted next to a dataset CSV.
struct TruthSidecar {
    std::vector<double> shifts;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::string scenario;
    std::string density;  // kind:half_width
    double varsigma = 0.0;
    double phi = 0.0;
    std::vector<std::tuple<int, double, double>> template_coeffs;  // (k, re, im)

    FourierTemplate pattern() const;
};

void write_truth_sidecar(const TruthSidecar& truth, const std::filesystem::path& path);
TruthSidecar read_truth_sidecar(const std::filesystem::path& path);

/// Registration result as JSON; includes centered errors when truth is given.
void write_result_json(const RegistrationResult& result, const std::optional<TruthSidecar>& truth,
                       const std::filesystem::path& path);

/// Experiment configuration as JSON. Keys mirror the config fields; unknown
/// keys are rejected at every level.
ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig read_config_json(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& config);

}  // namespace curvereg

#endif
