#include "curvereg/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "curvereg/rng.hpp"

namespace curvereg {

ShiftVector sample_shifts(std::size_t count, const ShiftDensitySpec& density, std::uint64_t seed) {
    if (count == 0) throw std::invalid_argument("sample_shifts: count must be >= 1");
    density.validate();
    std::vector<double> values(count, 0.0);
    if (density.half_width > 0.0) {
        for (std::size_t j = 0; j < count; ++j) {
            CounterRng rng(derive_seed(seed, j));
            values[j] = density.quantile(rng.next_unit());
        }
    }
    return ShiftVector(std::move(values));
}

ProcessRealization sample_from_spectrum(const std::vector<double>& masses, std::uint64_t seed) {
    if (masses.empty()) throw std::invalid_argument("sample_from_spectrum: no masses");
    CounterRng rng(seed);
    double clipped = 0.0, total = 0.0;
    ProcessRealization out;
    out.kind = ProcessKind::Stationary;
    const int kmax = static_cast<int>(masses.size()) - 1;
    for (int k = 0; k <= kmax; ++k) {
        const double m = masses[static_cast<std::size_t>(k)];
        total += std::abs(m);
        if (m < 0.0) clipped += -m;
        const double a = std::sqrt(std::max(0.0, m));
        if (k == 0) {
            out.series.set_coeff(0, a * rng.next_gaussian());
        } else {
            const auto xi = rng.next_complex_gaussian();
            out.series.set_coeff(k, a * xi);
            out.series.set_coeff(-k, a * std::conj(xi));
        }
    }
    out.clipped_fraction = total > 0.0 ? clipped / total : 0.0;
    return out;
}

ProcessRealization sample_stationary_process(const StationaryCovSpec& spec, int max_freq,
                                             std::uint64_t seed) {
    if (max_freq < 1) throw std::invalid_argument("sample_stationary_process: max_freq must be >= 1");
    spec.validate();
    if (spec.varsigma == 0.0) return ProcessRealization::zero();
    auto z = sample_from_spectrum(spec.spectral_masses(max_freq), seed);
    z.kind = ProcessKind::Stationary;
    return z;
}

ProcessRealization sample_nonstationary_process(const NonstationarySpec& spec, std::uint64_t seed) {
    spec.validate();
    if (spec.varsigma == 0.0) return ProcessRealization::zero();
    CounterRng rng(seed);
    const double alpha = spec.varsigma * rng.next_gaussian();
    ProcessRealization out;
    out.kind = ProcessKind::Nonstationary;
    out.series = spec.profile;
    for (int k = -spec.profile.max_freq(); k <= spec.profile.max_freq(); ++k)
        out.series.set_coeff(k, alpha * spec.profile.coeff(k));
    return out;
}

std::vector<ProcessRealization> sample_stationary_processes(const StationaryCovSpec& spec,
                                                            std::size_t count, int max_freq,
                                                            std::uint64_t seed) {
    if (max_freq < 1) throw std::invalid_argument("sample_stationary_processes: max_freq must be >= 1");
    spec.validate();
    std::vector<ProcessRealization> out;
    out.reserve(count);
    if (spec.varsigma == 0.0) {
        for (std::size_t j = 0; j < count; ++j) out.push_back(ProcessRealization::zero());
        return out;
    }
    const auto masses = spec.spectral_masses(max_freq);  // shared across curves
    for (std::size_t j = 0; j < count; ++j)
        out.push_back(sample_from_spectrum(masses, derive_seed(seed, j)));
    return out;
}

std::vector<ProcessRealization> sample_nonstationary_processes(const NonstationarySpec& spec,
                                                               std::size_t count,
                                                               std::uint64_t seed) {
    std::vector<ProcessRealization> out;
    out.reserve(count);
    for (std::size_t j = 0; j < count; ++j)
        out.push_back(sample_nonstationary_process(spec, derive_seed(seed, j)));
    return out;
}

std::vector<ProcessRealization> zero_processes(std::size_t count) {
    return std::vector<ProcessRealization>(count);
}

Dataset generate_dataset(const FourierTemplate& pattern, const ShiftVector& shifts,
                         const std::vector<ProcessRealization>& processes, double sigma,
                         const DesignGrid& grid, std::uint64_t seed) {
    const std::size_t J = shifts.size();
    if (processes.size() != J)
        throw std::invalid_argument("generate_dataset: one process realization per curve required");
    if (!(sigma >= 0.0)) throw std::invalid_argument("generate_dataset: sigma must be >= 0");

    const int n = grid.size();
    Dataset data{grid, J, std::vector<double>(J * static_cast<std::size_t>(n), 0.0), std::nullopt};

    std::vector<double> row(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < J; ++j) {
        const double theta = shifts[j];
        for (int i = 0; i < n; ++i) row[static_cast<std::size_t>(i)] = pattern.value(grid.point(i) - theta);
        processes[j].add_on_grid(grid, theta, row);
        if (sigma > 0.0) {
            CounterRng rng(derive_seed(seed, j));
            for (int i = 0; i < n; ++i) row[static_cast<std::size_t>(i)] += sigma * rng.next_gaussian();
        }
        for (int i = 0; i < n; ++i) data.at(j, i) = row[static_cast<std::size_t>(i)];
    }

    data.truth = DatasetTruth{shifts, pattern, sigma, processes, seed};
    return data;
}

}  // namespace curvereg
