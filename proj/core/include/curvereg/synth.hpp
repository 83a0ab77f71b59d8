#ifndef CURVEREG_SYNTH_HPP
#define CURVEREG_SYNTH_HPP

#include <cstdint>
#include <vector>

#include "curvereg/dataset.hpp"
#include "curvereg/fourier.hpp"
#include "curvereg/model.hpp"
#include "curvereg/process.hpp"

namespace curvereg {

/// J i.i.d. draws from the shift prior. Shift j consumes only the child
/// stream derive_seed(seed, j), so a longer vector extends a shorter one
/// drawn under the same master seed.
ShiftVector sample_shifts(std::size_t count, const ShiftDensitySpec& density, std::uint64_t seed);

/// Spectral synthesis from explicit masses: Z(t) = sum_{|k|<=K} a_k xi_k
/// e^{i 2 pi k t} with Hermitian-paired standard complex Gaussians xi_k and
/// a_k^2 = max(0, masses[|k|]). Negative mass is clipped and the clipped
/// fraction reported on the realization.
ProcessRealization sample_from_spectrum(const std::vector<double>& masses, std::uint64_t seed);

/// One stationary path with masses r_k = int_0^1 R(t) e^{-i 2 pi k t} dt.
ProcessRealization sample_stationary_process(const StationaryCovSpec& spec, int max_freq,
                                             std::uint64_t seed);

/// One rank-one path alpha psi with alpha ~ N(0, varsigma^2).
ProcessRealization sample_nonstationary_process(const NonstationarySpec& spec, std::uint64_t seed);

/// Per-curve batches; curve j uses derive_seed(seed, j) so prefixes agree
/// across different J under the same master seed.
std::vector<ProcessRealization> sample_stationary_processes(const StationaryCovSpec& spec,
                                                            std::size_t count, int max_freq,
                                                            std::uint64_t seed);
std::vector<ProcessRealization> sample_nonstationary_processes(const NonstationarySpec& spec,
                                                               std::size_t count,
                                                               std::uint64_t seed);
std::vector<ProcessRealization> zero_processes(std::size_t count);

/// Y_j^l = f(l/n - theta_j) + Z_j(l/n - theta_j) + sigma eps_j^l with i.i.d.
/// standard normal eps. Curve j's noise uses derive_seed(seed, j). The truth
/// record is attached to the result.
Dataset generate_dataset(const FourierTemplate& pattern, const ShiftVector& shifts,
                         const std::vector<ProcessRealization>& processes, double sigma,
                         const DesignGrid& grid, std::uint64_t seed);

}  // namespace curvereg

#endif
