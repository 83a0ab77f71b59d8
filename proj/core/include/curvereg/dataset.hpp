#ifndef CURVEREG_DATASET_HPP
#define CURVEREG_DATASET_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "curvereg/fourier.hpp"
#include "curvereg/model.hpp"
#include "curvereg/process.hpp"

namespace curvereg {

/// Ground truth stored alongside synthetic observations.
struct DatasetTruth {
    ShiftVector shifts;
    FourierTemplate pattern;
    double sigma = 0.0;
    std::vector<ProcessRealization> processes;
    std::uint64_t seed = 0;
};

/// J x n observation matrix, row j holding curve j sampled on the grid.
struct Dataset {
    DesignGrid grid;
    std::size_t curves = 0;
    std::vector<double> y;  // row-major, curves x grid.size()

    std::optional<DatasetTruth> truth;

    double at(std::size_t j, int i) const noexcept {
        return y[j * static_cast<std::size_t>(grid.size()) + static_cast<std::size_t>(i)];
    }
    double& at(std::size_t j, int i) noexcept {
        return y[j * static_cast<std::size_t>(grid.size()) + static_cast<std::size_t>(i)];
    }
};

}  // namespace curvereg

#endif
