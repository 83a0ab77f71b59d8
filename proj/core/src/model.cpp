#include "curvereg/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "curvereg/numeric.hpp"

namespace curvereg {

DesignGrid::DesignGrid(int n) : n_(n) {
    if (n < 3) throw std::invalid_argument("DesignGrid: n must be >= 3");
}

ShiftVector::ShiftVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("ShiftVector: at least one shift required");
    for (double v : values_) {
        if (!(std::abs(v) <= 0.5 + 1e-12))
            throw std::invalid_argument("ShiftVector: entries must lie in [-1/2, 1/2]");
    }
}

double ShiftVector::mean() const noexcept {
    return std::accumulate(values_.begin(), values_.end(), 0.0) /
           static_cast<double>(values_.size());
}

ShiftVector ShiftVector::centered() const {
    const double m = mean();
    std::vector<double> v(values_);
    for (double& x : v) x -= m;
    return ShiftVector(std::move(v));
}

bool ShiftVector::is_centered(double tol) const noexcept {
    return std::abs(std::accumulate(values_.begin(), values_.end(), 0.0)) <= tol;
}

double ShiftVector::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

std::string to_string(DensityKind kind) {
    return kind == DensityKind::Uniform ? "uniform" : "raised-cosine";
}

DensityKind density_kind_from_string(const std::string& s) {
    if (s == "uniform") return DensityKind::Uniform;
    if (s == "raised-cosine") return DensityKind::RaisedCosine;
    throw std::invalid_argument("unknown density kind: " + s);
}

void ShiftDensitySpec::validate() const {
    if (!(half_width >= 0.0) || half_width >= 0.5)
        throw std::invalid_argument("ShiftDensitySpec: half_width must lie in [0, 1/2)");
}

double ShiftDensitySpec::pdf(double x) const {
    validate();
    if (half_width == 0.0)
        throw std::invalid_argument("ShiftDensitySpec: pdf undefined for degenerate support");
    if (std::abs(x) >= half_width) return 0.0;
    if (kind == DensityKind::Uniform) return 0.5 / half_width;
    const double u = 0.5 * std::numbers::pi * x / half_width;
    const double c = std::cos(u);
    return c * c / half_width;
}

double ShiftDensitySpec::cdf(double x) const {
    validate();
    if (half_width == 0.0) return x < 0.0 ? 0.0 : 1.0;
    if (x <= -half_width) return 0.0;
    if (x >= half_width) return 1.0;
    if (kind == DensityKind::Uniform) return (x + half_width) / (2.0 * half_width);
    return (x + half_width) / (2.0 * half_width) +
           std::sin(std::numbers::pi * x / half_width) / (2.0 * std::numbers::pi);
}

double ShiftDensitySpec::quantile(double u) const {
    validate();
    if (half_width == 0.0)
        throw std::invalid_argument("ShiftDensitySpec: quantile undefined for degenerate support");
    if (!(u > 0.0 && u < 1.0))
        throw std::invalid_argument("ShiftDensitySpec: quantile argument must lie in (0,1)");
    if (kind == DensityKind::Uniform) return half_width * (2.0 * u - 1.0);
    // cdf is strictly increasing on the support; bisect to full precision.
    double lo = -half_width, hi = half_width;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < u)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-16 * half_width) break;
    }
    return 0.5 * (lo + hi);
}

double ShiftDensitySpec::fisher_integrand(double x) const {
    validate();
    if (kind == DensityKind::Uniform)
        throw std::invalid_argument(
            "Fisher information undefined for the uniform density: the prior must be "
            "continuously differentiable and vanish at its support boundary");
    if (half_width == 0.0)
        throw std::invalid_argument("ShiftDensitySpec: degenerate support");
    if (std::abs(x) > half_width) return 0.0;
    // (g'/g)^2 g simplifies to (pi^2 / rho'^3) sin^2(pi x / (2 rho')), which is
    // the analytic limit at the endpoints where g itself vanishes.
    const double s = std::sin(0.5 * std::numbers::pi * x / half_width);
    const double p = std::numbers::pi;
    return p * p * s * s / (half_width * half_width * half_width);
}

std::string ShiftDensitySpec::to_flag_string() const {
    return to_string(kind) + ":" + std::to_string(half_width);
}

ShiftDensitySpec parse_density_spec(const std::string& text) {
    const auto pos = text.find(':');
    if (pos == std::string::npos)
        throw std::invalid_argument("density spec must look like kind:half_width, got: " + text);
    ShiftDensitySpec spec;
    spec.kind = density_kind_from_string(text.substr(0, pos));
    try {
        spec.half_width = std::stod(text.substr(pos + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad density half_width in: " + text);
    }
    spec.validate();
    return spec;
}

}  // namespace curvereg
