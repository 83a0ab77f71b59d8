#include "curvereg/smoothing.hpp"

#include <cmath>
#include <stdexcept>

#include "curvereg/numeric.hpp"

namespace curvereg {

SmoothedCurves::SmoothedCurves(std::size_t curves, int cutoff, DesignGrid grid)
    : curves_(curves), cutoff_(cutoff), grid_(grid) {
    if (curves == 0) throw std::invalid_argument("SmoothedCurves: need at least one curve");
    if (cutoff < 0) throw std::invalid_argument("SmoothedCurves: cutoff must be >= 0");
    if (2 * cutoff >= grid.size())
        throw std::invalid_argument("SmoothedCurves: cutoff must satisfy cutoff < n/2");
    c_.assign(curves * width(), {});
}

double SmoothedCurves::eval(std::size_t j, double t) const {
    if (j >= curves_) throw std::out_of_range("SmoothedCurves::eval: curve index");
    double acc = 0.0;
    for (int k = -cutoff_; k <= cutoff_; ++k) {
        const auto v = coeff(j, k);
        const double a = two_pi * k * t;
        acc += v.real() * std::cos(a) - v.imag() * std::sin(a);
    }
    return acc;
}

FourierTemplate SmoothedCurves::row_template(std::size_t j) const {
    if (j >= curves_) throw std::out_of_range("SmoothedCurves::row_template: curve index");
    FourierTemplate f;
    for (int k = -cutoff_; k <= cutoff_; ++k) f.set_coeff(k, coeff(j, k));
    return f;
}

SmoothedCurves dft_coeffs(const Dataset& data, int cutoff) {
    const int n = data.grid.size();
    if (cutoff < 0 || 2 * cutoff >= n)
        throw std::invalid_argument("dft_coeffs: cutoff must satisfy 0 <= cutoff < n/2");

    SmoothedCurves out(data.curves, cutoff, data.grid);

    // Exact twiddle table; e^{-i 2 pi k l / n} is looked up at (k l) mod n so
    // no rounding accumulates across the sum.
    std::vector<std::complex<double>> w(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m)
        w[static_cast<std::size_t>(m)] = std::polar(1.0, -two_pi * m / n);

    for (std::size_t j = 0; j < data.curves; ++j) {
        for (int k = -cutoff; k <= cutoff; ++k) {
            const int kk = ((k % n) + n) % n;
            std::complex<double> acc{};
            for (int i = 0; i < n; ++i) {
                const long long l = i + 1;  // design points are l/n for l = 1..n
                const int idx = static_cast<int>((static_cast<long long>(kk) * l) % n);
                acc += data.at(j, i) * w[static_cast<std::size_t>(idx)];
            }
            out.set_coeff(j, k, acc / static_cast<double>(n));
        }
    }
    return out;
}

SmoothedCurves ideal_coefficients(const FourierTemplate& pattern, const ShiftVector& shifts,
                                  int cutoff, const DesignGrid& grid) {
    SmoothedCurves out(shifts.size(), cutoff, grid);
    for (std::size_t j = 0; j < shifts.size(); ++j) {
        for (int k = -cutoff; k <= cutoff; ++k) {
            const auto c = pattern.coeff(k);
            if (c == std::complex<double>{}) continue;
            out.set_coeff(j, k, c * std::polar(1.0, -two_pi * k * shifts[j]));
        }
    }
    return out;
}

double variance_v(int cutoff, int n) {
    if (cutoff < 0) throw std::invalid_argument("variance_v: cutoff must be >= 0");
    if (n < 1) throw std::invalid_argument("variance_v: n must be >= 1");
    return static_cast<double>(2 * cutoff + 1) / n;
}

double bias_b(int cutoff, int n, double smoothness) {
    if (cutoff < 1) throw std::invalid_argument("bias_b: cutoff must be >= 1");
    if (n < 1) throw std::invalid_argument("bias_b: n must be >= 1");
    if (!(smoothness > 0.0)) throw std::invalid_argument("bias_b: smoothness must be > 0");
    return static_cast<double>(2 * cutoff + 1) / n +
           std::pow(static_cast<double>(cutoff), -2.0 * smoothness);
}

}  // namespace curvereg
