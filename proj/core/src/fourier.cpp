#include "curvereg/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "curvereg/numeric.hpp"

namespace curvereg {

FourierTemplate::FourierTemplate(const std::vector<std::pair<int, std::complex<double>>>& coeffs) {
    for (const auto& [k, v] : coeffs) {
        ensure_capacity(k);
        c_[static_cast<std::size_t>(k + max_freq_)] += v;
    }
}

FourierTemplate FourierTemplate::constant(double c0) {
    FourierTemplate f;
    f.set_coeff(0, c0);
    return f;
}

void FourierTemplate::ensure_capacity(int k) {
    const int need = std::abs(k);
    if (max_freq_ < 0) {
        max_freq_ = need;
        c_.assign(static_cast<std::size_t>(2 * need + 1), {});
        return;
    }
    if (need <= max_freq_) return;
    std::vector<std::complex<double>> grown(static_cast<std::size_t>(2 * need + 1));
    std::copy(c_.begin(), c_.end(), grown.begin() + (need - max_freq_));
    c_ = std::move(grown);
    max_freq_ = need;
}

std::complex<double> FourierTemplate::coeff(int k) const noexcept {
    if (max_freq_ < 0 || std::abs(k) > max_freq_) return {};
    return c_[static_cast<std::size_t>(k + max_freq_)];
}

void FourierTemplate::set_coeff(int k, std::complex<double> value) {
    ensure_capacity(k);
    c_[static_cast<std::size_t>(k + max_freq_)] = value;
}

double FourierTemplate::value(double t) const noexcept {
    double acc = 0.0;
    for (int k = -max_freq_; k <= max_freq_; ++k) {
        const auto v = c_[static_cast<std::size_t>(k + max_freq_)];
        if (v == std::complex<double>{}) continue;
        const double a = two_pi * k * t;
        acc += v.real() * std::cos(a) - v.imag() * std::sin(a);
    }
    return acc;
}

double FourierTemplate::derivative_value(double t) const noexcept {
    double acc = 0.0;
    for (int k = -max_freq_; k <= max_freq_; ++k) {
        const auto v = c_[static_cast<std::size_t>(k + max_freq_)];
        if (v == std::complex<double>{}) continue;
        // i 2 pi k c_k has real part -2 pi k Im(c_k), imaginary 2 pi k Re(c_k)
        const double re = -two_pi * k * v.imag();
        const double im = two_pi * k * v.real();
        const double a = two_pi * k * t;
        acc += re * std::cos(a) - im * std::sin(a);
    }
    return acc;
}

double FourierTemplate::norm_sq() const noexcept {
    double acc = 0.0;
    for (const auto& v : c_) acc += std::norm(v);
    return acc;
}

double FourierTemplate::sobolev_norm_sq(double s) const noexcept {
    double acc = 0.0;
    for (int k = -max_freq_; k <= max_freq_; ++k) {
        const auto v = c_[static_cast<std::size_t>(k + max_freq_)];
        acc += std::pow(1.0 + static_cast<double>(k) * k, s) * std::norm(v);
    }
    return acc;
}

bool FourierTemplate::is_hermitian(double tol) const noexcept {
    for (int k = 0; k <= max_freq_; ++k) {
        if (std::abs(coeff(-k) - std::conj(coeff(k))) > tol) return false;
    }
    return true;
}

void FourierTemplate::trim(double tol) {
    int k = max_freq_;
    while (k > 0 && std::abs(coeff(k)) <= tol && std::abs(coeff(-k)) <= tol) --k;
    if (k == max_freq_) return;
    std::vector<std::complex<double>> shrunk(static_cast<std::size_t>(2 * k + 1));
    for (int j = -k; j <= k; ++j) shrunk[static_cast<std::size_t>(j + k)] = coeff(j);
    c_ = std::move(shrunk);
    max_freq_ = k;
}

double l2_distance_sq(const FourierTemplate& a, const FourierTemplate& b) {
    const int kmax = std::max(a.max_freq(), b.max_freq());
    double acc = 0.0;
    for (int k = -kmax; k <= kmax; ++k) acc += std::norm(a.coeff(k) - b.coeff(k));
    return acc;
}

FourierTemplate shift_template(const FourierTemplate& f, double theta) {
    FourierTemplate out = f;
    for (int k = -f.max_freq(); k <= f.max_freq(); ++k) {
        const auto v = f.coeff(k);
        if (v == std::complex<double>{}) continue;
        out.set_coeff(k, v * std::polar(1.0, -two_pi * k * theta));
    }
    return out;
}

FourierTemplate builtin_template(std::string_view name) {
    if (name == "default" || name == "paper") {
        // 9 sin(2 pi t) + 2 cos(8 pi t)
        return FourierTemplate{{{1, {0.0, -4.5}},
                                {-1, {0.0, 4.5}},
                                {4, {1.0, 0.0}},
                                {-4, {1.0, 0.0}}}};
    }
    if (name == "constant") return FourierTemplate::constant(1.0);
    if (name == "cosine") return FourierTemplate{{{1, {0.5, 0.0}}, {-1, {0.5, 0.0}}}};
    throw std::invalid_argument("unknown template name: " + std::string(name));
}

FourierTemplate default_amplitude_profile() {
    const double a = std::sqrt(2.0 / 3.0);
    return FourierTemplate{{{0, {a, 0.0}}, {1, {0.5 * a, 0.0}}, {-1, {0.5 * a, 0.0}}}};
}

}  // namespace curvereg
