#ifndef CURVEREG_MODEL_HPP
#define CURVEREG_MODEL_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace curvereg {

/// Equispaced design t_l = l/n for l = 1..n on the unit circle (0,1].
class DesignGrid {
public:
    explicit DesignGrid(int n);

    int size() const noexcept { return n_; }

    /// i in [0, n): returns (i+1)/n.
    double point(int i) const noexcept { return static_cast<double>(i + 1) / n_; }

private:
    int n_;
};

/// J real shift parameters in units of the period (fractions of [0,1]).
/// Entries are confined to [-1/2, 1/2]; membership in the zero-sum
/// identifiability set is a property checked via is_centered().
class ShiftVector {
public:
    explicit ShiftVector(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t j) const noexcept { return values_[j]; }
    const std::vector<double>& values() const noexcept { return values_; }

    double mean() const noexcept;

    /// The zero-sum representative: values - mean.
    ShiftVector centered() const;

    bool is_centered(double tol = 1e-12) const noexcept;

    double max_abs() const noexcept;

private:
    std::vector<double> values_;
};

enum class DensityKind { Uniform, RaisedCosine };

std::string to_string(DensityKind kind);
DensityKind density_kind_from_string(const std::string& s);

/// Shift prior supported on [-half_width, half_width], half_width < 1/2.
///   uniform:       g = 1/(2 rho')
///   raised-cosine: g(x) = (1/rho') cos^2(pi x / (2 rho'))
/// half_width == 0 is the degenerate point mass at 0 (sampling only).
struct ShiftDensitySpec {
    DensityKind kind = DensityKind::Uniform;
    double half_width = 0.2;

    void validate() const;

    double pdf(double x) const;
    double cdf(double x) const;

    /// Inverse CDF; u in (0,1). Rejects half_width == 0.
    double quantile(double u) const;

    /// (d/dx log g)^2 g in the algebraically stable form; finite on the open
    /// support for the raised-cosine family. Rejects the uniform family.
    double fisher_integrand(double x) const;

    std::string to_flag_string() const;  // e.g. "raised-cosine:0.2"
};

/// Parses "uniform:0.2" / "raised-cosine:0.05".
ShiftDensitySpec parse_density_spec(const std::string& text);

}  // namespace curvereg

#endif
