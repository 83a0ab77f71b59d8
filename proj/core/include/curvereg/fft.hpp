#ifndef CURVEREG_FFT_HPP
#define CURVEREG_FFT_HPP

#include <complex>
#include <vector>

namespace curvereg {

/// In-place radix-2 transform, unnormalized.
/// inverse=false: X[m] = sum_l x[l] e^{-i 2 pi m l / n}
/// inverse=true:  X[l] = sum_m x[m] e^{+i 2 pi m l / n}
/// data.size() must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& data, bool inverse);

bool is_pow2(std::size_t n) noexcept;

}  // namespace curvereg

#endif
