#ifndef WEBSTER_FFT_HPP
#define WEBSTER_FFT_HPP

#include <vector>

#include "webster/types.hpp"

namespace webster {

// In-place radix-2 transforms; n must be a power of two.
void fft(std::vector<Complex>& data);
void ifft(std::vector<Complex>& data);  // includes the 1/n scaling

// Inverse transform of a conjugate-symmetric half spectrum (bins 0..N/2).
// Bins 0 and N/2 have their imaginary parts dropped so the result is real.
std::vector<double> irfft(const std::vector<Complex>& half, std::size_t n_fft);

}  // namespace webster

#endif
