#ifndef WEBSTER_SIGNAL_CORE_HPP
#define WEBSTER_SIGNAL_CORE_HPP

#include "webster/types.hpp"

namespace webster {

// Smallest power of two N with N >= 2^12 and f_sup/N <= 80 Hz.
std::size_t fft_length_for(double f_sup);

FrequencyGrid make_grid(double f_sup);

// Maps a band-limited spectrum onto the full FFT half-grid:
// constant below the first valid frequency, linear interpolation inside
// [first valid, f_lim], complex zero in (f_lim, f_sup/2].
ImpedanceSpectrum extrapolate_impedance(const ImpedanceSpectrum& z,
                                        const FrequencyGrid& grid);

// Legacy amplitude correction: every bin scaled by n_sup.
std::vector<Complex> amplitude_correction_legacy(const std::vector<Complex>& r_spectrum,
                                                 unsigned n_sup);

}  // namespace webster

#endif
