#ifndef WEBSTER_REFLECTANCE_HPP
#define WEBSTER_REFLECTANCE_HPP

#include "webster/config.hpp"
#include "webster/types.hpp"

namespace webster {

struct BlackmanWindowSpec {
    double a = 0.16;
    double f_cut = 0.0;  // Hz
    double f_sup = 0.0;  // Hz
    std::size_t n_fft = 0;
    bool off = false;  // all-pass, used for round-trip checks

    // Weight at half-spectrum bin n (0..N/2).
    double weight(std::size_t n) const;
};

struct SurgeIterate {
    int k = 0;
    double z0 = 0.0;
    double ratio = 0.0;  // m_R/m_W at this iterate
};

struct ReflectanceState {
    double z0 = 0.0;           // Pa*s/m^3, converged estimate at x = 0
    double eta = 0.0;          // imaginary fraction of Z0 (surge-II only)
    std::vector<Complex> r_freq;  // windowed reflectance, bins 0..N/2
    RealSignal tdr;               // entrance TDR r(0, n*dt)
    BlackmanWindowSpec window;
    std::vector<SurgeIterate> surge_trace;
    bool converged = true;
};

// R[n] = (Z[n] - z0) / (Z[n] + z0).
std::vector<Complex> reflectance_from_impedance(const ImpedanceSpectrum& z_ec,
                                                Complex z0);

double initial_z0_guess(const PipelineConfig& cfg);

// Iterative Z0 adjustment (surge-I/II) or geometric Z0, followed by
// windowing and the inverse transform to the entrance TDR.
// z_ec must already live on the full half-grid of `grid`.
ReflectanceState surge_adjust(const ImpedanceSpectrum& z_ec,
                              const FrequencyGrid& grid,
                              const PipelineConfig& cfg);

// Legacy integer upsampling: zero-pads a half spectrum sampled at rate f_s
// to the rate n_sup*f_s (new length n_sup*(n-1)+1 half bins).
std::vector<Complex> legacy_upsample(const std::vector<Complex>& half_spectrum,
                                     unsigned n_sup);

}  // namespace webster

#endif
