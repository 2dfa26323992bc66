#ifndef WEBSTER_TYPES_HPP
#define WEBSTER_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace webster {

using Complex = std::complex<double>;

// Every failure mode carries a stable machine-readable code so the CLI can
// map it to exit codes and diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

struct PhysicalConstants {
    double c = 351.8;     // speed of sound, m/s (ear canal at 308 K)
    double rho = 1.1455;  // density, kg/m^3 (dry air at 308 K)
    double temperature = 308.0;  // K, informational

    void validate() const {
        if (!(c > 0.0)) throw Error("InvalidConstants", "c must be > 0");
        if (!(rho > 0.0)) throw Error("InvalidConstants", "rho must be > 0");
    }
};

// Uniform FFT bin layout: bins 0, df, 2*df, ..., df = f_sup / n_fft.
struct FrequencyGrid {
    double f_sup = 3.5e6;  // Hz, full synthesis rate; dt = 1/f_sup
    std::size_t n_fft = 0;

    double df() const { return f_sup / static_cast<double>(n_fft); }
    double dt() const { return 1.0 / f_sup; }
    std::size_t half_bins() const { return n_fft / 2 + 1; }  // bins 0..N/2
    double bin_freq(std::size_t n) const { return static_cast<double>(n) * df(); }
};

// Complex acoustic impedance samples, Pa*s/m^3. Either raw measurement pairs
// (arbitrary increasing frequencies) or a full FFT half-grid.
struct ImpedanceSpectrum {
    std::vector<double> frequencies;  // Hz, strictly increasing
    std::vector<Complex> values;
    double f_lim = 0.0;  // highest valid frequency, Hz

    void validate() const;
    // Linear interpolation (real/imag independently) inside the sampled band;
    // clamps to end values outside it.
    Complex interp(double f) const;
};

struct RealSignal {
    std::vector<double> samples;
    double dt = 0.0;  // s

    double time(std::size_t n) const { return static_cast<double>(n) * dt; }
};

}  // namespace webster

#endif
