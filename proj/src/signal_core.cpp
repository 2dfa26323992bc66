#include "webster/signal_core.hpp"

#include <algorithm>
#include <cmath>

namespace webster {

void ImpedanceSpectrum::validate() const {
    if (frequencies.size() != values.size())
        throw Error("EmptySpectrum", "frequency/value length mismatch");
    if (frequencies.empty()) throw Error("EmptySpectrum", "no valid points");
    for (std::size_t i = 1; i < frequencies.size(); ++i)
        if (!(frequencies[i] > frequencies[i - 1]))
            throw Error("NonIncreasingFrequencies",
                        "frequencies must be strictly increasing");
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw Error("NonFiniteValue", "NaN/Inf in spectrum");
}

Complex ImpedanceSpectrum::interp(double f) const {
    if (frequencies.empty()) throw Error("EmptySpectrum", "no valid points");
    if (f <= frequencies.front()) return values.front();
    if (f >= frequencies.back()) return values.back();
    auto it = std::upper_bound(frequencies.begin(), frequencies.end(), f);
    const std::size_t hi = static_cast<std::size_t>(it - frequencies.begin());
    const std::size_t lo = hi - 1;
    const double t = (f - frequencies[lo]) / (frequencies[hi] - frequencies[lo]);
    return values[lo] + (values[hi] - values[lo]) * t;
}

std::size_t fft_length_for(double f_sup) {
    std::size_t n = 4096;  // 2^12 floor
    while (f_sup / static_cast<double>(n) > 80.0) n <<= 1;
    return n;
}

FrequencyGrid make_grid(double f_sup) {
    if (!(f_sup > 0.0)) throw Error("InvalidConfig", "f_sup must be > 0");
    return FrequencyGrid{f_sup, fft_length_for(f_sup)};
}

ImpedanceSpectrum extrapolate_impedance(const ImpedanceSpectrum& z,
                                        const FrequencyGrid& grid) {
    z.validate();
    if (grid.f_sup / 2.0 < z.f_lim)
        throw Error("MismatchedGrid", "grid Nyquist below f_lim");

    const std::size_t half = grid.half_bins();
    ImpedanceSpectrum out;
    out.f_lim = z.f_lim;
    out.frequencies.resize(half);
    out.values.resize(half);
    const double f_first = z.frequencies.front();
    for (std::size_t n = 0; n < half; ++n) {
        const double f = grid.bin_freq(n);
        out.frequencies[n] = f;
        if (f > z.f_lim) {
            out.values[n] = Complex(0.0, 0.0);  // reflectance -> -1 there
        } else if (f <= f_first) {
            out.values[n] = z.values.front();
        } else {
            out.values[n] = z.interp(f);
        }
    }
    return out;
}

std::vector<Complex> amplitude_correction_legacy(const std::vector<Complex>& r_spectrum,
                                                 unsigned n_sup) {
    std::vector<Complex> out(r_spectrum);
    const double s = static_cast<double>(n_sup);
    for (auto& v : out) v *= s;
    return out;
}

}  // namespace webster
