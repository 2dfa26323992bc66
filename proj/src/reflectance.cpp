#include "webster/reflectance.hpp"

#include <algorithm>
#include <cmath>

#include "webster/fft.hpp"
#include "webster/signal_core.hpp"

namespace webster {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxIter = 100;
constexpr double kConvergedTol = 1e-6;
constexpr double kAcceptableTol = 1e-4;
}  // namespace

double BlackmanWindowSpec::weight(std::size_t n) const {
    if (off) return 1.0;
    const double aleph =
        kPi * static_cast<double>(n) * f_sup / (static_cast<double>(n_fft) * f_cut);
    if (aleph > kPi) return 0.0;
    return (1.0 - a + std::cos(aleph) + a * std::cos(2.0 * aleph)) / 2.0;
}

std::vector<Complex> reflectance_from_impedance(const ImpedanceSpectrum& z_ec,
                                                Complex z0) {
    std::vector<Complex> r(z_ec.values.size());
    for (std::size_t n = 0; n < r.size(); ++n) {
        const Complex denom = z_ec.values[n] + z0;
        if (denom == Complex(0.0, 0.0))
            throw Error("PoleAtBin", "Z_ec equals -Z0 at bin " + std::to_string(n));
        r[n] = (z_ec.values[n] - z0) / denom;
    }
    return r;
}

double initial_z0_guess(const PipelineConfig& cfg) {
    if (!(cfg.a_guess > 0.0) || !std::isfinite(cfg.a_guess))
        throw Error("InvalidConfig", "entrance-area guess must be positive and finite");
    return cfg.constants.rho * cfg.constants.c / cfg.a_guess;
}

std::vector<Complex> legacy_upsample(const std::vector<Complex>& half_spectrum,
                                     unsigned n_sup) {
    if (n_sup < 1) throw Error("InvalidConfig", "n_sup must be >= 1");
    if (half_spectrum.empty()) throw Error("EmptySpectrum", "empty half spectrum");
    const std::size_t n_base = half_spectrum.size() - 1;  // N/2 of the base rate
    std::vector<Complex> out(static_cast<std::size_t>(n_sup) * n_base + 1,
                             Complex(0.0, 0.0));
    for (std::size_t i = 0; i < half_spectrum.size(); ++i) out[i] = half_spectrum[i];
    return out;
}

ReflectanceState surge_adjust(const ImpedanceSpectrum& z_ec,
                              const FrequencyGrid& grid,
                              const PipelineConfig& cfg) {
    const std::size_t half = grid.half_bins();
    if (z_ec.values.size() != half)
        throw Error("MismatchedGrid", "Z_ec not on the full half-grid");

    ReflectanceState st;
    st.window = BlackmanWindowSpec{0.16, cfg.resolved_f_cut(), grid.f_sup,
                                   grid.n_fft, cfg.window_off};

    std::vector<double> w(half);
    double m_w = 0.0;
    for (std::size_t n = 0; n < half; ++n) {
        w[n] = st.window.weight(n);
        m_w += w[n];
    }
    m_w /= static_cast<double>(half);

    if (cfg.surge == SurgeVariant::Geometric) {
        if (!(cfg.geometric_area > 0.0))
            throw Error("InvalidConfig", "geometric variant needs an entrance area");
        st.z0 = cfg.constants.rho * cfg.constants.c / cfg.geometric_area;
    } else {
        st.z0 = initial_z0_guess(cfg);
        double eta = 0.0;
        for (int k = 0; k < kMaxIter; ++k) {
            const Complex z0c = (cfg.surge == SurgeVariant::Surge2)
                                    ? Complex(st.z0, st.z0 * eta)
                                    : Complex(st.z0, 0.0);
            const auto r = reflectance_from_impedance(z_ec, z0c);
            double m_r = 0.0;
            double m_i = 0.0;
            for (std::size_t n = 0; n < half; ++n) {
                m_r += w[n] * r[n].real();
                m_i += w[n] * r[n].imag();
            }
            m_r /= static_cast<double>(half);
            m_i /= static_cast<double>(half);

            const double ratio = m_r / m_w;
            const double z0_next = st.z0 * (1.0 + ratio);
            st.surge_trace.push_back(SurgeIterate{k, st.z0, ratio});
            if (!(z0_next > 0.0))
                throw Error("NonPositiveZ0", "surge iterate drove Z0 <= 0");

            double step = std::abs(z0_next / st.z0 - 1.0);
            if (cfg.surge == SurgeVariant::Surge2) {
                const double eta_next =
                    std::clamp(eta + m_i / m_w, -0.5, 0.5);
                step = std::max(step, std::abs(eta_next - eta));
                eta = eta_next;
            }
            st.z0 = z0_next;
            if (step < kConvergedTol) break;
            if (k == kMaxIter - 1) {
                if (step > kAcceptableTol)
                    throw Error("NoConvergence", "surge iteration did not converge");
                st.converged = false;
            }
        }
        st.eta = eta;
    }

    // Final windowed reflectance with the converged Z0.
    const Complex z0c = (cfg.surge == SurgeVariant::Surge2)
                            ? Complex(st.z0, st.z0 * st.eta)
                            : Complex(st.z0, 0.0);
    st.r_freq = reflectance_from_impedance(z_ec, z0c);
    for (std::size_t n = 0; n < half; ++n) st.r_freq[n] *= w[n];

    if (cfg.legacy.amplitude_correction)
        st.r_freq = amplitude_correction_legacy(st.r_freq, cfg.legacy.n_sup);

    st.tdr.dt = grid.dt();
    st.tdr.samples = irfft(st.r_freq, grid.n_fft);

    if (cfg.legacy.time_reversed_addition) {
        auto& s = st.tdr.samples;
        const std::size_t n = s.size();
        std::vector<double> rev(s);
        for (std::size_t i = 1; i < n; ++i) s[i] += rev[n - i];
    }
    return st;
}

}  // namespace webster
