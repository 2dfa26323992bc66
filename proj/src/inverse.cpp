#include "webster/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace webster {

namespace {
constexpr double kReflectionClamp = 0.9999;
constexpr double kWavefrontFloor = 1e-12;
constexpr double kRenormThreshold = 1e12;
}  // namespace

double AreaFunction::area_at(double x) const {
    if (areas.empty()) throw Error("EmptyAreaFunction", "no samples");
    const double idx = x / dx;
    if (idx <= 0.0) return areas.front();
    const auto last = static_cast<double>(areas.size() - 1);
    if (idx >= last) return areas.back();
    const auto lo = static_cast<std::size_t>(idx);
    const double t = idx - static_cast<double>(lo);
    return areas[lo] + (areas[lo + 1] - areas[lo]) * t;
}

double spatial_step(double f_sup, double c) {
    if (!(f_sup > 0.0)) throw Error("InvalidConfig", "f_sup must be > 0");
    return c / f_sup;
}

PeelResult peel_layer(MarchState& state, double area_i) {
    auto& f = state.forward;
    auto& b = state.backward;
    if (state.n_valid < 2 || std::abs(f[0]) <= kWavefrontFloor)
        throw Error("WavefrontLost", "forward wavefront below threshold");

    PeelResult res;
    res.k = b[0] / f[0];
    if (std::abs(res.k) > kReflectionClamp) {
        res.k = std::copysign(kReflectionClamp, res.k);
        res.clamped = true;
    }
    const double k = res.k;
    res.area_next = area_i * (1.0 - k) / (1.0 + k);

    // Scatter across the interface, then advance one layer. The forward wave
    // keeps its retarded frame; the backward wave shifts by the one-sample
    // round trip through the layer (layer thickness c*dt/2).
    const std::size_t n = state.n_valid;
    double peak = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double g = (b[i + 1] - k * f[i + 1]) / (1.0 - k);
        const double fm = (1.0 + k) * f[i] - k * ((b[i] - k * f[i]) / (1.0 - k));
        f[i] = fm;
        b[i] = g;
        peak = std::max(peak, std::max(std::abs(fm), std::abs(g)));
    }
    state.n_valid = n - 1;
    state.depth += 1;

    // Joint rescaling keeps the recursion finite after clamp events; only the
    // b/f ratio matters downstream.
    if (peak > kRenormThreshold) {
        const double s = 1.0 / peak;
        for (std::size_t i = 0; i < state.n_valid; ++i) {
            f[i] *= s;
            b[i] *= s;
        }
    }
    return res;
}

AreaFunction invert(const RealSignal& tdr, double z0, const PipelineConfig& cfg) {
    if (!(cfg.l_max > 0.0)) throw Error("InvalidConfig", "l_max must be > 0");
    if (!(z0 > 0.0)) throw Error("NonPositiveZ0", "Z0 must be > 0");
    const double f_sup = 1.0 / tdr.dt;
    // One TDR sample is consumed per peeled layer; a sample at round-trip
    // time n*dt reflects from depth n*c*dt/2, so the marching step is half
    // the nominal resolution c/f_sup.
    const double dx = 0.5 * spatial_step(f_sup, cfg.constants.c);
    const auto layers =
        static_cast<std::size_t>(std::ceil(cfg.l_max / dx - 1e-9));

    AreaFunction af;
    af.dx = dx;
    af.areas.reserve(layers + 1);
    af.k_profile.reserve(layers);
    af.areas.push_back(cfg.constants.rho * cfg.constants.c / z0);

    MarchState st;
    const std::size_t n_work = std::min(tdr.samples.size(), layers + 4);
    st.forward.assign(n_work, 0.0);
    st.forward[0] = 1.0;
    st.backward.assign(tdr.samples.begin(),
                       tdr.samples.begin() + static_cast<std::ptrdiff_t>(n_work));
    st.n_valid = n_work;

    for (std::size_t i = 0; i < layers; ++i) {
        PeelResult res;
        try {
            res = peel_layer(st, af.areas.back());
        } catch (const Error& e) {
            if (e.code() == "WavefrontLost") {
                af.truncated = true;
                break;
            }
            throw;
        }
        af.k_profile.push_back(res.k);
        af.areas.push_back(res.area_next);
        if (res.clamped) ++af.clamp_events;
    }

    af.epsilon.resize(af.areas.size() - 1);
    for (std::size_t i = 0; i + 1 < af.areas.size(); ++i)
        af.epsilon[i] = std::log(af.areas[i + 1] / af.areas[i]) / (2.0 * dx);
    return af;
}

namespace {

// Quadratic refinement of an extremum given samples at f0-df, f0, f0+df.
double refine_parabolic(double f0, double df, double ym, double y0, double yp) {
    const double denom = ym - 2.0 * y0 + yp;
    if (denom == 0.0) return f0;
    const double shift = 0.5 * (ym - yp) / denom;
    return f0 + std::clamp(shift, -1.0, 1.0) * df;
}

}  // namespace

TerminationReport termination_lengths(const AreaFunction& af,
                                      const ImpedanceSpectrum& z_ec,
                                      double interval_lo, double interval_hi,
                                      const PhysicalConstants& constants) {
    TerminationReport rep;
    rep.interval_lo = interval_lo;
    rep.interval_hi = interval_hi;
    if (!(interval_hi >= interval_lo))
        throw Error("EmptyInterval", "termination interval is empty");

    const double dx = af.dx;
    const auto in_interval = [&](std::size_t i) {
        const double x = static_cast<double>(i) * dx;
        return x >= interval_lo && x <= interval_hi;
    };

    // l_TDRmax: peak of the per-depth reflection profile, smallest x on ties.
    std::size_t i_max = 0;
    double k_max = -1.0;
    bool any = false;
    for (std::size_t i = 0; i < af.k_profile.size(); ++i) {
        if (!in_interval(i)) continue;
        any = true;
        if (std::abs(af.k_profile[i]) > k_max) {
            k_max = std::abs(af.k_profile[i]);
            i_max = i;
        }
    }
    if (!any) throw Error("EmptyInterval", "no samples inside the interval");
    rep.l_tdrmax = static_cast<double>(i_max) * dx;
    rep.l_tdrmax_corrected = *rep.l_tdrmax - kTdrMaxCorrection;

    // l_TDR50: first depth past the peak where |k| has decayed to half.
    for (std::size_t i = i_max + 1; i < af.k_profile.size(); ++i) {
        if (static_cast<double>(i) * dx > interval_hi) break;
        if (std::abs(af.k_profile[i]) <= 0.5 * k_max) {
            rep.l_tdr50 = static_cast<double>(i) * dx;
            rep.l_tdr50_corrected = *rep.l_tdr50 - kTdr50Correction;
            break;
        }
    }

    // l_epsilon: global minimum of the log-area gradient.
    std::size_t i_eps = 0;
    double eps_min = std::numeric_limits<double>::infinity();
    bool found_eps = false;
    for (std::size_t i = 0; i < af.epsilon.size(); ++i) {
        if (!in_interval(i)) continue;
        if (af.epsilon[i] < eps_min) {
            eps_min = af.epsilon[i];
            i_eps = i;
            found_eps = true;
        }
    }
    if (found_eps) {
        rep.l_epsilon = static_cast<double>(i_eps) * dx;
        rep.l_epsilon_corrected = *rep.l_epsilon - kEpsilonCorrection;
    }

    // l_quarter: first local minimum of |Z_ec| above 500 Hz, skipping the
    // low-frequency compliance roll-off.
    const auto& fs = z_ec.frequencies;
    const auto& vs = z_ec.values;
    for (std::size_t i = 1; i + 1 < fs.size(); ++i) {
        if (fs[i] <= 500.0 || fs[i] > z_ec.f_lim) continue;
        const double ym = std::abs(vs[i - 1]);
        const double y0 = std::abs(vs[i]);
        const double yp = std::abs(vs[i + 1]);
        if (y0 < ym && y0 <= yp) {
            const double f_min =
                refine_parabolic(fs[i], fs[i + 1] - fs[i], ym, y0, yp);
            const double l = constants.c / (4.0 * f_min);
            if (l >= interval_lo && l <= interval_hi) rep.l_quarter = l;
            break;
        }
    }
    return rep;
}

}  // namespace webster
