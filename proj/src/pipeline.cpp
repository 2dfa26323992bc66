#include "webster/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "webster/metrics.hpp"
#include "webster/signal_core.hpp"

namespace webster {

double PipelineConfig::resolved_f_cut() const {
    const double v = f_cut ? *f_cut : fcut_model(f_lim);
    if (!(v > 0.0)) throw Error("InvalidConfig", "f_cut must resolve positive");
    return v;
}

void PipelineConfig::validate() const {
    constants.validate();
    if (!(f_lim > 0.0)) throw Error("InvalidConfig", "f_lim must be > 0");
    if (!(f_sup > 0.0)) throw Error("InvalidConfig", "f_sup must be > 0");
    if (f_sup / 2.0 < f_lim)
        throw Error("InvalidConfig", "f_sup/2 must be >= f_lim");
    if (!window_off && resolved_f_cut() > f_sup / 2.0)
        throw Error("InvalidConfig", "f_cut must be <= f_sup/2");
    if (!(l_max > 0.0)) throw Error("InvalidConfig", "l_max must be > 0");
    if (legacy.n_sup < 1) throw Error("InvalidConfig", "n_sup must be >= 1");
}

EstimateResult estimate(const ImpedanceSpectrum& z_raw, const PipelineConfig& cfg) {
    cfg.validate();
    EstimateResult res;
    res.grid = make_grid(cfg.f_sup);
    res.f_cut = cfg.window_off ? cfg.f_sup / 2.0 : cfg.resolved_f_cut();

    ImpedanceSpectrum z_band = z_raw;
    if (z_band.f_lim <= 0.0) z_band.f_lim = cfg.f_lim;
    z_band.f_lim = std::min(z_band.f_lim, cfg.f_lim);

    const ImpedanceSpectrum z_full = extrapolate_impedance(z_band, res.grid);
    res.reflectance = surge_adjust(z_full, res.grid, cfg);
    res.area = invert(res.reflectance.tdr, res.reflectance.z0, cfg);
    res.termination = termination_lengths(res.area, z_band, cfg.interval_lo,
                                          cfg.interval_hi, cfg.constants);
    res.degraded = res.area.truncated || res.area.clamp_events > 0 ||
                   !res.termination.l_tdr50.has_value() ||
                   !res.reflectance.converged;
    return res;
}

double resolve_termination(const PipelineConfig& cfg, const TerminationReport& rep,
                           std::optional<double> lme) {
    const auto need = [](const std::optional<double>& v, const char* what) {
        if (!v) throw Error("TerminationUnavailable", what);
        return *v;
    };
    switch (cfg.termination) {
        case TerminationRule::Lme:
            return need(lme, "l_lme requires a reference");
        case TerminationRule::Epsilon:
            return need(rep.l_epsilon, "l_epsilon not found");
        case TerminationRule::EpsilonCorrected:
            return need(rep.l_epsilon_corrected, "l_epsilon not found");
        case TerminationRule::TdrMax:
            return need(rep.l_tdrmax, "l_tdrmax not found");
        case TerminationRule::TdrMaxCorrected:
            return need(rep.l_tdrmax_corrected, "l_tdrmax not found");
        case TerminationRule::Tdr50:
            return need(rep.l_tdr50, "l_tdr50 not found");
        case TerminationRule::Tdr50Corrected:
            return need(rep.l_tdr50_corrected, "l_tdr50 not found");
        case TerminationRule::Fixed:
            return cfg.fixed_termination;
    }
    throw Error("InvalidConfig", "unknown termination rule");
}

ImpedanceSpectrum synthesize_zec(const HornSpec& spec,
                                 const PhysicalConstants& constants,
                                 const std::vector<double>& frequencies,
                                 const LoadModel& load, double dx_seg) {
    const auto segs = horn_segments(spec, dx_seg);
    return input_impedance(chain_segments(segs, frequencies, constants), load);
}

ImpedanceSpectrum synthesize_ztrans_ref(const HornSpec& spec,
                                        const PhysicalConstants& constants,
                                        const std::vector<double>& frequencies,
                                        double ref_length, const LoadModel& load,
                                        double dx_seg) {
    const ImpedanceSpectrum z_ec =
        synthesize_zec(spec, constants, frequencies, load, dx_seg);
    const auto lat = horn_segments(spec, dx_seg, ref_length);
    return transfer_impedance(chain_segments(lat, frequencies, constants), z_ec);
}

}  // namespace webster
