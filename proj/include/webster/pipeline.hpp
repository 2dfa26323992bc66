#ifndef WEBSTER_PIPELINE_HPP
#define WEBSTER_PIPELINE_HPP

#include "webster/config.hpp"
#include "webster/horns.hpp"
#include "webster/inverse.hpp"
#include "webster/reflectance.hpp"
#include "webster/twoport.hpp"
#include "webster/types.hpp"

namespace webster {

struct EstimateResult {
    FrequencyGrid grid;
    double f_cut = 0.0;  // resolved value, Hz
    ReflectanceState reflectance;
    AreaFunction area;
    TerminationReport termination;
    bool degraded = false;  // clamps, truncation or missing lengths
};

// Steps I-IV: extrapolate -> window -> surge -> invert -> termination scan.
EstimateResult estimate(const ImpedanceSpectrum& z_raw, const PipelineConfig& cfg);

// Resolves the configured termination rule to a length, m.
// `lme` supplies the least-mean-error length when the rule requires it.
double resolve_termination(const PipelineConfig& cfg, const TerminationReport& rep,
                           std::optional<double> lme = std::nullopt);

// Forward synthesis (ground-truth generation) from a horn geometry with a
// rigid or tabulated load. `dx_seg` is the synthesis segmentation.
ImpedanceSpectrum synthesize_zec(const HornSpec& spec,
                                 const PhysicalConstants& constants,
                                 const std::vector<double>& frequencies,
                                 const LoadModel& load = RigidTermination{},
                                 double dx_seg = 0.1e-3);

// Reference transfer impedance to the plane at `ref_length` (m), computed
// from the true geometry and the synthesized Z_ec.
ImpedanceSpectrum synthesize_ztrans_ref(const HornSpec& spec,
                                        const PhysicalConstants& constants,
                                        const std::vector<double>& frequencies,
                                        double ref_length,
                                        const LoadModel& load = RigidTermination{},
                                        double dx_seg = 0.1e-3);

}  // namespace webster

#endif
