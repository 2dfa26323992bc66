#ifndef WEBSTER_CONFIG_HPP
#define WEBSTER_CONFIG_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "webster/types.hpp"

namespace webster {

enum class SurgeVariant { Surge1, Surge2, Geometric };

enum class TerminationRule {
    Lme,  // needs a reference Z_trans
    Epsilon,
    EpsilonCorrected,
    TdrMax,
    TdrMaxCorrected,
    Tdr50,
    Tdr50Corrected,
    Fixed,
};

// Length-correction constants, m. Medians of the offsets between the
// detectable termination criteria and the least-mean-error length.
constexpr double kEpsilonCorrection = 1.8e-3;
constexpr double kTdrMaxCorrection = 0.9e-3;
constexpr double kTdr50Correction = 4.3e-3;

// Named search-interval presets by probe insertion depth, m.
struct IntervalPreset {
    const char* name;
    double lo;
    double hi;
};
inline constexpr std::array<IntervalPreset, 4> kIntervalPresets{{
    {"entrance", 15e-3, 45e-3},
    {"between-bends", 10e-3, 35e-3},
    {"second-bend", 5e-3, 30e-3},
    {"beyond-second-bend", 3e-3, 20e-3},
}};

struct LegacyOptions {
    unsigned n_sup = 1;                 // integer upsampling factor
    bool amplitude_correction = false;  // multiply reflectance by n_sup
    bool time_reversed_addition = false;
};

struct PipelineConfig {
    double f_lim = 20e3;  // Hz
    std::optional<double> f_cut;  // Hz; empty = auto via the linear f_cut model
    double f_sup = 3.5e6;  // Hz
    bool window_off = false;  // skip the Blackman window (round-trip testing)
    SurgeVariant surge = SurgeVariant::Surge1;
    double geometric_area = 0.0;  // m^2, entrance area for the geometric variant
    double a_guess = 50e-6;       // m^2, initial entrance-area guess for surge
    double l_max = 50e-3;         // m
    TerminationRule termination = TerminationRule::Epsilon;
    double fixed_termination = 0.0;  // m, for TerminationRule::Fixed
    double interval_lo = 3e-3;       // m, termination search interval
    double interval_hi = 45e-3;
    PhysicalConstants constants;
    LegacyOptions legacy;
    std::uint64_t seed = 0;

    double resolved_f_cut() const;
    void validate() const;
};

}  // namespace webster

#endif
