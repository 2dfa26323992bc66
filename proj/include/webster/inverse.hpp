#ifndef WEBSTER_INVERSE_HPP
#define WEBSTER_INVERSE_HPP

#include <optional>

#include "webster/config.hpp"
#include "webster/types.hpp"

namespace webster {

struct AreaFunction {
    double dx = 0.0;                // m
    std::vector<double> areas;      // m^2, A(i*dx)
    std::vector<double> epsilon;    // 1/m, ln(A_{i+1}/A_i)/(2*dx)
    std::vector<double> k_profile;  // leading reflection coefficient per depth
    bool truncated = false;         // marching stopped before l_max
    std::size_t clamp_events = 0;   // |k| hit the clamp

    double length() const { return dx * static_cast<double>(areas.size() - 1); }
    // Linear interpolation of A(x), clamped to the sampled range.
    double area_at(double x) const;
};

struct MarchState {
    std::vector<double> forward;
    std::vector<double> backward;
    std::size_t depth = 0;
    std::size_t n_valid = 0;  // usable samples; shrinks by one per layer
};

struct TerminationReport {
    std::optional<double> l_tdrmax;  // m
    std::optional<double> l_tdr50;
    std::optional<double> l_epsilon;
    std::optional<double> l_quarter;
    std::optional<double> l_epsilon_corrected;  // l_epsilon - 1.8 mm
    std::optional<double> l_tdrmax_corrected;   // l_tdrmax - 0.9 mm
    std::optional<double> l_tdr50_corrected;    // l_tdr50 - 4.3 mm
    double interval_lo = 0.0;
    double interval_hi = 0.0;
};

// dx = c / f_sup (one layer per sample, CFL-limited marching step).
double spatial_step(double f_sup, double c);

// One layer-peeling step: extracts k_i at the current depth, updates the
// area and scatters the waves across the interface. Returns the next state.
// Throws WavefrontLost when the forward wavefront has decayed away.
struct PeelResult {
    double k = 0.0;
    double area_next = 0.0;
    bool clamped = false;
};
PeelResult peel_layer(MarchState& state, double area_i);

AreaFunction invert(const RealSignal& tdr, double z0, const PipelineConfig& cfg);

TerminationReport termination_lengths(const AreaFunction& af,
                                      const ImpedanceSpectrum& z_ec,
                                      double interval_lo, double interval_hi,
                                      const PhysicalConstants& constants);

}  // namespace webster

#endif
