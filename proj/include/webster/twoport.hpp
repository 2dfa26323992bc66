#ifndef WEBSTER_TWOPORT_HPP
#define WEBSTER_TWOPORT_HPP

#include <variant>

#include "webster/inverse.hpp"
#include "webster/types.hpp"

namespace webster {

// Per-frequency 2x2 transfer matrix [[e11, e12], [e21, e22]] relating
// (p, q) at the lateral port to (p, q) at the medial port.
struct TwoPortChain {
    std::vector<double> frequencies;  // Hz
    std::vector<Complex> e11, e12, e21, e22;

    std::size_t size() const { return frequencies.size(); }
};

struct RigidTermination {};
struct TabulatedImpedance {
    ImpedanceSpectrum table;
};
using LoadModel = std::variant<RigidTermination, TabulatedImpedance>;

// Lossless duct segment: [[cos kl, j Z0 sin kl], [j sin kl / Z0, cos kl]].
void segment_matrix(double area, double length, double f,
                    const PhysicalConstants& constants,
                    Complex& e11, Complex& e12, Complex& e21, Complex& e22);

// Chains segments lateral->medial at the given frequencies. The area
// function is first resampled to `dx_resample` by linear interpolation of
// A(x); truncate_at (m) < 0 means the full extent.
TwoPortChain chain(const AreaFunction& af, const std::vector<double>& frequencies,
                   const PhysicalConstants& constants,
                   double dx_resample = 0.1e-3, double truncate_at = -1.0);

// Chains explicit (length, area) duct segments lateral->medial. Used where
// interface positions must be represented exactly (stepped-tube synthesis).
struct DuctSegment {
    double length = 0.0;  // m
    double area = 0.0;    // m^2
};
TwoPortChain chain_segments(const std::vector<DuctSegment>& segments,
                            const std::vector<double>& frequencies,
                            const PhysicalConstants& constants);

// Near-singular denominators (anti-resonance bins of a rigid load) are
// reported through `flagged` when provided; values stay finite.
ImpedanceSpectrum input_impedance(const TwoPortChain& chain, const LoadModel& load,
                                  std::vector<std::size_t>* flagged = nullptr);

// Z_trans = e22 * Z_ec - e12 (shunt term neglected).
ImpedanceSpectrum transfer_impedance(const TwoPortChain& chain,
                                     const ImpedanceSpectrum& z_ec);

}  // namespace webster

#endif
