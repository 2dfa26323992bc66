#ifndef WEBSTER_HORNS_HPP
#define WEBSTER_HORNS_HPP

#include <variant>

#include "webster/inverse.hpp"
#include "webster/twoport.hpp"
#include "webster/types.hpp"

namespace webster {

struct UniformHorn {
    double area = 0.0;    // m^2
    double length = 0.0;  // m
};
struct ExponentialHorn {
    double a0 = 0.0;          // m^2 at x = 0
    double flare_rate = 0.0;  // 1/m, A(x) = a0 * exp(flare_rate * x)
    double length = 0.0;
};
struct ConicalHorn {
    double r0 = 0.0;  // m
    double r1 = 0.0;
    double length = 0.0;
};
struct ParabolicHorn {  // area linear in x (radius ~ sqrt(x))
    double a0 = 0.0;
    double a_end = 0.0;
    double length = 0.0;
};
struct TaperedParabolicHorn {  // linear-area growth, then taper to the end
    double a0 = 0.0;
    double a_peak = 0.0;
    double a_end = 0.0;
    double length = 0.0;
    double taper_start = 0.7;  // fraction of length where the taper begins
};
struct SteppedTubes {
    struct Step {
        double length = 0.0;    // m
        double diameter = 0.0;  // m
    };
    std::vector<Step> steps;
};

using HornSpec = std::variant<UniformHorn, ExponentialHorn, ConicalHorn,
                              ParabolicHorn, TaperedParabolicHorn, SteppedTubes>;

double horn_length(const HornSpec& spec);
double horn_area(const HornSpec& spec, double x);

AreaFunction generate_area(const HornSpec& spec, double dx);

// Duct segments for forward synthesis. Stepped tubes map to their exact
// plateaus; smooth shapes are sampled at `dx` segment midpoints.
std::vector<DuctSegment> horn_segments(const HornSpec& spec, double dx,
                                       double truncate_at = -1.0);

}  // namespace webster

#endif
