#include "webster/horns.hpp"

#include <algorithm>
#include <cmath>

namespace webster {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_positive(double v, const char* what) {
    if (!(v > 0.0)) throw Error("InvalidGeometry", std::string(what) + " must be > 0");
}
}  // namespace

double horn_length(const HornSpec& spec) {
    return std::visit(
        [](const auto& h) -> double {
            using T = std::decay_t<decltype(h)>;
            if constexpr (std::is_same_v<T, SteppedTubes>) {
                if (h.steps.empty())
                    throw Error("InvalidGeometry", "stepped list is empty");
                double l = 0.0;
                for (const auto& s : h.steps) l += s.length;
                return l;
            } else {
                return h.length;
            }
        },
        spec);
}

double horn_area(const HornSpec& spec, double x) {
    return std::visit(
        [x](const auto& h) -> double {
            using T = std::decay_t<decltype(h)>;
            if constexpr (std::is_same_v<T, UniformHorn>) {
                check_positive(h.area, "area");
                return h.area;
            } else if constexpr (std::is_same_v<T, ExponentialHorn>) {
                check_positive(h.a0, "a0");
                return h.a0 * std::exp(h.flare_rate * x);
            } else if constexpr (std::is_same_v<T, ConicalHorn>) {
                check_positive(h.r0, "r0");
                check_positive(h.r1, "r1");
                const double r = h.r0 + (h.r1 - h.r0) * x / h.length;
                return kPi * r * r;
            } else if constexpr (std::is_same_v<T, ParabolicHorn>) {
                check_positive(h.a0, "a0");
                check_positive(h.a_end, "a_end");
                return h.a0 + (h.a_end - h.a0) * x / h.length;
            } else if constexpr (std::is_same_v<T, TaperedParabolicHorn>) {
                check_positive(h.a0, "a0");
                check_positive(h.a_peak, "a_peak");
                check_positive(h.a_end, "a_end");
                const double xt = h.taper_start * h.length;
                if (x <= xt)
                    return h.a0 + (h.a_peak - h.a0) * x / xt;
                return h.a_peak + (h.a_end - h.a_peak) * (x - xt) / (h.length - xt);
            } else {
                double acc = 0.0;
                for (const auto& s : h.steps) {
                    check_positive(s.length, "step length");
                    check_positive(s.diameter, "step diameter");
                    acc += s.length;
                    if (x <= acc + 1e-15)
                        return kPi * s.diameter * s.diameter / 4.0;
                }
                const auto& last = h.steps.back();
                return kPi * last.diameter * last.diameter / 4.0;
            }
        },
        spec);
}

AreaFunction generate_area(const HornSpec& spec, double dx) {
    check_positive(dx, "dx");
    const double length = horn_length(spec);
    const auto n = static_cast<std::size_t>(std::llround(length / dx));
    AreaFunction af;
    af.dx = dx;
    af.areas.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        af.areas[i] = horn_area(spec, static_cast<double>(i) * dx);
    af.epsilon.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        af.epsilon[i] = std::log(af.areas[i + 1] / af.areas[i]) / (2.0 * dx);
    return af;
}

std::vector<DuctSegment> horn_segments(const HornSpec& spec, double dx,
                                       double truncate_at) {
    const double full = horn_length(spec);
    const double length = truncate_at < 0.0 ? full : truncate_at;
    if (length > full + 1e-12)
        throw Error("TerminationBeyondArea", "truncation beyond horn extent");

    std::vector<DuctSegment> segs;
    if (const auto* st = std::get_if<SteppedTubes>(&spec)) {
        double acc = 0.0;
        for (const auto& s : st->steps) {
            const double take = std::min(s.length, length - acc);
            if (take <= 0.0) break;
            segs.push_back({take, kPi * s.diameter * s.diameter / 4.0});
            acc += take;
        }
    } else {
        const auto n = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::llround(length / dx)));
        const double dl = length / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i)
            segs.push_back(
                {dl, horn_area(spec, (static_cast<double>(i) + 0.5) * dl)});
    }
    return segs;
}

}  // namespace webster
