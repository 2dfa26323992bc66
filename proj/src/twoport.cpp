#include "webster/twoport.hpp"

#include <cmath>

namespace webster {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void segment_matrix(double area, double length, double f,
                    const PhysicalConstants& constants,
                    Complex& e11, Complex& e12, Complex& e21, Complex& e22) {
    if (!(area > 0.0)) throw Error("InvalidGeometry", "segment area must be > 0");
    if (!(length > 0.0)) throw Error("InvalidGeometry", "segment length must be > 0");
    const double k = 2.0 * kPi * f / constants.c;
    const double z0 = constants.rho * constants.c / area;
    const double kl = k * length;
    const double c = std::cos(kl);
    const double s = std::sin(kl);
    e11 = Complex(c, 0.0);
    e12 = Complex(0.0, z0 * s);
    e21 = Complex(0.0, s / z0);
    e22 = Complex(c, 0.0);
}

TwoPortChain chain_segments(const std::vector<DuctSegment>& segments,
                            const std::vector<double>& frequencies,
                            const PhysicalConstants& constants) {
    if (segments.empty()) throw Error("EmptyAreaFunction", "no segments");
    TwoPortChain ch;
    ch.frequencies = frequencies;
    ch.e11.resize(frequencies.size());
    ch.e12.resize(frequencies.size());
    ch.e21.resize(frequencies.size());
    ch.e22.resize(frequencies.size());

    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        Complex a11(1.0, 0.0), a12(0.0, 0.0), a21(0.0, 0.0), a22(1.0, 0.0);
        for (const auto& seg : segments) {
            Complex b11, b12, b21, b22;
            segment_matrix(seg.area, seg.length, frequencies[i], constants, b11,
                           b12, b21, b22);
            const Complex c11 = a11 * b11 + a12 * b21;
            const Complex c12 = a11 * b12 + a12 * b22;
            const Complex c21 = a21 * b11 + a22 * b21;
            const Complex c22 = a21 * b12 + a22 * b22;
            a11 = c11;
            a12 = c12;
            a21 = c21;
            a22 = c22;
        }
        ch.e11[i] = a11;
        ch.e12[i] = a12;
        ch.e21[i] = a21;
        ch.e22[i] = a22;
    }
    return ch;
}

TwoPortChain chain(const AreaFunction& af, const std::vector<double>& frequencies,
                   const PhysicalConstants& constants,
                   double dx_resample, double truncate_at) {
    if (af.areas.empty()) throw Error("EmptyAreaFunction", "no area samples");
    const double extent = af.length();
    const double length = truncate_at < 0.0 ? extent : truncate_at;
    if (length > extent + 1e-12)
        throw Error("TerminationBeyondArea", "requested length exceeds area extent");

    const auto n_seg = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(length / dx_resample)));
    const double dl = length / static_cast<double>(n_seg);

    std::vector<DuctSegment> segments(n_seg);
    for (std::size_t s = 0; s < n_seg; ++s) {
        segments[s].length = dl;
        segments[s].area = af.area_at((static_cast<double>(s) + 0.5) * dl);
    }
    return chain_segments(segments, frequencies, constants);
}

ImpedanceSpectrum input_impedance(const TwoPortChain& ch, const LoadModel& load,
                                  std::vector<std::size_t>* flagged) {
    ImpedanceSpectrum out;
    out.frequencies = ch.frequencies;
    out.values.resize(ch.size());
    out.f_lim = ch.frequencies.empty() ? 0.0 : ch.frequencies.back();
    for (std::size_t i = 0; i < ch.size(); ++i) {
        Complex num, den;
        if (std::holds_alternative<RigidTermination>(load)) {
            num = ch.e11[i];
            den = ch.e21[i];
        } else {
            const auto& tab = std::get<TabulatedImpedance>(load).table;
            const Complex zl = tab.interp(ch.frequencies[i]);
            num = ch.e11[i] * zl + ch.e12[i];
            den = ch.e21[i] * zl + ch.e22[i];
        }
        if (std::abs(den) < 1e-12 * std::abs(num)) {
            if (flagged) flagged->push_back(i);
            if (den == Complex(0.0, 0.0)) {
                // exact anti-resonance bin; the reflectance limit there is 1
                out.values[i] = Complex(1e30 * std::abs(num), 0.0);
                continue;
            }
        }
        out.values[i] = num / den;
    }
    return out;
}

ImpedanceSpectrum transfer_impedance(const TwoPortChain& ch,
                                     const ImpedanceSpectrum& z_ec) {
    if (z_ec.values.size() != ch.size())
        throw Error("MismatchedGrid", "chain and Z_ec grids differ");
    ImpedanceSpectrum out;
    out.frequencies = ch.frequencies;
    out.f_lim = z_ec.f_lim;
    out.values.resize(ch.size());
    for (std::size_t i = 0; i < ch.size(); ++i)
        out.values[i] = ch.e22[i] * z_ec.values[i] - ch.e12[i];
    return out;
}

}  // namespace webster
