#include "webster/fft.hpp"

#include <cmath>

namespace webster {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void transform(std::vector<Complex>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw Error("BadFftLength", "length must be a power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
        const Complex wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex u = a[i + k];
                const Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= scale;
    }
}

}  // namespace

void fft(std::vector<Complex>& data) { transform(data, false); }
void ifft(std::vector<Complex>& data) { transform(data, true); }

std::vector<double> irfft(const std::vector<Complex>& half, std::size_t n_fft) {
    if (half.size() != n_fft / 2 + 1)
        throw Error("BadFftLength", "half spectrum must hold n/2+1 bins");
    std::vector<Complex> full(n_fft);
    full[0] = Complex(half[0].real(), 0.0);
    full[n_fft / 2] = Complex(half[n_fft / 2].real(), 0.0);
    for (std::size_t k = 1; k < n_fft / 2; ++k) {
        full[k] = half[k];
        full[n_fft - k] = std::conj(half[k]);
    }
    ifft(full);
    std::vector<double> out(n_fft);
    for (std::size_t i = 0; i < n_fft; ++i) out[i] = full[i].real();
    return out;
}

}  // namespace webster
