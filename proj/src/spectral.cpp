#include "cellwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cellwave/dft.hpp"

namespace cellwave::spectral {

double peak_frequency(const std::vector<cplx>& series, double dt) {
    const std::size_t m = series.size();
    if (m < 8) throw std::invalid_argument("peak_frequency: need at least 8 samples");
    if (!(dt > 0.0)) throw std::invalid_argument("peak_frequency: dt must be > 0");

    std::size_t p = 1;
    while (p < m) p <<= 1;
    std::vector<cplx> x(p, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < m; ++i) {
        double w = 0.5 * (1.0 - std::cos(2.0 * pi * static_cast<double>(i) / static_cast<double>(m - 1)));
        x[i] = w * series[i];
    }
    dft::fft_pow2(x, false);

    std::size_t peak = 0;
    double best = -1.0;
    for (std::size_t b = 0; b < p; ++b) {
        double mag = std::norm(x[b]);
        if (mag > best) {
            best = mag;
            peak = b;
        }
    }
    auto logmag = [&](std::size_t b) {
        double v = std::abs(x[(b + p) % p]);
        return std::log(std::max(v, 1e-300));
    };
    double l = logmag(peak + p - 1), c = logmag(peak), r = logmag(peak + 1);
    double denom = l - 2.0 * c + r;
    double delta = std::abs(denom) > 1e-12 ? 0.5 * (l - r) / denom : 0.0;
    delta = std::clamp(delta, -0.5, 0.5);

    double bin = static_cast<double>(peak) + delta;
    if (bin > static_cast<double>(p) / 2.0) bin -= static_cast<double>(p);  // signed frequency
    double omega = 2.0 * pi * bin / (static_cast<double>(p) * dt);
    return std::abs(omega);
}

double phase_slope_frequency(const std::vector<cplx>& series, double dt) {
    const std::size_t m = series.size();
    if (m < 4) throw std::invalid_argument("phase_slope_frequency: need at least 4 samples");
    if (!(dt > 0.0)) throw std::invalid_argument("phase_slope_frequency: dt must be > 0");

    std::vector<double> phase(m);
    double prev = std::arg(series[0]);
    double offset = 0.0;
    phase[0] = prev;
    for (std::size_t i = 1; i < m; ++i) {
        if (std::abs(series[i]) == 0.0)
            throw std::invalid_argument("phase_slope_frequency: zero sample has no phase");
        double raw = std::arg(series[i]);
        double d = raw - prev;
        if (d > pi) offset -= 2.0 * pi;
        if (d < -pi) offset += 2.0 * pi;
        phase[i] = raw + offset;
        prev = raw;
    }
    // least-squares slope of phase vs time
    double n = static_cast<double>(m);
    double st = 0.0, sp = 0.0, stt = 0.0, stp = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double t = static_cast<double>(i) * dt;
        st += t;
        sp += phase[i];
        stt += t * t;
        stp += t * phase[i];
    }
    double slope = (n * stp - st * sp) / (n * stt - st * st);
    return std::abs(slope);
}

}  // namespace cellwave::spectral
