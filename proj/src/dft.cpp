#include "cellwave/dft.hpp"

#include <cmath>
#include <stdexcept>

namespace cellwave::dft {

LinePlan::LinePlan(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("dft: line length must be >= 1");
    twiddle_.resize(n);
    for (int k = 0; k < n; ++k) {
        double ang = -2.0 * pi * static_cast<double>(k) / static_cast<double>(n);
        twiddle_[k] = {std::cos(ang), std::sin(ang)};
    }
}

void LinePlan::run(const cplx* in, cplx* out, int sign) const {
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
    for (int m = 0; m < n_; ++m) {
        cplx acc{0.0, 0.0};
        // index of exp(sign*2*pi*i*m*j/n) in the forward table, advanced mod n
        long step = (sign < 0) ? m : (n_ - m) % n_;
        long idx = 0;
        for (int j = 0; j < n_; ++j) {
            acc += in[j] * twiddle_[idx];
            idx += step;
            if (idx >= n_) idx -= n_;
        }
        out[m] = scale * acc;
    }
}

std::vector<cplx> forward(const std::vector<cplx>& x) {
    LinePlan plan(static_cast<int>(x.size()));
    std::vector<cplx> out(x.size());
    plan.forward(x.data(), out.data());
    return out;
}

std::vector<cplx> inverse(const std::vector<cplx>& x) {
    LinePlan plan(static_cast<int>(x.size()));
    std::vector<cplx> out(x.size());
    plan.inverse(x.data(), out.data());
    return out;
}

void transform_nd(std::vector<cplx>& data, int dim, int n, bool inverse_transform) {
    long total = 1;
    for (int d = 0; d < dim; ++d) total *= n;
    if (static_cast<long>(data.size()) != total)
        throw std::invalid_argument("transform_nd: data size does not match n^dim");
    LinePlan plan(n);
    std::vector<cplx> line(n), out(n);
    for (int ax = 0; ax < dim; ++ax) {
        long stride = 1;
        for (int d = ax + 1; d < dim; ++d) stride *= n;
        const long block = stride * n;
        for (long base = 0; base < total; base += block) {
            for (long off = 0; off < stride; ++off) {
                for (int j = 0; j < n; ++j) line[j] = data[base + off + j * stride];
                if (inverse_transform)
                    plan.inverse(line.data(), out.data());
                else
                    plan.forward(line.data(), out.data());
                for (int j = 0; j < n; ++j) data[base + off + j * stride] = out[j];
            }
        }
    }
}

void fft_pow2(std::vector<cplx>& x, bool inverse_transform) {
    const std::size_t n = x.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft_pow2: length must be a power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * pi / static_cast<double>(len) * (inverse_transform ? 1.0 : -1.0);
        cplx wlen{std::cos(ang), std::sin(ang)};
        for (std::size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (std::size_t j = 0; j < len / 2; ++j) {
                cplx u = x[i + j];
                cplx v = x[i + j + len / 2] * w;
                x[i + j] = u + v;
                x[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& v : x) v *= scale;
}

}  // namespace cellwave::dft
