#pragma once

#include <vector>

#include "cellwave/core.hpp"

namespace cellwave::dft {

/// Unitary discrete Fourier transform of one line of length n:
///   forward:  X_m = (1/sqrt(n)) sum_j x_j exp(-2*pi*i*m*j/n)
///   inverse:  x_j = (1/sqrt(n)) sum_m X_m exp(+2*pi*i*m*j/n)
/// Direct O(n^2) evaluation with a precomputed twiddle table; exact for any n
/// and bitwise deterministic. Intended for spatial transforms (n <= a few
/// hundred). For long time series use fft_pow2 below.
class LinePlan {
  public:
    explicit LinePlan(int n);
    int size() const { return n_; }
    void forward(const cplx* in, cplx* out) const { run(in, out, /*sign=*/-1); }
    void inverse(const cplx* in, cplx* out) const { run(in, out, /*sign=*/+1); }

  private:
    void run(const cplx* in, cplx* out, int sign) const;
    int n_;
    std::vector<cplx> twiddle_;  // exp(-2*pi*i*k/n), k = 0..n-1
};

std::vector<cplx> forward(const std::vector<cplx>& x);
std::vector<cplx> inverse(const std::vector<cplx>& x);

/// In-place radix-2 FFT (n a power of two), unitary normalization as above.
void fft_pow2(std::vector<cplx>& x, bool inverse_transform);

/// In-place unitary DFT over every axis of an n^dim row-major array
/// (axis 0 slowest). data.size() must equal n^dim.
void transform_nd(std::vector<cplx>& data, int dim, int n, bool inverse_transform);

inline void transform_3d(std::vector<cplx>& data, int n, bool inverse_transform) {
    transform_nd(data, 3, n, inverse_transform);
}

/// Map a DFT bin index m in [0, n) to its principal-zone signed integer,
/// (-n/2, n/2]: 0,1,...,n/2,-(n/2-1),...,-1 for even n.
inline int principal_index(int m, int n) { return m <= n / 2 ? m : m - n; }

/// Conjugate partner bin of m under a real-valued source field.
inline int conjugate_bin(int m, int n) { return m == 0 ? 0 : n - m; }

}  // namespace cellwave::dft
