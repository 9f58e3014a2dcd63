#pragma once

#include <vector>

#include "cellwave/core.hpp"

namespace cellwave::spectral {

/// Dominant angular frequency (magnitude) of a complex time series sampled at
/// interval dt: Hann window, power-of-two zero-padded FFT, parabolic
/// interpolation of the log-power peak across adjacent bins. Resolves a clean
/// single tone to much better than a bin width; callers should cover >= 50
/// oscillation periods for a bin width of 2% or finer.
double peak_frequency(const std::vector<cplx>& series, double dt);

/// Angular frequency from the unwrapped phase slope of a complex single-mode
/// series (least-squares line through arg(z_n)): far more precise than a
/// spectral peak for pure tones, used for convergence measurements. Returns
/// the magnitude of the fitted slope.
double phase_slope_frequency(const std::vector<cplx>& series, double dt);

}  // namespace cellwave::spectral
