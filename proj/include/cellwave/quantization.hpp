#pragma once

#include <cmath>
#include <stdexcept>

namespace cellwave::quantization {

/// Physical constants entering the quantization bookkeeping. Natural-unit
/// default hbar = 1; no operator algebra anywhere, only the classical
/// correspondence E = hbar*omega*(n + 1/2).
struct QuantizationConstants {
    double hbar = 1.0;
};

/// Occupation estimate of a harmonic mode of frequency omega holding energy E:
///   n_raw = E/(hbar*omega) - 1/2.
/// Requires omega > 0; zero-frequency modes carry no ladder and must be
/// handled (flagged) by the caller.
inline double occupation_raw(double energy, double omega, double hbar) {
    if (!(omega > 0.0)) throw std::domain_error("occupation: omega must be > 0 (zero mode has no ladder)");
    if (!(hbar > 0.0)) throw std::domain_error("occupation: hbar must be > 0");
    if (energy < 0.0) throw std::domain_error("occupation: mode energy must be >= 0");
    return energy / (hbar * omega) - 0.5;
}

/// Nearest nonnegative integer rung (half away from zero); negative raws
/// clamp to 0, so the vacuum's raw -1/2 reads as the ground rung. A
/// classically prepared mode carries energy exactly between two rungs
/// (raw = n - 1/2), so its rung readout is boundary-sensitive to round-off;
/// recover a prepared occupation from raw + 1/2 instead.
inline long long occupation_rounded(double n_raw) {
    long long n = std::llround(n_raw);
    return n < 0 ? 0 : n;
}

inline double zero_point(double omega, double hbar) { return 0.5 * hbar * omega; }

inline double ladder_energy(long long n_rounded, double omega, double hbar) {
    return hbar * omega * (static_cast<double>(n_rounded) + 0.5);
}

/// Ladder bookkeeping of a single mode; identical arithmetic on the lattice
/// (phonon) and cell-net (photon) sides by construction.
struct Ladder {
    double n_raw = 0.0;
    long long n_rounded = 0;
    double zero_point = 0.0;     // hbar*omega/2
    double ladder_energy = 0.0;  // hbar*omega*(n_rounded + 1/2)
};

inline Ladder ladder_from_energy(double energy, double omega, double hbar) {
    Ladder l;
    l.n_raw = occupation_raw(energy, omega, hbar);
    l.n_rounded = occupation_rounded(l.n_raw);
    l.zero_point = zero_point(omega, hbar);
    l.ladder_energy = ladder_energy(l.n_rounded, omega, hbar);
    return l;
}

/// Whole-spectrum ladder sums: quantized total, pure zero-point part, and the
/// energy of zero-frequency modes (reported, never silently dropped).
struct LadderTotals {
    double ladder_total = 0.0;
    double zero_point_total = 0.0;
    double zero_mode_energy = 0.0;
    long long mode_count = 0;  // finite-frequency modes counted
};

}  // namespace cellwave::quantization
