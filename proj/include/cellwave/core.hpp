#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cellwave {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
/// Integer wavevector / cell index triple; unused trailing axes stay 0.
using Idx3 = std::array<int, 3>;

constexpr double pi = 3.14159265358979323846;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Deterministic [0,1) double from raw mt19937_64 output (53 mantissa bits).
/// std::uniform_real_distribution is implementation-defined; this is not.
inline double unit_double(std::uint64_t raw) {
    return static_cast<double>(raw >> 11) * 0x1.0p-53;
}

/// Thrown when a running simulation produces a non-finite value.
struct NumericFailure : std::runtime_error {
    long step;
    NumericFailure(long step_, const std::string& what_) : std::runtime_error(what_), step(step_) {}
};

}  // namespace cellwave
