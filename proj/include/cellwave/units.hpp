#pragma once

#include <string>

namespace cellwave::units {

/// Dimension a config value is expected to carry. Base units are CGS:
/// centimetre, second, cm/s. Dimensionless values reject any unit token.
enum class Dimension { none, length, time, speed };

/// Parses "<number> [unit]" (e.g. "1e-8 cm", "1 fs", "3e10 cm/s", "0.05")
/// into base units. Accepted units: length cm m mm um nm angstrom; time s ms
/// us ns ps fs; speed cm/s m/s. A bare number is taken as already being in
/// base (or natural) units. Throws std::invalid_argument with a readable
/// message on malformed numbers or unknown/misplaced units.
double parse_value(const std::string& text, Dimension dim);

}  // namespace cellwave::units
