#include "cellwave/units.hpp"

#include <cstdlib>
#include <map>
#include <stdexcept>

namespace cellwave::units {

namespace {

const std::map<std::string, double> length_units = {
    {"cm", 1.0}, {"m", 100.0}, {"mm", 0.1}, {"um", 1e-4}, {"nm", 1e-7}, {"angstrom", 1e-8},
};
const std::map<std::string, double> time_units = {
    {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12}, {"fs", 1e-15},
};
const std::map<std::string, double> speed_units = {
    {"cm/s", 1.0},
    {"m/s", 100.0},
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

double parse_value(const std::string& text, Dimension dim) {
    std::string t = trim(text);
    if (t.empty()) throw std::invalid_argument("empty value");
    const char* begin = t.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw std::invalid_argument("not a number: '" + t + "'");
    std::string unit = trim(std::string(end));
    if (unit.empty()) return v;
    if (dim == Dimension::none)
        throw std::invalid_argument("dimensionless value must not carry a unit (got '" + unit + "')");
    const std::map<std::string, double>* table = nullptr;
    const char* dim_name = "";
    switch (dim) {
        case Dimension::length: table = &length_units; dim_name = "length"; break;
        case Dimension::time: table = &time_units; dim_name = "time"; break;
        case Dimension::speed: table = &speed_units; dim_name = "speed"; break;
        default: break;
    }
    auto it = table->find(unit);
    if (it == table->end())
        throw std::invalid_argument("unknown " + std::string(dim_name) + " unit '" + unit + "'");
    return v * it->second;
}

}  // namespace cellwave::units
