#include "cellwave/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cellwave::harness {

namespace {
using ordered_json = nlohmann::ordered_json;
}

OracleRow make_oracle(const std::string& name, double expected, double measured, double tolerance,
                      const std::string& kind) {
    OracleRow row;
    row.name = name;
    row.expected = expected;
    row.measured = measured;
    row.tolerance = tolerance;
    row.kind = kind;
    if (kind == "rel") {
        const double denom = std::fabs(expected) > 0.0 ? std::fabs(expected) : 1.0;
        row.error = std::fabs(measured - expected) / denom;
        row.pass = row.error <= tolerance;
    } else if (kind == "abs") {
        row.error = std::fabs(measured - expected);
        row.pass = row.error <= tolerance;
    } else if (kind == "bound") {
        row.error = measured;
        row.pass = measured <= tolerance;
    } else {
        throw std::invalid_argument("make_oracle: unknown kind '" + kind + "'");
    }
    if (!std::isfinite(row.error)) row.pass = false;
    return row;
}

bool RunReport::all_pass() const {
    for (const OracleRow& o : oracles)
        if (!o.pass) return false;
    return true;
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, value);
        if (std::strtod(buf, nullptr) == value) return buf;
    }
    return buf;  // %.17g always round-trips for finite doubles
}

namespace {

void emit_rows(std::ostringstream& out, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) out << ',';
        out << columns[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
}

std::string single_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

}  // namespace

std::string to_csv(const RunReport& report) {
    std::ostringstream out;
    out << "# scenario = " << report.scenario << '\n';
    out << "# seed = " << report.seed << '\n';
    for (const auto& [key, value] : report.summary)
        out << "# summary " << key << " = " << format_double(value) << '\n';
    for (const std::string& note : report.notes) out << "# note " << single_line(note) << '\n';
    for (const OracleRow& o : report.oracles) {
        out << "# oracle " << o.name << " kind=" << o.kind << " expected=" << format_double(o.expected)
            << " measured=" << format_double(o.measured) << " tolerance=" << format_double(o.tolerance)
            << " error=" << format_double(o.error) << " pass=" << (o.pass ? 1 : 0) << '\n';
    }
    emit_rows(out, report.columns, report.rows);
    for (const RunReport::Table& table : report.tables) {
        out << "# table " << table.name << '\n';
        emit_rows(out, table.columns, table.rows);
    }
    return out.str();
}

std::string to_json(const RunReport& report) {
    ordered_json j;
    j["format"] = "cellwave-report-v1";
    j["scenario"] = report.scenario;
    j["seed"] = report.seed;
    j["columns"] = report.columns;
    j["rows"] = report.rows;
    ordered_json summary = ordered_json::object();
    for (const auto& [key, value] : report.summary) summary[key] = value;
    j["summary"] = summary;
    j["notes"] = report.notes;
    ordered_json oracles = ordered_json::array();
    for (const OracleRow& o : report.oracles) {
        ordered_json row;
        row["name"] = o.name;
        row["expected"] = o.expected;
        row["measured"] = o.measured;
        row["tolerance"] = o.tolerance;
        row["kind"] = o.kind;
        row["error"] = o.error;
        row["pass"] = o.pass;
        oracles.push_back(row);
    }
    j["oracles"] = oracles;
    ordered_json tables = ordered_json::array();
    for (const RunReport::Table& table : report.tables) {
        ordered_json t;
        t["name"] = table.name;
        t["columns"] = table.columns;
        t["rows"] = table.rows;
        tables.push_back(t);
    }
    j["tables"] = tables;
    j["all_pass"] = report.all_pass();
    return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    if (!j.contains("format") || j.at("format").get<std::string>() != "cellwave-report-v1")
        throw std::runtime_error("report_from_json: unrecognized report format");
    RunReport report;
    report.scenario = j.at("scenario").get<std::string>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.columns = j.at("columns").get<std::vector<std::string>>();
    report.rows = j.at("rows").get<std::vector<std::vector<double>>>();
    for (const auto& [key, value] : j.at("summary").items())
        report.summary.emplace_back(key, value.get<double>());
    report.notes = j.at("notes").get<std::vector<std::string>>();
    for (const auto& row : j.at("oracles")) {
        OracleRow o;
        o.name = row.at("name").get<std::string>();
        o.expected = row.at("expected").get<double>();
        o.measured = row.at("measured").get<double>();
        o.tolerance = row.at("tolerance").get<double>();
        o.kind = row.at("kind").get<std::string>();
        o.error = row.at("error").get<double>();
        o.pass = row.at("pass").get<bool>();
        report.oracles.push_back(o);
    }
    for (const auto& t : j.at("tables")) {
        RunReport::Table table;
        table.name = t.at("name").get<std::string>();
        table.columns = t.at("columns").get<std::vector<std::string>>();
        table.rows = t.at("rows").get<std::vector<std::vector<double>>>();
        report.tables.push_back(table);
    }
    return report;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace cellwave::harness
