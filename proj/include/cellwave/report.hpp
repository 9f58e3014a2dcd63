#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cellwave::harness {

/// One built-in correctness check evaluated during a run. `kind` says how
/// `error` was computed from expected/measured: "rel" (|m-e|/max(|e|,eps)),
/// "abs" (|m-e|), or "bound" (measured itself must stay <= tolerance).
struct OracleRow {
    std::string name;
    double expected = 0.0;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string kind = "rel";
    double error = 0.0;
    bool pass = false;

    bool operator==(const OracleRow&) const = default;
};

/// Evaluates error and pass according to `kind` (see OracleRow).
OracleRow make_oracle(const std::string& name, double expected, double measured, double tolerance,
                      const std::string& kind);

/// Everything a scenario run produces. Serialization is deterministic:
/// identical reports give byte-identical CSV and JSON, and no timing or
/// host-specific value is ever written.
struct RunReport {
    std::string scenario;
    std::uint64_t seed = 0;
    std::vector<std::string> columns;               // unit-annotated names
    std::vector<std::vector<double>> rows;          // sampled time series / table
    std::vector<std::pair<std::string, double>> summary;  // ordered scalars
    std::vector<std::string> notes;                 // human-readable remarks/warnings
    std::vector<OracleRow> oracles;

    /// Secondary named tables (e.g. an alternative traversal listing).
    struct Table {
        std::string name;
        std::vector<std::string> columns;
        std::vector<std::vector<double>> rows;

        bool operator==(const Table&) const = default;
    };
    std::vector<Table> tables;

    bool all_pass() const;
    void add_summary(const std::string& key, double value) { summary.emplace_back(key, value); }

    bool operator==(const RunReport&) const = default;
};

/// Shortest text that parses back to exactly the same double (%.17g trimmed).
std::string format_double(double value);

/// CSV: '# key = value' preamble (scenario, seed, summary, notes, oracles),
/// then a column-header line and the data rows.
std::string to_csv(const RunReport& report);

/// JSON with a fixed key order; parse back with report_from_json.
std::string to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);

/// Writes content to path ('-' or empty = stdout); throws std::runtime_error
/// if the file cannot be written.
void write_output(const std::string& path, const std::string& content);

}  // namespace cellwave::harness
