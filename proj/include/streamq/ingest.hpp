#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "streamq/grid.hpp"
#include "streamq/monitor.hpp"
#include "streamq/window.hpp"

namespace streamq {

enum class Format { ndjson, csv };
enum class Mode { windowed, cumulative };

/// Grid parameters as given on the command line; built once per stream.
struct GridSpec {
    Grid::Kind kind = Grid::Kind::uniform;
    double min = 0.0;
    double max = 1000.0;
    std::size_t bins = 100;
    double lo_split = 0.0;   // tail-weighted only
    double hi_split = 0.0;
    std::array<double, 3> shares = {0.25, 0.5, 0.25};

    Grid build() const;
};

struct ReportCadence {
    enum class Unit { samples, seconds };
    Unit unit = Unit::samples;
    std::uint64_t every_samples = 1000;
    double every_seconds = 0.0;
};

struct IngestConfig {
    Format format = Format::ndjson;
    Mode mode = Mode::windowed;
    WindowConfig window{10000, 1000};
    GridSpec grid;
    std::vector<double> quantiles = {0.5, 0.9, 0.99};
    double confidence = 0.95;
    ReportCadence cadence;
    std::vector<AlertRule> rules;
    bool warmup_gate = true;
    std::size_t max_streams = 10000;
    bool csv_header = false;

    /// Throws InvalidConfig if any module precondition would be violated.
    void validate() const;
};

/// Parses one NDJSON line ({"ts":..,"v":..,"stream":..}) or CSV line
/// (ts,v[,stream]). Throws MalformedRecord on anything unusable.
Sample parse_record(std::string_view record, Format format);

std::string report_to_ndjson_line(const Report& report);

// command-line value parsers, shared with the CLI
AlertRule parse_alert_spec(const std::string& spec);
std::vector<double> parse_quantile_list(const std::string& list);
std::pair<double, double> parse_range_spec(const std::string& spec);
ReportCadence parse_cadence_spec(const std::string& spec);
std::array<double, 3> parse_shares_spec(const std::string& spec);

/// Feeds records to per-stream estimators and writes NDJSON reports.
/// Reports go to `out`, diagnostics to `err`. Single-threaded.
class IngestRunner {
public:
    IngestRunner(IngestConfig config, std::ostream& out, std::ostream& err);

    /// One line or datagram. Malformed records are counted and skipped.
    void consume(std::string_view record);

    /// Emits one final report per stream.
    void finish();

    std::uint64_t samples_ingested() const { return samples_ingested_; }
    std::uint64_t records_skipped() const { return records_skipped_; }
    std::uint64_t streams_rejected() const { return streams_rejected_; }

private:
    struct StreamState {
        std::optional<WindowEstimator> window;
        std::optional<CdfSketch> cumulative;
        std::uint64_t samples = 0;
        std::uint64_t skipped = 0;
        std::uint64_t since_report = 0;
        std::chrono::steady_clock::time_point last_report{};
    };

    StreamState* stream_for(const std::string& id);
    Report build_report(const StreamState& state, const std::string& id) const;
    void emit(const Report& report);

    IngestConfig config_;
    std::ostream& out_;
    std::ostream& err_;
    std::map<std::string, StreamState> streams_;
    std::uint64_t samples_ingested_ = 0;
    std::uint64_t records_skipped_ = 0;
    std::uint64_t streams_rejected_ = 0;
    bool header_pending_ = false;
};

}  // namespace streamq
