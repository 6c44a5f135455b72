#include <csignal>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "streamq/errors.hpp"
#include "streamq/ingest.hpp"
#include "streamq/udp_source.hpp"

namespace {

volatile std::sig_atomic_t g_stop = 0;

void on_signal(int) { g_stop = 1; }

int run_lines(streamq::IngestRunner& runner, std::istream& in) {
    std::string line;
    while (!g_stop && std::getline(in, line)) {
        runner.consume(line);
    }
    runner.finish();
    return 0;
}

int run_udp(streamq::IngestRunner& runner, const std::string& uri) {
    const auto [host, port] = streamq::parse_udp_endpoint(uri);
    streamq::UdpSource source(host, port);
    std::cerr << "listening on udp " << host << ":" << source.port() << "\n";
    std::string datagram;
    while (!g_stop) {
        if (source.next(datagram, std::chrono::milliseconds(200))) {
            runner.consume(datagram);
        }
    }
    runner.finish();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "streamq: streaming quantile monitor over NDJSON/CSV value streams"};

    std::string input = "-";
    std::string format = "ndjson";
    std::string mode = "windowed";
    std::string grid_kind = "uniform";
    std::string range = "0:1000";
    std::string tail_splits;
    std::string tail_shares = "0.25:0.5:0.25";
    std::string quantiles = "0.5,0.9,0.99";
    std::string report_every = "1000";
    std::string warmup_gate = "on";
    std::vector<std::string> alerts;
    streamq::IngestConfig config;
    std::uint64_t window = 10000;
    std::uint64_t block = 1000;

    app.add_option("--input", input, "PATH, - for stdin, or udp://HOST:PORT");
    app.add_option("--format", format, "csv|ndjson")
        ->check(CLI::IsMember({"csv", "ndjson"}));
    app.add_option("--mode", mode, "windowed|cumulative")
        ->check(CLI::IsMember({"windowed", "cumulative"}));
    app.add_option("--window", window, "window size in samples");
    app.add_option("--block", block, "block size in samples");
    app.add_option("--bins", config.grid.bins, "number of grid bins");
    app.add_option("--range", range, "grid range MIN:MAX");
    app.add_option("--grid", grid_kind, "uniform|tail")
        ->check(CLI::IsMember({"uniform", "tail"}));
    app.add_option("--tail-splits", tail_splits,
                   "LO:HI segment splits for --grid tail");
    app.add_option("--tail-shares", tail_shares,
                   "L:M:H bin shares for --grid tail");
    app.add_option("--quantiles", quantiles, "comma-separated probabilities");
    app.add_option("--confidence", config.confidence, "band confidence in (0,1)");
    app.add_option("--report-every", report_every,
                   "N samples, or Ts for T seconds (e.g. 5s)");
    app.add_option("--alert", alerts, "rule like \"p99>250\" (repeatable)");
    app.add_option("--warmup-gate", warmup_gate,
                   "on|off: suppress alerts until the window fills")
        ->check(CLI::IsMember({"on", "off"}));
    app.add_option("--max-streams", config.max_streams,
                   "cap on distinct stream ids");
    app.add_flag("--csv-header", config.csv_header,
                 "skip the first CSV line as a header");

    CLI11_PARSE(app, argc, argv);

    try {
        config.format =
            format == "csv" ? streamq::Format::csv : streamq::Format::ndjson;
        config.mode = mode == "cumulative" ? streamq::Mode::cumulative
                                           : streamq::Mode::windowed;
        config.window = {window, block};
        config.grid.kind = grid_kind == "tail" ? streamq::Grid::Kind::tail_weighted
                                               : streamq::Grid::Kind::uniform;
        std::tie(config.grid.min, config.grid.max) =
            streamq::parse_range_spec(range);
        if (config.grid.kind == streamq::Grid::Kind::tail_weighted) {
            if (tail_splits.empty()) {
                throw streamq::InvalidConfig("--grid tail requires --tail-splits");
            }
            std::tie(config.grid.lo_split, config.grid.hi_split) =
                streamq::parse_range_spec(tail_splits);
            config.grid.shares = streamq::parse_shares_spec(tail_shares);
        }
        config.quantiles = streamq::parse_quantile_list(quantiles);
        config.cadence = streamq::parse_cadence_spec(report_every);
        config.warmup_gate = warmup_gate == "on";
        for (const std::string& spec : alerts) {
            config.rules.push_back(streamq::parse_alert_spec(spec));
        }

        streamq::IngestRunner runner(std::move(config), std::cout, std::cerr);

        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);

        if (input.rfind("udp://", 0) == 0) {
            return run_udp(runner, input);
        }
        if (input == "-") {
            return run_lines(runner, std::cin);
        }
        std::ifstream file(input);
        if (!file) {
            throw streamq::SourceUnavailable("cannot open input file: " + input);
        }
        return run_lines(runner, file);
    } catch (const streamq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
