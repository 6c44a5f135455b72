#include "streamq/ingest.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <regex>

#include <json.hpp>

#include "streamq/errors.hpp"

namespace streamq {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() &&
           (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ||
            s.back() == '\n')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_double_field(std::string_view field, const char* what) {
    field = trim(field);
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() ||
        !std::isfinite(value)) {
        throw MalformedRecord(std::string("bad ") + what + " field");
    }
    return value;
}

Sample parse_ndjson_record(std::string_view record) {
    const json j = json::parse(record, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
        throw MalformedRecord("record is not a JSON object");
    }
    const auto v_it = j.find("v");
    if (v_it == j.end() || !v_it->is_number()) {
        throw MalformedRecord("missing or non-numeric \"v\"");
    }
    Sample sample;
    sample.value = v_it->get<double>();
    if (!std::isfinite(sample.value)) {
        throw MalformedRecord("non-finite \"v\"");
    }
    if (const auto ts_it = j.find("ts"); ts_it != j.end()) {
        if (!ts_it->is_number()) {
            throw MalformedRecord("non-numeric \"ts\"");
        }
        const double ts = ts_it->get<double>();
        if (!std::isfinite(ts) || ts < 0.0) {
            throw MalformedRecord("\"ts\" must be a nonnegative number");
        }
        sample.timestamp = ts;
    }
    if (const auto s_it = j.find("stream"); s_it != j.end()) {
        if (!s_it->is_string()) {
            throw MalformedRecord("non-string \"stream\"");
        }
        sample.stream_id = s_it->get<std::string>();
    }
    return sample;
}

Sample parse_csv_record(std::string_view record) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = record.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(record.substr(start));
            break;
        }
        fields.push_back(record.substr(start, comma - start));
        start = comma + 1;
    }
    if (fields.size() < 2 || fields.size() > 3) {
        throw MalformedRecord("expected ts,v[,stream]");
    }
    Sample sample;
    const std::string_view ts_field = trim(fields[0]);
    if (!ts_field.empty()) {
        const double ts = parse_double_field(ts_field, "ts");
        if (ts < 0.0) {
            throw MalformedRecord("ts must be nonnegative");
        }
        sample.timestamp = ts;
    }
    sample.value = parse_double_field(fields[1], "v");
    if (fields.size() == 3) {
        const std::string_view stream = trim(fields[2]);
        if (stream.empty()) {
            throw MalformedRecord("empty stream field");
        }
        sample.stream_id = std::string(stream);
    }
    return sample;
}

std::string format_probability(double p) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", p);
    return buf;
}

}  // namespace

Grid GridSpec::build() const {
    if (kind == Grid::Kind::uniform) {
        return Grid::uniform(min, max, bins);
    }
    return Grid::tail_weighted(min, max, bins, lo_split, hi_split, shares);
}

void IngestConfig::validate() const {
    try {
        (void)grid.build();
        if (mode == Mode::windowed) {
            (void)WindowEstimator(window, grid.build());
        }
    } catch (const Error& e) {
        throw InvalidConfig(e.what());
    }
    if (quantiles.empty()) {
        throw InvalidConfig("at least one quantile must be requested");
    }
    for (double p : quantiles) {
        if (!(p > 0.0 && p < 1.0)) {
            throw InvalidConfig("requested quantiles must lie in (0, 1)");
        }
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw InvalidConfig("confidence must lie in (0, 1)");
    }
    if (cadence.unit == ReportCadence::Unit::samples) {
        if (cadence.every_samples == 0) {
            throw InvalidConfig("report cadence must be positive");
        }
    } else if (!(cadence.every_seconds > 0.0)) {
        throw InvalidConfig("report cadence must be positive");
    }
    for (const AlertRule& rule : rules) {
        if (!(rule.p > 0.0 && rule.p < 1.0) || !std::isfinite(rule.threshold)) {
            throw InvalidConfig("bad alert rule: " + rule.rule_id);
        }
    }
    if (max_streams == 0) {
        throw InvalidConfig("max-streams must be positive");
    }
}

Sample parse_record(std::string_view record, Format format) {
    record = trim(record);
    if (record.empty()) {
        throw MalformedRecord("empty record");
    }
    return format == Format::ndjson ? parse_ndjson_record(record)
                                    : parse_csv_record(record);
}

std::string report_to_ndjson_line(const Report& report) {
    json j;
    j["stream"] = report.stream_id;
    j["n"] = report.n;
    j["fill"] = report.fill;
    json quantiles = json::object();
    for (const ReportQuantile& q : report.quantiles) {
        quantiles[format_probability(q.p)] = {{"value", q.value},
                                              {"lo", q.lo},
                                              {"hi", q.hi},
                                              {"clamped", q.clamped}};
    }
    j["quantiles"] = std::move(quantiles);
    json alerts = json::array();
    for (const FiredAlert& alert : report.alerts) {
        alerts.push_back({{"rule", alert.rule_id},
                          {"observed", alert.observed},
                          {"threshold", alert.threshold}});
    }
    j["alerts"] = std::move(alerts);
    j["skipped"] = report.skipped;
    j["iid_assumed"] = report.iid_assumed;
    return j.dump();
}

AlertRule parse_alert_spec(const std::string& spec) {
    static const std::regex pattern(
        R"(^\s*p([0-9]+(?:\.[0-9]+)?)\s*(>=|<=|>|<)\s*([-+0-9.eE]+)\s*$)");
    std::smatch m;
    if (!std::regex_match(spec, m, pattern)) {
        throw InvalidConfig("cannot parse alert rule: " + spec);
    }
    AlertRule rule;
    rule.p = std::stod(m[1]) / 100.0;
    if (!(rule.p > 0.0 && rule.p < 1.0)) {
        throw InvalidConfig("alert percentile out of range: " + spec);
    }
    const std::string op = m[2];
    if (op == ">") {
        rule.cmp = Comparator::greater;
    } else if (op == "<") {
        rule.cmp = Comparator::less;
    } else if (op == ">=") {
        rule.cmp = Comparator::greater_eq;
    } else {
        rule.cmp = Comparator::less_eq;
    }
    try {
        rule.threshold = std::stod(m[3]);
    } catch (const std::exception&) {
        throw InvalidConfig("bad alert threshold: " + spec);
    }
    if (!std::isfinite(rule.threshold)) {
        throw InvalidConfig("bad alert threshold: " + spec);
    }
    rule.rule_id = spec;
    return rule;
}

std::vector<double> parse_quantile_list(const std::string& list) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = list.find(',', start);
        const std::string item =
            list.substr(start, comma == std::string::npos ? std::string::npos
                                                          : comma - start);
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw InvalidConfig("bad quantile list entry: " + item);
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::pair<double, double> parse_range_spec(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos) {
        throw InvalidConfig("range must be MIN:MAX");
    }
    try {
        return {std::stod(spec.substr(0, colon)), std::stod(spec.substr(colon + 1))};
    } catch (const std::exception&) {
        throw InvalidConfig("range must be MIN:MAX");
    }
}

ReportCadence parse_cadence_spec(const std::string& spec) {
    ReportCadence cadence;
    if (!spec.empty() && spec.back() == 's') {
        cadence.unit = ReportCadence::Unit::seconds;
        try {
            cadence.every_seconds = std::stod(spec.substr(0, spec.size() - 1));
        } catch (const std::exception&) {
            throw InvalidConfig("bad report cadence: " + spec);
        }
        return cadence;
    }
    try {
        cadence.every_samples = std::stoull(spec);
    } catch (const std::exception&) {
        throw InvalidConfig("bad report cadence: " + spec);
    }
    return cadence;
}

std::array<double, 3> parse_shares_spec(const std::string& spec) {
    std::array<double, 3> shares{};
    const std::size_t c1 = spec.find(':');
    const std::size_t c2 = c1 == std::string::npos ? std::string::npos
                                                   : spec.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw InvalidConfig("shares must be L:M:H");
    }
    try {
        shares[0] = std::stod(spec.substr(0, c1));
        shares[1] = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
        shares[2] = std::stod(spec.substr(c2 + 1));
    } catch (const std::exception&) {
        throw InvalidConfig("shares must be L:M:H");
    }
    return shares;
}

IngestRunner::IngestRunner(IngestConfig config, std::ostream& out,
                           std::ostream& err)
    : config_(std::move(config)), out_(out), err_(err) {
    config_.validate();
    header_pending_ = config_.format == Format::csv && config_.csv_header;
}

IngestRunner::StreamState* IngestRunner::stream_for(const std::string& id) {
    const auto it = streams_.find(id);
    if (it != streams_.end()) {
        return &it->second;
    }
    if (streams_.size() >= config_.max_streams) {
        return nullptr;
    }
    StreamState state;
    if (config_.mode == Mode::windowed) {
        state.window.emplace(config_.window, config_.grid.build());
    } else {
        state.cumulative.emplace(config_.grid.build());
    }
    state.last_report = std::chrono::steady_clock::now();
    return &streams_.emplace(id, std::move(state)).first->second;
}

Report IngestRunner::build_report(const StreamState& state,
                                  const std::string& id) const {
    Report report;
    if (config_.mode == Mode::windowed) {
        report = emit_report(*state.window, id, config_.quantiles,
                             config_.confidence, config_.rules,
                             config_.warmup_gate);
    } else {
        const CdfSketch snapshot = state.cumulative->snapshot();
        const double fill = snapshot.empty() ? 0.0 : 1.0;
        report = emit_report(snapshot, id, fill, config_.quantiles,
                             config_.confidence, config_.rules,
                             /*suppress_alerts=*/false);
    }
    report.skipped = state.skipped;
    return report;
}

void IngestRunner::emit(const Report& report) {
    out_ << report_to_ndjson_line(report) << '\n';
}

void IngestRunner::consume(std::string_view record) {
    if (header_pending_) {
        header_pending_ = false;
        return;
    }
    Sample sample;
    try {
        sample = parse_record(record, config_.format);
    } catch (const MalformedRecord&) {
        ++records_skipped_;
        // stream id is unknowable here; charge the default stream
        if (StreamState* state = stream_for("default")) {
            ++state->skipped;
        }
        return;
    }
    StreamState* state = stream_for(sample.stream_id);
    if (state == nullptr) {
        ++streams_rejected_;
        if (streams_rejected_ == 1) {
            err_ << "stream cap reached (" << config_.max_streams
                 << "); rejecting records for new streams\n";
        }
        return;
    }
    if (config_.mode == Mode::windowed) {
        state->window->push(sample.value);
    } else {
        state->cumulative->insert(sample.value);
    }
    ++state->samples;
    ++state->since_report;
    ++samples_ingested_;

    if (config_.cadence.unit == ReportCadence::Unit::samples) {
        if (state->since_report >= config_.cadence.every_samples) {
            emit(build_report(*state, sample.stream_id));
            state->since_report = 0;
        }
    } else {
        const auto now = std::chrono::steady_clock::now();
        const std::chrono::duration<double> elapsed = now - state->last_report;
        if (elapsed.count() >= config_.cadence.every_seconds) {
            emit(build_report(*state, sample.stream_id));
            state->last_report = now;
            state->since_report = 0;
        }
    }
}

void IngestRunner::finish() {
    for (const auto& [id, state] : streams_) {
        emit(build_report(state, id));
    }
    err_ << "ingested " << samples_ingested_ << " samples, skipped "
         << records_skipped_ << " records";
    if (streams_rejected_ > 0) {
        err_ << ", rejected " << streams_rejected_
             << " records for new streams over the cap";
    }
    err_ << '\n';
}

}  // namespace streamq
