#include "touchtell/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace touchtell {

namespace {

std::string expected_recording_header() {
    std::string h = "seq,timestamp_ms";
    for (int r = 0; r < kGridRows; ++r)
        for (int c = 0; c < kGridCols; ++c)
            h += ",t" + std::to_string(r) + std::to_string(c);
    return h;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

long long parse_int(const std::string& field, int line_no) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size())
        fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad integer '" + field + "'");
    return v;
}

double parse_double(const std::string& field, int line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size())
        fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad number '" + field + "'");
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write " + path);
    out << text;
    if (!out) fail(ErrorKind::Io, "write failed for " + path);
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

TouchRecording parse_recording_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) fail(ErrorKind::Parse, "empty recording file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected_recording_header())
        fail(ErrorKind::Parse, "line 1: bad header (expected '" + expected_recording_header() + "')");

    TouchRecording rec;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_line(line);
        if (static_cast<int>(fields.size()) != 2 + kNumTaxels)
            fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected " +
                                       std::to_string(2 + kNumTaxels) + " fields, got " +
                                       std::to_string(fields.size()));
        SensorFrame f;
        f.seq = static_cast<std::uint32_t>(parse_int(fields[0], line_no));
        f.timestamp_ms = static_cast<std::uint32_t>(parse_int(fields[1], line_no));
        for (int t = 0; t < kNumTaxels; ++t) {
            long long v = parse_int(fields[2 + t], line_no);
            if (v < 0 || v > kAdcMax)
                fail(ErrorKind::Range,
                     "line " + std::to_string(line_no) + ": count ∉ [0,4095]: " + fields[2 + t]);
            f.counts[t] = static_cast<std::uint16_t>(v);
        }
        rec.frames.push_back(f);
    }
    validate_recording(rec);
    return rec;
}

std::string format_recording_csv(const TouchRecording& rec) {
    std::string out = expected_recording_header();
    out += '\n';
    for (const auto& f : rec.frames) {
        out += std::to_string(f.seq);
        out += ',';
        out += std::to_string(f.timestamp_ms);
        for (int t = 0; t < kNumTaxels; ++t) {
            out += ',';
            out += std::to_string(f.counts[t]);
        }
        out += '\n';
    }
    return out;
}

TouchRecording read_recording_csv(const std::string& path) {
    return parse_recording_csv(read_file(path));
}

void write_recording_csv(const TouchRecording& rec, const std::string& path) {
    write_file(path, format_recording_csv(rec));
}

void write_feature_csv(const std::vector<FeatureRow>& rows, const std::string& path) {
    std::string out = "participant_id,round,task,label";
    for (const char* name : kFeatureNames) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (const auto& row : rows) {
        out += row.participant_id;
        out += ',';
        out += std::to_string(row.round);
        out += ',';
        out += to_string(row.task);
        out += ',';
        out += row.label;
        for (double v : row.values) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    write_file(path, out);
}

std::vector<FeatureRow> read_feature_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) fail(ErrorKind::Parse, "empty feature file " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        std::string expected = "participant_id,round,task,label";
        for (const char* name : kFeatureNames) {
            expected += ',';
            expected += name;
        }
        if (line != expected)
            fail(ErrorKind::Parse, "feature header does not match the frozen feature order");
    }
    std::vector<FeatureRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_line(line);
        if (static_cast<int>(fields.size()) != 4 + kNumFeatures)
            fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected " +
                                       std::to_string(4 + kNumFeatures) + " fields");
        FeatureRow row;
        row.participant_id = fields[0];
        row.round = static_cast<int>(parse_int(fields[1], line_no));
        row.task = parse_task(fields[2]);
        row.label = fields[3];
        if (row.task == Task::Emotion)
            parse_emotion(row.label);
        else
            parse_gesture(row.label);
        for (int i = 0; i < kNumFeatures; ++i) row.values[i] = parse_double(fields[4 + i], line_no);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace touchtell
