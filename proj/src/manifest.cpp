#include "touchtell/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace touchtell {

namespace fs = std::filesystem;
using nlohmann::json;

std::string meta_path_for(const std::string& manifest_path) {
    fs::path p(manifest_path);
    fs::path meta = p.parent_path() / (p.stem().string() + "_meta.json");
    return meta.string();
}

void write_manifest(const DatasetManifest& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write " + path);
    for (const auto& t : m.trials) {
        json j;
        j["participant_id"] = t.participant_id;
        j["round"] = t.round;
        j["task"] = to_string(t.task);
        j["label"] = t.label;
        j["tactile_path"] = t.tactile_path;
        j["audio_path"] = t.audio_path;
        out << j.dump() << '\n';
    }
    if (!out) fail(ErrorKind::Io, "write failed for " + path);

    json meta;
    meta["schema_version"] = m.schema_version;
    meta["seed"] = m.seed;
    std::ofstream mo(meta_path_for(path), std::ios::binary);
    if (!mo) fail(ErrorKind::Io, "cannot write " + meta_path_for(path));
    mo << meta.dump(2) << '\n';
}

DatasetManifest read_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open " + path);
    DatasetManifest m;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            fail(ErrorKind::Parse, "manifest line " + std::to_string(line_no) + ": " + e.what());
        }
        TrialRecord t;
        try {
            t.participant_id = j.at("participant_id").get<std::string>();
            t.round = j.at("round").get<int>();
            t.task = parse_task(j.at("task").get<std::string>());
            t.label = j.at("label").get<std::string>();
            t.tactile_path = j.at("tactile_path").get<std::string>();
            t.audio_path = j.at("audio_path").get<std::string>();
        } catch (const json::exception& e) {
            fail(ErrorKind::Parse, "manifest line " + std::to_string(line_no) + ": " + e.what());
        }
        m.trials.push_back(std::move(t));
    }

    const std::string meta_path = meta_path_for(path);
    if (fs::exists(meta_path)) {
        std::ifstream mi(meta_path, std::ios::binary);
        std::ostringstream ss;
        ss << mi.rdbuf();
        try {
            json meta = json::parse(ss.str());
            m.schema_version = meta.value("schema_version", 1);
            m.seed = meta.value("seed", std::uint64_t{0});
        } catch (const json::exception& e) {
            fail(ErrorKind::Parse, std::string("manifest meta: ") + e.what());
        }
    }
    return m;
}

ManifestReport validate_manifest(const DatasetManifest& m, const std::string& base_dir) {
    ManifestReport report;
    std::set<std::string> participants;
    for (std::size_t i = 0; i < m.trials.size(); ++i) {
        const auto& t = m.trials[i];
        const std::string where = "trial " + std::to_string(i) + " (" + t.participant_id + ")";
        if (t.round < 1 || t.round > 3)
            report.violations.push_back(where + ": round ∈ {1,2,3} violated (round=" +
                                        std::to_string(t.round) + ")");
        bool label_ok = true;
        try {
            if (t.task == Task::Emotion)
                parse_emotion(t.label);
            else
                parse_gesture(t.label);
        } catch (const Error&) {
            label_ok = false;
            report.violations.push_back(where + ": label '" + t.label + "' does not match task " +
                                        to_string(t.task));
        }
        if (label_ok) report.label_counts[to_string(t.task)][t.label] += 1;
        participants.insert(t.participant_id);

        for (const std::string& rel : {t.tactile_path, t.audio_path}) {
            fs::path p(rel);
            if (p.is_relative()) p = fs::path(base_dir) / p;
            if (!fs::exists(p)) report.missing_files.push_back(where + ": missing file " + rel);
        }
    }
    report.n_participants = static_cast<int>(participants.size());
    return report;
}

}  // namespace touchtell
