#include "sdnc/core_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace sdnc {

using nlohmann::json;

void Meeting::validate(int max_speakers) const {
    if (meeting_id.empty()) throw ValidationError("meeting_id must be non-empty");
    if (num_speakers < 2 || num_speakers > max_speakers)
        throw ValidationError("num_speakers " + std::to_string(num_speakers) + " outside [2, " +
                              std::to_string(max_speakers) + "] in meeting " + meeting_id);
    for (size_t i = 0; i < vad_segments.size(); ++i) {
        const auto& s = vad_segments[i];
        if (s.interval.start < -kTimeEps || s.interval.end < s.interval.start - kTimeEps)
            throw ValidationError("invalid VAD interval in meeting " + meeting_id);
        if (i > 0) {
            const auto& prev = vad_segments[i - 1];
            if (s.interval.start < prev.interval.start)
                throw ValidationError("VAD segments not sorted by start in meeting " + meeting_id);
            if (s.interval.start < prev.interval.end - kTimeEps)
                throw ValidationError("overlapping VAD segments " + std::to_string(prev.id) + " and " +
                                      std::to_string(s.id) + " in meeting " + meeting_id);
        }
    }
    std::set<int> seg_ids;
    for (const auto& s : vad_segments)
        if (!seg_ids.insert(s.id).second)
            throw ValidationError("duplicate VAD segment id " + std::to_string(s.id));

    for (const auto& t : turns) {
        if (t.speaker_id.empty()) throw ValidationError("empty speaker id in meeting " + meeting_id);
        if (t.interval.end < t.interval.start - kTimeEps)
            throw ValidationError("turn with negative duration in meeting " + meeting_id);
        // turn must lie inside the union of VAD segments
        double covered = 0.0;
        for (const auto& s : vad_segments) covered += t.interval.overlap(s.interval);
        if (covered + 1e-6 < t.interval.duration())
            throw ValidationError("turn of " + t.speaker_id + " [" + std::to_string(t.interval.start) +
                                  ", " + std::to_string(t.interval.end) +
                                  "] outside VAD union in meeting " + meeting_id);
        double prev_time = -1.0;
        for (const auto& w : t.words) {
            if (!t.interval.contains(w.time))
                throw ValidationError("word midpoint outside its turn in meeting " + meeting_id);
            if (w.time < prev_time - kTimeEps)
                throw ValidationError("word midpoints not non-decreasing in meeting " + meeting_id);
            prev_time = w.time;
        }
    }
    if (static_cast<int>(distinct_speakers().size()) > num_speakers)
        throw ValidationError("more distinct turn speakers than num_speakers in meeting " + meeting_id);
}

const VadSegment* Meeting::segment_by_id(int id) const {
    for (const auto& s : vad_segments)
        if (s.id == id) return &s;
    return nullptr;
}

std::vector<std::string> Meeting::distinct_speakers() const {
    std::set<std::string> s;
    for (const auto& t : turns) s.insert(t.speaker_id);
    return {s.begin(), s.end()};
}

void EmbeddingSequence::validate() const {
    for (size_t i = 0; i < windows.size(); ++i) {
        const auto& w = windows[i];
        if (w.vector.size() != dim)
            throw ValidationError("embedding dim mismatch in " + meeting_id + ": expected " +
                                  std::to_string(dim) + " got " + std::to_string(w.vector.size()));
        for (double v : w.vector)
            if (!std::isfinite(v)) throw ValidationError("non-finite embedding value in " + meeting_id);
        if (i > 0) {
            const auto& p = windows[i - 1];
            if (w.segment_id < p.segment_id ||
                (w.segment_id == p.segment_id && w.interval.start < p.interval.start - kTimeEps))
                throw ValidationError("windows not sorted by (segment_id, start) in " + meeting_id);
        }
    }
}

std::vector<int> EmbeddingSequence::distinct_segment_ids() const {
    std::vector<int> ids;
    for (const auto& w : windows)
        if (ids.empty() || ids.back() != w.segment_id) ids.push_back(w.segment_id);
    return ids;
}

void LabelSequence::validate() const {
    if (labels.size() != slot_segment_ids.size())
        throw ValidationError("LabelSequence labels/slot_segment_ids length mismatch");
    if (labels.empty()) return;
    if (labels.front() != 1) throw ValidationError("first label must be 1");
    int next_new = 1;
    for (int l : labels) {
        if (l < 1) throw ValidationError("labels must be positive");
        if (l > next_new) throw ValidationError("labels must appear in first-appearance order");
        if (l == next_new) ++next_new;
    }
}

std::vector<int> canonicalize_labels(const std::vector<int>& labels) {
    std::vector<int> out;
    out.reserve(labels.size());
    std::vector<std::pair<int, int>> seen;  // (original, canonical)
    for (int l : labels) {
        int mapped = 0;
        for (const auto& [orig, canon] : seen)
            if (orig == l) {
                mapped = canon;
                break;
            }
        if (mapped == 0) {
            mapped = static_cast<int>(seen.size()) + 1;
            seen.emplace_back(l, mapped);
        }
        out.push_back(mapped);
    }
    return out;
}

LabelSequence make_label_sequence(std::vector<int> labels, std::vector<int> slot_segment_ids) {
    LabelSequence seq{std::move(labels), std::move(slot_segment_ids)};
    seq.validate();
    return seq;
}

// ---- JSON ----

static json interval_to_json(const TimeInterval& iv) {
    return json{{"start", iv.start}, {"end", iv.end}};
}

Meeting load_meeting(const std::filesystem::path& path, int max_speakers) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open meeting file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("malformed meeting JSON in " + path.string() + ": " + e.what());
    }
    Meeting m;
    try {
        m.meeting_id = j.at("meeting_id").get<std::string>();
        m.num_speakers = j.at("num_speakers").get<int>();
        for (const auto& js : j.at("vad_segments")) {
            VadSegment s;
            s.id = js.at("id").get<int>();
            s.interval = {js.at("start").get<double>(), js.at("end").get<double>()};
            m.vad_segments.push_back(s);
        }
        for (const auto& jt : j.at("turns")) {
            SpeakerTurn t;
            t.speaker_id = jt.at("speaker").get<std::string>();
            t.interval = {jt.at("start").get<double>(), jt.at("end").get<double>()};
            for (const auto& jw : jt.at("words"))
                t.words.push_back({jw.at("token").get<std::string>(), jw.at("time").get<double>()});
            m.turns.push_back(std::move(t));
        }
    } catch (const json::exception& e) {
        throw ParseError("meeting JSON schema violation in " + path.string() + ": " + e.what());
    }
    m.validate(max_speakers);
    return m;
}

void save_meeting(const Meeting& m, const std::filesystem::path& path) {
    json j;
    j["meeting_id"] = m.meeting_id;
    j["num_speakers"] = m.num_speakers;
    j["vad_segments"] = json::array();
    for (const auto& s : m.vad_segments) {
        json js = interval_to_json(s.interval);
        js["id"] = s.id;
        j["vad_segments"].push_back(js);
    }
    j["turns"] = json::array();
    for (const auto& t : m.turns) {
        json jt = interval_to_json(t.interval);
        jt["speaker"] = t.speaker_id;
        jt["words"] = json::array();
        for (const auto& w : t.words) jt["words"].push_back({{"token", w.token}, {"time", w.time}});
        j["turns"].push_back(jt);
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write meeting file: " + path.string());
    out << j.dump(1) << "\n";
}

EmbeddingSequence load_embeddings_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open embeddings file: " + path.string());
    EmbeddingSequence seq;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": bad JSONL line: " +
                             e.what());
        }
        WindowEmbedding w;
        try {
            std::string mid = j.at("meeting_id").get<std::string>();
            if (seq.meeting_id.empty())
                seq.meeting_id = mid;
            else if (seq.meeting_id != mid)
                throw ParseError(path.string() + ": mixed meeting ids in one embeddings file");
            w.segment_id = j.at("segment_id").get<int>();
            w.interval = {j.at("start").get<double>(), j.at("end").get<double>()};
            w.vector = j.at("vector").get<std::vector<double>>();
        } catch (const json::exception& e) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": schema violation: " +
                             e.what());
        }
        if (seq.windows.empty()) seq.dim = w.vector.size();
        seq.windows.push_back(std::move(w));
    }
    seq.validate();
    return seq;
}

void save_embeddings_jsonl(const EmbeddingSequence& seq, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write embeddings file: " + path.string());
    for (const auto& w : seq.windows) {
        json j;
        j["meeting_id"] = seq.meeting_id;
        j["segment_id"] = w.segment_id;
        j["start"] = w.interval.start;
        j["end"] = w.interval.end;
        j["vector"] = w.vector;
        out << j.dump() << "\n";
    }
}

// ---- RTTM ----

void write_rttm(const std::vector<LabeledInterval>& turns, const std::string& meeting_id,
                const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write RTTM file: " + path.string());
    char buf[64];
    for (const auto& t : turns) {
        std::snprintf(buf, sizeof(buf), "%.2f %.2f", t.interval.start, t.interval.duration());
        out << "SPEAKER " << meeting_id << " 1 " << buf << " <NA> <NA> " << t.speaker
            << " <NA> <NA>\n";
    }
}

std::vector<LabeledInterval> load_rttm(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open RTTM file: " + path.string());
    std::vector<LabeledInterval> turns;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::vector<std::string> fields;
        std::string f;
        while (ss >> f) fields.push_back(f);
        if (fields.size() != 10)
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected 10 RTTM fields, got " +
                             std::to_string(fields.size()));
        if (fields[0] != "SPEAKER")
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected SPEAKER record");
        double start = 0, dur = 0;
        try {
            start = std::stod(fields[3]);
            dur = std::stod(fields[4]);
        } catch (const std::exception&) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": bad start/duration field");
        }
        turns.push_back({fields[7], {start, start + dur}});
    }
    std::stable_sort(turns.begin(), turns.end(), [](const auto& a, const auto& b) {
        return a.interval.start < b.interval.start;
    });
    return turns;
}

}  // namespace sdnc
