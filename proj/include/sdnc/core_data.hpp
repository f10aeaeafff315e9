#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sdnc/util.hpp"

namespace sdnc {

struct TimeInterval {
    double start = 0.0;
    double end = 0.0;

    double duration() const { return end - start; }
    bool contains(double t) const { return t >= start - kTimeEps && t < end + kTimeEps; }
    double overlap(const TimeInterval& o) const {
        double lo = std::max(start, o.start), hi = std::min(end, o.end);
        return std::max(0.0, hi - lo);
    }
    bool operator==(const TimeInterval&) const = default;
};

struct WordToken {
    std::string token;
    double time = 0.0;  // word midpoint
    bool operator==(const WordToken&) const = default;
};

struct SpeakerTurn {
    std::string speaker_id;
    TimeInterval interval;
    std::vector<WordToken> words;
    bool operator==(const SpeakerTurn&) const = default;
};

struct VadSegment {
    int id = 0;
    TimeInterval interval;
    bool operator==(const VadSegment&) const = default;
};

// Ground-truth container: reference speaker turns with word timings plus the
// VAD segmentation the systems operate on.
struct Meeting {
    std::string meeting_id;
    int num_speakers = 0;
    std::vector<VadSegment> vad_segments;
    std::vector<SpeakerTurn> turns;

    // Throws ValidationError on any invariant violation.
    void validate(int max_speakers = 5) const;
    const VadSegment* segment_by_id(int id) const;
    std::vector<std::string> distinct_speakers() const;  // sorted
    bool operator==(const Meeting&) const = default;
};

struct WindowEmbedding {
    int segment_id = 0;
    TimeInterval interval;
    std::vector<double> vector;
    bool operator==(const WindowEmbedding&) const = default;
};

struct EmbeddingSequence {
    std::string meeting_id;
    size_t dim = 0;
    std::vector<WindowEmbedding> windows;  // sorted by (segment_id, start)

    void validate() const;
    std::vector<int> distinct_segment_ids() const;  // in window order
    bool operator==(const EmbeddingSequence&) const = default;
};

// Relative cluster labels, one per output slot, first-appearance canonical.
struct LabelSequence {
    std::vector<int> labels;
    std::vector<int> slot_segment_ids;

    void validate() const;
    bool operator==(const LabelSequence&) const = default;
};

struct TranscriptEntry {
    int segment_id = 0;
    int speaker_label = 0;
    std::vector<std::string> words;
    bool operator==(const TranscriptEntry&) const = default;
};

struct SpeakerAttributedTranscript {
    std::vector<TranscriptEntry> entries;  // grouped by segment, decode order within
    bool operator==(const SpeakerAttributedTranscript&) const = default;
};

// A (speaker, interval) pair; the RTTM exchange unit.
struct LabeledInterval {
    std::string speaker;
    TimeInterval interval;
    bool operator==(const LabeledInterval&) const = default;
};

// ---- file I/O ----

Meeting load_meeting(const std::filesystem::path& path, int max_speakers = 5);
void save_meeting(const Meeting& m, const std::filesystem::path& path);

EmbeddingSequence load_embeddings_jsonl(const std::filesystem::path& path);
void save_embeddings_jsonl(const EmbeddingSequence& seq, const std::filesystem::path& path);

void write_rttm(const std::vector<LabeledInterval>& turns, const std::string& meeting_id,
                const std::filesystem::path& path);
std::vector<LabeledInterval> load_rttm(const std::filesystem::path& path);

// First-appearance relabeling: first distinct value -> 1, next new -> 2, ...
std::vector<int> canonicalize_labels(const std::vector<int>& labels);

LabelSequence make_label_sequence(std::vector<int> labels, std::vector<int> slot_segment_ids);

}  // namespace sdnc
