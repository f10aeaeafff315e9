#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sdnc/core_data.hpp"
#include "sdnc/segmentation.hpp"

namespace sdnc::synth {

// Deterministic stand-ins for corpus audio, embedding extraction and ASR.
struct SynthConfig {
    int num_speakers = 4;
    int num_segments = 30;
    size_t dim = 16;
    std::pair<double, double> seg_dur_range{2.0, 8.0};
    double overlap_prob = 0.3;
    double words_per_sec = 2.0;
    double embed_noise_sigma = 0.15;
    double proto_min_angle = 45.0;  // degrees
    uint64_t seed = 7;

    void validate() const;
};

struct SotOutput {
    int segment_id = 0;
    std::vector<std::string> token_stream;  // includes "<sc>" separators
    int speaker_count = 1;
};

inline constexpr const char* kSpeakerChangeToken = "<sc>";

const std::vector<std::string>& vocabulary();

// One meeting: each segment has a primary speaker spanning it; with
// probability overlap_prob a second speaker overlaps the primary's tail and
// runs to the segment end. Deterministic in cfg.seed.
Meeting gen_meeting(const SynthConfig& cfg, const std::string& meeting_id);

// Unit-norm speaker prototypes with pairwise angle >= proto_min_angle,
// rejection-sampled; one per distinct speaker (sorted ids), keyed by cfg.seed.
std::vector<std::vector<double>> speaker_prototypes(const Meeting& meeting, const SynthConfig& cfg);

// Window embeddings over VAD segments: vector = normalized(prototype of the
// window's first-speaker owner at the window midpoint + gaussian noise).
EmbeddingSequence gen_embeddings(const Meeting& meeting, const SynthConfig& cfg,
                                 const WindowingConfig& wcfg);

// Same embedding model but windows slide across FirstSpeaker segments; the
// returned sequence uses the FirstSpeaker unit ordinal (1-based, time order)
// as segment_id. Used to build pretraining examples.
struct FirstSpeakerEmbeddings {
    EmbeddingSequence seq;
    std::vector<FirstSpeakerSegment> units;  // unit i owns segment_id i+1
};
FirstSpeakerEmbeddings gen_embeddings_first_speaker(const Meeting& meeting, const SynthConfig& cfg,
                                                    const WindowingConfig& wcfg);

// SOT ASR surrogate: each speaker's reference tokens concatenated in order of
// first word time, groups joined by "<sc>". With probability count_error_prob
// the speaker count is perturbed by +/-1 (clamped to >= 1) and the stream is
// re-split to match.
SotOutput sot_simulate(const Meeting& meeting, int segment_id, double count_error_prob,
                       uint64_t seed);

// Conventional ASR surrogate over a time interval: reference words with
// midpoint inside, time-ordered across speakers, with per-word substitution
// and deletion noise.
std::vector<std::string> asr_simulate(const Meeting& meeting, const TimeInterval& interval,
                                      double sub_prob, double del_prob, uint64_t seed);

}  // namespace sdnc::synth
