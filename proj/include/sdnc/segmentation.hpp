#pragma once

#include <vector>

#include "sdnc/core_data.hpp"

namespace sdnc {

struct WindowingConfig {
    double window_len = 1.5;
    double stride = 1.5;
    double min_window = 0.05;

    void validate() const;
};

// A piece of a VAD segment owned by the speaker who started speaking first.
struct FirstSpeakerSegment {
    int parent_segment_id = 0;
    TimeInterval interval;
    std::string speaker_id;
    bool operator==(const FirstSpeakerSegment&) const = default;
};

// Splits a VAD segment into contiguous runs owned by the active speaker whose
// turn started earliest (ties: earlier turn end, then lexicographic id).
// Turns are clipped to the segment; the output partitions the union of the
// clipped turn intervals.
std::vector<FirstSpeakerSegment> first_speaker_split(const VadSegment& segment,
                                                     const std::vector<SpeakerTurn>& turns);

// All FirstSpeaker segments of a meeting in time order.
std::vector<FirstSpeakerSegment> first_speaker_units(const Meeting& meeting);

// Fixed windows at offsets start, start+stride, ...; the last window is
// clipped to the interval end; windows shorter than min_window are dropped
// unless the result would be empty.
std::vector<TimeInterval> slice_windows(const TimeInterval& interval, const WindowingConfig& cfg);

// (segment_id, is_homogeneous): homogeneous iff exactly one reference speaker
// has a turn intersecting the segment.
std::vector<std::pair<int, bool>> mark_homogeneous(const Meeting& meeting);

}  // namespace sdnc
