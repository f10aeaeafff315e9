#include "sdnc/segmentation.hpp"

#include <algorithm>
#include <set>

namespace sdnc {

void WindowingConfig::validate() const {
    if (window_len <= 0 || stride <= 0) throw ConfigError("window_len and stride must be positive");
    if (min_window < 0 || min_window >= window_len)
        throw ConfigError("min_window must be in [0, window_len)");
}

std::vector<FirstSpeakerSegment> first_speaker_split(const VadSegment& segment,
                                                     const std::vector<SpeakerTurn>& turns) {
    // clip to segment bounds, keep only turns that actually intersect
    struct Clipped {
        std::string speaker;
        double start, end;       // clipped
        double orig_start, orig_end;  // ownership priority uses original times
    };
    std::vector<Clipped> clipped;
    for (const auto& t : turns) {
        double lo = std::max(t.interval.start, segment.interval.start);
        double hi = std::min(t.interval.end, segment.interval.end);
        if (hi - lo > kTimeEps)
            clipped.push_back({t.speaker_id, lo, hi, t.interval.start, t.interval.end});
    }
    if (clipped.empty())
        throw ValidationError("first_speaker_split: no turns intersect segment " +
                              std::to_string(segment.id));

    // boundaries of elementary intervals where the active set is constant
    std::set<double> points;
    for (const auto& c : clipped) {
        points.insert(c.start);
        points.insert(c.end);
    }
    std::vector<double> pts(points.begin(), points.end());

    std::vector<FirstSpeakerSegment> out;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double lo = pts[i], hi = pts[i + 1];
        if (hi - lo <= kTimeEps) continue;
        double mid = 0.5 * (lo + hi);
        const Clipped* owner = nullptr;
        for (const auto& c : clipped) {
            if (mid < c.start || mid >= c.end) continue;
            if (!owner || c.orig_start < owner->orig_start - kTimeEps ||
                (std::abs(c.orig_start - owner->orig_start) <= kTimeEps &&
                 (c.orig_end < owner->orig_end - kTimeEps ||
                  (std::abs(c.orig_end - owner->orig_end) <= kTimeEps && c.speaker < owner->speaker))))
                owner = &c;
        }
        if (!owner) continue;  // gap between turns
        if (!out.empty() && out.back().speaker_id == owner->speaker &&
            std::abs(out.back().interval.end - lo) <= kTimeEps) {
            out.back().interval.end = hi;
        } else {
            out.push_back({segment.id, {lo, hi}, owner->speaker});
        }
    }
    return out;
}

std::vector<FirstSpeakerSegment> first_speaker_units(const Meeting& meeting) {
    std::vector<FirstSpeakerSegment> units;
    for (const auto& seg : meeting.vad_segments) {
        std::vector<SpeakerTurn> local;
        for (const auto& t : meeting.turns)
            if (t.interval.overlap(seg.interval) > kTimeEps) local.push_back(t);
        if (local.empty()) continue;
        auto parts = first_speaker_split(seg, local);
        units.insert(units.end(), parts.begin(), parts.end());
    }
    return units;
}

std::vector<TimeInterval> slice_windows(const TimeInterval& interval, const WindowingConfig& cfg) {
    cfg.validate();
    if (interval.duration() <= kTimeEps)
        throw ValidationError("slice_windows: non-positive interval duration");
    std::vector<TimeInterval> all;
    for (double off = interval.start; off < interval.end - kTimeEps; off += cfg.stride)
        all.push_back({off, std::min(off + cfg.window_len, interval.end)});
    std::vector<TimeInterval> kept;
    for (const auto& w : all)
        if (w.duration() >= cfg.min_window - kTimeEps) kept.push_back(w);
    if (kept.empty() && !all.empty()) kept.push_back(all.front());
    return kept;
}

std::vector<std::pair<int, bool>> mark_homogeneous(const Meeting& meeting) {
    std::vector<std::pair<int, bool>> out;
    out.reserve(meeting.vad_segments.size());
    for (const auto& seg : meeting.vad_segments) {
        std::set<std::string> speakers;
        for (const auto& t : meeting.turns)
            if (t.interval.overlap(seg.interval) > kTimeEps) speakers.insert(t.speaker_id);
        out.emplace_back(seg.id, speakers.size() == 1);
    }
    return out;
}

}  // namespace sdnc
