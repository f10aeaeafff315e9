#include "sdnc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "sdnc/kernels.hpp"
#include "sdnc/rng.hpp"

namespace sdnc::synth {

void SynthConfig::validate() const {
    if (num_speakers < 2) throw ConfigError("num_speakers must be >= 2");
    if (dim < 2) throw ConfigError("dim must be >= 2");
    if (overlap_prob < 0.0 || overlap_prob > 1.0) throw ConfigError("overlap_prob must be in [0,1]");
    if (num_segments < num_speakers)
        throw ConfigError("num_segments must be >= num_speakers so every speaker appears");
    if (seg_dur_range.first <= 0 || seg_dur_range.second < seg_dur_range.first)
        throw ConfigError("seg_dur_range must be a positive, ordered pair");
    if (words_per_sec <= 0) throw ConfigError("words_per_sec must be positive");
    if (embed_noise_sigma < 0) throw ConfigError("embed_noise_sigma must be non-negative");
    if (std::floor(seg_dur_range.first * words_per_sec) < 1.0)
        throw ConfigError("infeasible config: shortest segment cannot hold one word");
}

const std::vector<std::string>& vocabulary() {
    static const std::vector<std::string> vocab = {
        "the",    "and",   "to",     "of",    "a",      "in",    "that",   "is",
        "it",     "we",    "for",    "you",   "this",   "on",    "be",     "with",
        "have",   "so",    "but",    "not",   "are",    "as",    "they",   "at",
        "what",   "do",    "can",    "if",    "about",  "think", "one",    "there",
        "all",    "just",  "like",   "know",  "get",    "then",  "some",   "would",
        "more",   "when",  "which",  "out",   "point",  "right", "people", "time",
        "now",    "see",   "could",  "well",  "also",   "two",   "how",    "first",
        "design", "thing", "really", "where", "should", "maybe", "good",   "idea"};
    return vocab;
}

static std::vector<WordToken> make_words(const TimeInterval& turn, double rate, const Rng& rng,
                                         uint64_t& ctr) {
    int count = static_cast<int>(std::floor(turn.duration() * rate + kTimeEps));
    std::vector<WordToken> words;
    words.reserve(count);
    const auto& vocab = vocabulary();
    for (int i = 0; i < count; ++i) {
        double t = turn.start + (i + 0.5) / rate;
        words.push_back({vocab[rng.pick(ctr++, vocab.size())], t});
    }
    return words;
}

static std::string speaker_name(int k) {
    // single letters keep lexicographic and index order aligned
    return std::string(1, static_cast<char>('A' + k));
}

Meeting gen_meeting(const SynthConfig& cfg, const std::string& meeting_id) {
    cfg.validate();
    Rng rs = Rng::keyed(cfg.seed, {stream::meeting_struct});
    Rng rw = Rng::keyed(cfg.seed, {stream::meeting_words});
    uint64_t cs = 0, cw = 0;

    Meeting m;
    m.meeting_id = meeting_id;
    m.num_speakers = cfg.num_speakers;

    // primary speaker per segment; the first num_speakers segments get a
    // permutation of all speakers so every speaker appears
    std::vector<int> primary(cfg.num_segments);
    for (int i = 0; i < cfg.num_segments; ++i)
        primary[i] = static_cast<int>(rs.pick(cs++, cfg.num_speakers));
    auto perm = rs.permutation(cs, cfg.num_speakers);
    cs += cfg.num_speakers + 2;
    for (int i = 0; i < cfg.num_speakers; ++i) primary[i] = static_cast<int>(perm[i]);

    double t = 0.0;
    for (int i = 0; i < cfg.num_segments; ++i) {
        t += rs.uniform(cs++, 0.4, 1.2);  // non-speech gap
        double dur = rs.uniform(cs++, cfg.seg_dur_range.first, cfg.seg_dur_range.second);
        VadSegment seg{i + 1, {t, t + dur}};
        m.vad_segments.push_back(seg);

        bool overlapped = rs.bernoulli(cs++, cfg.overlap_prob);
        int second = -1;
        if (overlapped && cfg.num_speakers >= 2) {
            second = static_cast<int>(rs.pick(cs++, cfg.num_speakers - 1));
            if (second >= primary[i]) ++second;
        }
        double s = seg.interval.start, e = seg.interval.end, d = dur;
        if (second >= 0) {
            double b_start = s + d * rs.uniform(cs++, 0.35, 0.55);
            double a_end = b_start + (e - b_start) * rs.uniform(cs++, 0.25, 0.6);
            // both turns must hold at least one word, otherwise fall back to
            // a single-speaker segment
            if (std::floor((a_end - s) * cfg.words_per_sec) >= 1.0 &&
                std::floor((e - b_start) * cfg.words_per_sec) >= 1.0) {
                SpeakerTurn first{speaker_name(primary[i]), {s, a_end}, {}};
                first.words = make_words(first.interval, cfg.words_per_sec, rw, cw);
                SpeakerTurn tail{speaker_name(second), {b_start, e}, {}};
                tail.words = make_words(tail.interval, cfg.words_per_sec, rw, cw);
                m.turns.push_back(std::move(first));
                m.turns.push_back(std::move(tail));
                t = e;
                continue;
            }
        }
        SpeakerTurn only{speaker_name(primary[i]), {s, e}, {}};
        only.words = make_words(only.interval, cfg.words_per_sec, rw, cw);
        if (only.words.empty())
            throw ConfigError("infeasible config: segment too short for one word");
        m.turns.push_back(std::move(only));
        t = e;
    }
    m.validate(std::max(5, cfg.num_speakers));
    return m;
}

static double norm(const std::vector<double>& v) {
    return std::sqrt(kern::dot(v.data(), v.data(), v.size()));
}

std::vector<std::vector<double>> speaker_prototypes(const Meeting& meeting, const SynthConfig& cfg) {
    auto speakers = meeting.distinct_speakers();
    double cos_cap = std::cos(cfg.proto_min_angle * std::numbers::pi / 180.0);
    Rng rng = Rng::keyed(cfg.seed, {stream::prototypes});
    uint64_t ctr = 0;
    std::vector<std::vector<double>> protos;
    for (size_t k = 0; k < speakers.size(); ++k) {
        bool accepted = false;
        for (int attempt = 0; attempt < 1000 && !accepted; ++attempt) {
            std::vector<double> v(cfg.dim);
            for (size_t d = 0; d < cfg.dim; ++d) v[d] = rng.gaussian(ctr++);
            double n = norm(v);
            if (n < 1e-12) continue;
            kern::scal(1.0 / n, v.data(), cfg.dim);
            accepted = true;
            for (const auto& p : protos)
                if (kern::dot(v.data(), p.data(), cfg.dim) > cos_cap) {
                    accepted = false;
                    break;
                }
            if (accepted) protos.push_back(std::move(v));
        }
        if (!accepted)
            throw ValidationError("prototype sampling failed: angle constraint infeasible for dim=" +
                                  std::to_string(cfg.dim) + ", speakers=" +
                                  std::to_string(speakers.size()));
    }
    return protos;
}

// owner of a time point under the FirstSpeaker rule; nearest unit if the
// point falls in a gap
static size_t owner_unit_at(const std::vector<FirstSpeakerSegment>& units, double t) {
    for (size_t i = 0; i < units.size(); ++i)
        if (units[i].interval.contains(t)) return i;
    size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < units.size(); ++i) {
        double d = std::max({units[i].interval.start - t, t - units[i].interval.end, 0.0});
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

static std::vector<double> noisy_prototype(const std::vector<double>& proto, double sigma,
                                           const Rng& rng, uint64_t ctr_base) {
    if (sigma == 0.0) return proto;  // exact copy, no renormalization drift
    std::vector<double> v(proto.size());
    for (size_t d = 0; d < proto.size(); ++d) v[d] = proto[d] + sigma * rng.gaussian(ctr_base + d);
    double n = norm(v);
    if (n < 1e-12) return proto;
    kern::scal(1.0 / n, v.data(), v.size());
    return v;
}

EmbeddingSequence gen_embeddings(const Meeting& meeting, const SynthConfig& cfg,
                                 const WindowingConfig& wcfg) {
    auto speakers = meeting.distinct_speakers();
    auto protos = speaker_prototypes(meeting, cfg);
    auto speaker_index = [&](const std::string& s) {
        return static_cast<size_t>(std::lower_bound(speakers.begin(), speakers.end(), s) -
                                   speakers.begin());
    };

    EmbeddingSequence seq;
    seq.meeting_id = meeting.meeting_id;
    seq.dim = cfg.dim;
    for (const auto& seg : meeting.vad_segments) {
        std::vector<SpeakerTurn> local;
        for (const auto& t : meeting.turns)
            if (t.interval.overlap(seg.interval) > kTimeEps) local.push_back(t);
        if (local.empty()) continue;
        auto fs = first_speaker_split(seg, local);
        auto wins = slice_windows(seg.interval, wcfg);
        Rng rng = Rng::keyed(cfg.seed, {stream::embed_noise_vad, static_cast<uint64_t>(seg.id)});
        for (size_t wi = 0; wi < wins.size(); ++wi) {
            double mid = 0.5 * (wins[wi].start + wins[wi].end);
            const auto& owner = fs[owner_unit_at(fs, mid)];
            const auto& proto = protos[speaker_index(owner.speaker_id)];
            seq.windows.push_back(
                {seg.id, wins[wi],
                 noisy_prototype(proto, cfg.embed_noise_sigma, rng, wi * 4096)});
        }
    }
    seq.validate();
    return seq;
}

FirstSpeakerEmbeddings gen_embeddings_first_speaker(const Meeting& meeting, const SynthConfig& cfg,
                                                    const WindowingConfig& wcfg) {
    auto speakers = meeting.distinct_speakers();
    auto protos = speaker_prototypes(meeting, cfg);
    auto speaker_index = [&](const std::string& s) {
        return static_cast<size_t>(std::lower_bound(speakers.begin(), speakers.end(), s) -
                                   speakers.begin());
    };

    FirstSpeakerEmbeddings out;
    out.units = first_speaker_units(meeting);
    out.seq.meeting_id = meeting.meeting_id;
    out.seq.dim = cfg.dim;
    for (size_t u = 0; u < out.units.size(); ++u) {
        const auto& unit = out.units[u];
        auto wins = slice_windows(unit.interval, wcfg);
        const auto& proto = protos[speaker_index(unit.speaker_id)];
        Rng rng = Rng::keyed(cfg.seed, {stream::embed_noise_fs, static_cast<uint64_t>(u)});
        for (size_t wi = 0; wi < wins.size(); ++wi) {
            out.seq.windows.push_back(
                {static_cast<int>(u + 1), wins[wi],
                 noisy_prototype(proto, cfg.embed_noise_sigma, rng, wi * 4096)});
        }
    }
    out.seq.validate();
    return out;
}

SotOutput sot_simulate(const Meeting& meeting, int segment_id, double count_error_prob,
                       uint64_t seed) {
    const VadSegment* seg = meeting.segment_by_id(segment_id);
    if (!seg) throw ValidationError("sot_simulate: no such segment " + std::to_string(segment_id));

    // (first word time, speaker, tokens) groups
    struct Group {
        double first_time;
        std::string speaker;
        std::vector<std::string> tokens;
    };
    std::map<std::string, Group> by_speaker;
    for (const auto& t : meeting.turns)
        for (const auto& w : t.words)
            if (seg->interval.contains(w.time)) {
                auto [it, fresh] = by_speaker.try_emplace(t.speaker_id, Group{w.time, t.speaker_id, {}});
                if (!fresh) it->second.first_time = std::min(it->second.first_time, w.time);
                it->second.tokens.push_back(w.token);
            }
    std::vector<Group> groups;
    for (auto& [_, g] : by_speaker) groups.push_back(std::move(g));
    std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
        if (a.first_time != b.first_time) return a.first_time < b.first_time;
        return a.speaker < b.speaker;
    });

    std::vector<std::vector<std::string>> token_groups;
    for (auto& g : groups) token_groups.push_back(std::move(g.tokens));
    if (token_groups.empty()) token_groups.push_back({});

    int count = static_cast<int>(token_groups.size());
    Rng rng = Rng::keyed(seed, {stream::sot, fnv1a64(meeting.meeting_id),
                                static_cast<uint64_t>(segment_id)});
    if (rng.bernoulli(0, count_error_prob)) {
        int target = std::max(1, count + (rng.bernoulli(1, 0.5) ? 1 : -1));
        if (target == count - 1) {
            // merge the last two groups
            auto tail = std::move(token_groups.back());
            token_groups.pop_back();
            token_groups.back().insert(token_groups.back().end(), tail.begin(), tail.end());
        } else if (target == count + 1) {
            // split the longest group (earliest on ties) at its midpoint
            size_t longest = 0;
            for (size_t i = 1; i < token_groups.size(); ++i)
                if (token_groups[i].size() > token_groups[longest].size()) longest = i;
            auto& g = token_groups[longest];
            size_t cut = (g.size() + 1) / 2;
            std::vector<std::string> right(g.begin() + cut, g.end());
            g.resize(cut);
            token_groups.insert(token_groups.begin() + longest + 1, std::move(right));
        }
        count = static_cast<int>(token_groups.size());
    }

    SotOutput out;
    out.segment_id = segment_id;
    out.speaker_count = count;
    for (size_t i = 0; i < token_groups.size(); ++i) {
        if (i > 0) out.token_stream.push_back(kSpeakerChangeToken);
        out.token_stream.insert(out.token_stream.end(), token_groups[i].begin(),
                                token_groups[i].end());
    }
    return out;
}

std::vector<std::string> asr_simulate(const Meeting& meeting, const TimeInterval& interval,
                                      double sub_prob, double del_prob, uint64_t seed) {
    struct Timed {
        double time;
        std::string speaker;
        std::string token;
    };
    std::vector<Timed> words;
    for (const auto& t : meeting.turns)
        for (const auto& w : t.words)
            if (interval.contains(w.time)) words.push_back({w.time, t.speaker_id, w.token});
    std::sort(words.begin(), words.end(), [](const Timed& a, const Timed& b) {
        if (a.time != b.time) return a.time < b.time;
        if (a.speaker != b.speaker) return a.speaker < b.speaker;
        return a.token < b.token;
    });

    const auto& vocab = vocabulary();
    Rng rng = Rng::keyed(seed, {stream::asr, fnv1a64(meeting.meeting_id)});
    std::vector<std::string> out;
    out.reserve(words.size());
    for (const auto& w : words) {
        // key noise to the word's time so the outcome does not depend on the
        // interval the word is decoded in
        uint64_t wkey = static_cast<uint64_t>(std::llround(w.time * 1e6)) * 4;
        if (rng.uniform(wkey) < del_prob) continue;
        if (rng.uniform(wkey + 1) < sub_prob) {
            size_t pick = rng.pick(wkey + 2, vocab.size() - 1);
            const std::string& repl =
                vocab[pick] == w.token ? vocab[(pick + 1) % vocab.size()] : vocab[pick];
            out.push_back(repl);
        } else {
            out.push_back(w.token);
        }
    }
    return out;
}

}  // namespace sdnc::synth
