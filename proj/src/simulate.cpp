#include "evblur/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace evblur {

Vec2 scene_displacement(const std::vector<MotionSegment>& motion, double frame_index) {
    if (motion.empty())
        throw std::invalid_argument("scene_displacement: empty motion schedule");
    Vec2 d;
    double remaining = frame_index;
    for (std::size_t i = 0; i < motion.size(); ++i) {
        const MotionSegment& seg = motion[i];
        const bool last = (i + 1 == motion.size());
        const double span = last ? remaining
                                 : std::min(remaining, static_cast<double>(seg.frames));
        d.x += span * seg.vx;
        d.y += span * seg.vy;
        remaining -= span;
        if (remaining <= 0.0) break;
    }
    return d;
}

namespace {

Frame render_pattern(Pattern pattern, int width, int height, int checker_cell) {
    Frame f(width, height);
    switch (pattern) {
        case Pattern::checker: {
            if (checker_cell < 1)
                throw std::invalid_argument("generate_scene: checker cell must be >= 1");
            for (int y = 0; y < height; ++y)
                for (int x = 0; x < width; ++x) {
                    const bool on = ((x / checker_cell) + (y / checker_cell)) % 2 == 0;
                    f.at(x, y) = on ? 0.85 : 0.15;
                }
            break;
        }
        case Pattern::ramp: {
            const double scale = width > 1 ? 1.0 / (width - 1) : 0.0;
            for (int y = 0; y < height; ++y)
                for (int x = 0; x < width; ++x)
                    f.at(x, y) = 0.1 + 0.8 * (x * scale);
            break;
        }
        case Pattern::texture: {
            // Deterministic smooth pseudo-texture with gradients everywhere.
            for (int y = 0; y < height; ++y)
                for (int x = 0; x < width; ++x) {
                    const double fx = 2.0 * M_PI * x;
                    const double fy = 2.0 * M_PI * y;
                    double v = 0.5;
                    v += 0.18 * std::sin(fx / 9.7 + 1.3 * std::sin(fy / 13.1));
                    v += 0.18 * std::sin(fy / 7.3 + 0.9 * std::sin(fx / 17.9));
                    v += 0.09 * std::sin((fx + fy) / 5.3);
                    f.at(x, y) = std::clamp(v, 0.02, 0.98);
                }
            break;
        }
    }
    return f;
}

}  // namespace

FrameSequence generate_scene(Pattern pattern, const std::vector<MotionSegment>& motion,
                             int n_frames, int width, int height,
                             Timestamp frame_dt_us, int checker_cell) {
    if (n_frames < 2)
        throw std::invalid_argument("generate_scene: at least 2 frames required");
    if (motion.empty())
        throw std::invalid_argument("generate_scene: empty motion schedule");
    if (frame_dt_us < 1)
        throw std::invalid_argument("generate_scene: frame spacing must be >= 1 us");

    const Frame base = render_pattern(pattern, width, height, checker_cell);
    FrameSequence seq;
    seq.frames.reserve(n_frames);
    seq.timestamps.reserve(n_frames);
    for (int k = 0; k < n_frames; ++k) {
        const Vec2 d = scene_displacement(motion, static_cast<double>(k));
        if (d.x == 0.0 && d.y == 0.0) {
            seq.frames.push_back(base);
        } else {
            seq.frames.push_back(warp(base, FlowField(width, height, d.x, d.y)));
        }
        seq.timestamps.push_back(static_cast<Timestamp>(k) * frame_dt_us);
    }
    return seq;
}

EventStream simulate_events(const FrameSequence& seq, const SimConfig& cfg) {
    seq.check_valid();
    if (seq.size() < 2)
        throw std::invalid_argument("simulate_events: at least 2 frames required");
    if (cfg.contrast <= 0.0)
        throw std::invalid_argument("simulate_events: contrast threshold must be positive");
    if (cfg.threshold_sigma < 0.0)
        throw std::invalid_argument("simulate_events: threshold sigma must be >= 0");
    if (cfg.log_eps <= 0.0)
        throw std::invalid_argument("simulate_events: log_eps must be positive");

    const int w = seq.frames[0].width;
    const int h = seq.frames[0].height;
    const std::size_t npx = static_cast<std::size_t>(w) * h;
    const std::size_t nf = seq.size();

    // Per-pixel thresholds, drawn once per simulation.
    std::vector<double> thresh(npx);
    {
        std::mt19937_64 rng(cfg.rng_seed);
        std::normal_distribution<double> jitter(0.0, std::max(cfg.threshold_sigma, 1e-300));
        for (std::size_t i = 0; i < npx; ++i) {
            const double draw = cfg.threshold_sigma > 0.0 ? jitter(rng) : 0.0;
            thresh[i] = std::max(0.01, cfg.contrast + draw);
        }
    }

    std::vector<std::vector<double>> logs(nf);
    for (std::size_t k = 0; k < nf; ++k) {
        logs[k].resize(npx);
        const Frame& f = seq.frames[k];
        for (std::size_t i = 0; i < npx; ++i)
            logs[k][i] = std::log(std::max(0.0, f.data[i]) + cfg.log_eps);
    }

    std::vector<Event> events;
    for (std::size_t i = 0; i < npx; ++i) {
        const auto ex = static_cast<std::uint16_t>(i % w);
        const auto ey = static_cast<std::uint16_t>(i / w);
        const double th = thresh[i];
        double ref = logs[0][i];
        for (std::size_t k = 0; k + 1 < nf; ++k) {
            const double cur = logs[k][i];
            const double next = logs[k + 1][i];
            if (next == cur) continue;
            const double pol = next > cur ? 1.0 : -1.0;
            const Timestamp tk = seq.timestamps[k];
            const Timestamp tk1 = seq.timestamps[k + 1];
            while ((next - ref) * pol >= th) {
                ref += pol * th;
                const double frac = (ref - cur) / (next - cur);
                Timestamp t = tk + static_cast<Timestamp>(
                                       std::llround(frac * static_cast<double>(tk1 - tk)));
                t = std::clamp(t, tk, tk1);
                events.push_back(
                    Event{t, ex, ey, static_cast<std::int8_t>(pol > 0 ? 1 : -1)});
            }
        }
    }
    // Stable sort keeps pixel-major order for simultaneous events.
    std::stable_sort(events.begin(), events.end(),
                     [](const Event& a, const Event& b) { return a.t < b.t; });

    EventStream out;
    out.width = w;
    out.height = h;
    out.t_start = seq.timestamps.front();
    out.t_end = seq.timestamps.back();
    out.events = std::move(events);
    return out;
}

Frame synthesize_blur(const FrameSequence& seq) {
    if (seq.empty())
        throw std::invalid_argument("synthesize_blur: empty sequence");
    seq.check_valid();
    Frame out(seq.frames[0].width, seq.frames[0].height, 0.0);
    for (const Frame& f : seq.frames)
        for (std::size_t i = 0; i < out.pixel_count(); ++i)
            out.data[i] += f.data[i];
    const double inv = 1.0 / static_cast<double>(seq.size());
    for (double& v : out.data) v *= inv;
    return out;
}

EventStream inject_spatial_noise(const EventStream& s, double ba_rate, double fn_prob,
                                 std::uint64_t rng_seed) {
    if (fn_prob < 0.0 || fn_prob > 1.0)
        throw std::invalid_argument("inject_spatial_noise: fn_prob must be in [0,1]");
    if (ba_rate < 0.0)
        throw std::invalid_argument("inject_spatial_noise: ba_rate must be >= 0");

    std::mt19937_64 rng(rng_seed);

    std::vector<Event> kept;
    kept.reserve(s.events.size());
    if (fn_prob > 0.0) {
        std::bernoulli_distribution drop(fn_prob);
        for (const Event& e : s.events)
            if (!drop(rng)) kept.push_back(e);
    } else {
        kept = s.events;
    }

    std::vector<Event> background;
    const double duration_s = static_cast<double>(s.duration()) * 1e-6;
    const double mean = ba_rate * duration_s * static_cast<double>(s.width) *
                        static_cast<double>(s.height);
    if (mean > 0.0) {
        std::poisson_distribution<long long> count_dist(mean);
        const long long n = count_dist(rng);
        std::uniform_int_distribution<Timestamp> time_dist(s.t_start, s.t_end);
        std::uniform_int_distribution<int> x_dist(0, s.width - 1);
        std::uniform_int_distribution<int> y_dist(0, s.height - 1);
        std::bernoulli_distribution pol_dist(0.5);
        background.reserve(static_cast<std::size_t>(n));
        for (long long i = 0; i < n; ++i) {
            Event e;
            e.t = time_dist(rng);
            e.x = static_cast<std::uint16_t>(x_dist(rng));
            e.y = static_cast<std::uint16_t>(y_dist(rng));
            e.p = pol_dist(rng) ? 1 : -1;
            background.push_back(e);
        }
        std::stable_sort(background.begin(), background.end(),
                         [](const Event& a, const Event& b) { return a.t < b.t; });
    }

    EventStream out;
    out.width = s.width;
    out.height = s.height;
    out.t_start = s.t_start;
    out.t_end = s.t_end;
    out.events.resize(kept.size() + background.size());
    // Real events come first on timestamp ties.
    std::merge(kept.begin(), kept.end(), background.begin(), background.end(),
               out.events.begin(),
               [](const Event& a, const Event& b) { return a.t < b.t; });
    return out;
}

EventStream inject_temporal_jitter(const EventStream& s, double max_bandwidth,
                                   std::uint64_t /*rng_seed*/) {
    if (max_bandwidth <= 0.0)
        throw std::invalid_argument("inject_temporal_jitter: bandwidth must be positive");

    const double spacing_us = 1e6 / max_bandwidth;
    EventStream out;
    out.width = s.width;
    out.height = s.height;
    out.t_start = s.t_start;
    out.events.reserve(s.events.size());

    double serve = -std::numeric_limits<double>::infinity();
    Timestamp last = s.t_end;
    for (const Event& e : s.events) {
        serve = std::max(static_cast<double>(e.t), serve + spacing_us);
        Event served = e;
        served.t = static_cast<Timestamp>(std::llround(serve));
        if (served.t < e.t) served.t = e.t;  // guard rounding
        out.events.push_back(served);
        last = std::max(last, served.t);
    }
    out.t_end = last;
    return out;
}

PlmModel ground_truth_flows(const std::vector<MotionSegment>& motion, int m_count, int k,
                            int width, int height) {
    if (m_count < 1 || k < 1)
        throw std::invalid_argument("ground_truth_flows: m_count and k must be >= 1");
    PlmModel model;
    model.k = k;
    model.flows.reserve(m_count);
    for (int m = 0; m < m_count; ++m) {
        const Vec2 a = scene_displacement(motion, static_cast<double>(m) * k);
        const Vec2 b = scene_displacement(motion, static_cast<double>(m + 1) * k);
        model.flows.emplace_back(width, height, (b.x - a.x) / k, (b.y - a.y) / k);
    }
    return model;
}

}  // namespace evblur
