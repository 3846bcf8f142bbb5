#pragma once

#include <cstdint>
#include <vector>

#include "evblur/events.hpp"
#include "evblur/frame.hpp"
#include "evblur/motion.hpp"

namespace evblur {

enum class Pattern { checker, ramp, texture };

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// One leg of a piece-wise linear motion schedule. Velocity is the per-frame
// sampling displacement in pixels: frame j samples the base pattern at
// x + disp(j), matching the warp convention. The last segment extends past
// its nominal duration if the schedule runs out.
struct MotionSegment {
    double vx = 0.0;
    double vy = 0.0;
    int frames = 0;
};

struct SimConfig {
    double contrast = 0.2;         // log-intensity threshold c
    double threshold_sigma = 0.0;  // per-pixel threshold std dev
    double log_eps = 1e-3;
    std::uint64_t rng_seed = 0;
};

// Sampling displacement of frame `frame_index` relative to frame 0.
Vec2 scene_displacement(const std::vector<MotionSegment>& motion, double frame_index);

// Renders n_frames by translating a procedural base pattern along the
// schedule; sub-pixel positions are bilinearly sampled with clamped borders.
FrameSequence generate_scene(Pattern pattern, const std::vector<MotionSegment>& motion,
                             int n_frames, int width, int height,
                             Timestamp frame_dt_us = 1000, int checker_cell = 8);

// ESIM-style event simulation: per-pixel log intensity is interpolated
// linearly between frames and one event fires per threshold crossing at the
// interpolated time. Per-pixel thresholds are drawn once as
// c + N(0, threshold_sigma^2), clamped to >= 0.01.
EventStream simulate_events(const FrameSequence& seq, const SimConfig& cfg);

// Per-pixel arithmetic mean of all frames.
Frame synthesize_blur(const FrameSequence& seq);

// Spatial-domain sensor noise: real events are dropped independently with
// probability fn_prob and background activity is added as a homogeneous
// process with ba_rate events/pixel/second, uniform over pixels and the
// stream window, random polarity.
EventStream inject_spatial_noise(const EventStream& s, double ba_rate, double fn_prob,
                                 std::uint64_t rng_seed);

// Read-out bandwidth model: a FIFO serves at most max_bandwidth events per
// second, so each output timestamp is max(own t, previous output + 1/rate).
// Count and (x,y,p) order are untouched. The seed is reserved for future
// stochastic variants; the current model is deterministic.
EventStream inject_temporal_jitter(const EventStream& s, double max_bandwidth,
                                   std::uint64_t rng_seed);

// Per-interval unit flows (per sub-step, constant fields) implied by a
// schedule: interval m covers scene frames [m*k, (m+1)*k).
PlmModel ground_truth_flows(const std::vector<MotionSegment>& motion, int m_count, int k,
                            int width, int height);

}  // namespace evblur
