#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "evblur/events.hpp"
#include "evblur/frame.hpp"
#include "evblur/motion.hpp"

namespace evblur {

// Balancing weights: alpha/beta scale the supervised blur/photometric terms,
// gamma/delta the self-supervised ones.
struct LossWeights {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    double delta = 1.0;
};

struct SolverConfig {
    int iterations = 500;
    double step_size = 0.25;
    double charbonnier_eps = 1e-6;
    LossWeights weights;
    std::uint64_t rng_seed = 0;
};

struct SolverReport {
    std::vector<double> loss_trace;   // total per iteration, exact L1
    std::vector<double> blur_trace;   // blur component per iteration
    std::vector<double> photo_trace;  // photometric component per iteration
    double blur_loss_final = 0.0;
    double photo_loss_final = 0.0;
    int iterations_run = 0;
};

// Latent image at step n, reconstructed by warping the owning interval's
// frame with the intra-interval displacement (n - m*k) * v_m.
Frame latent_frame(const std::vector<Frame>& frames, const PlmModel& model, int n);

// Average of all m_count*k latent frames: the re-rendered blurry image.
Frame reblur(const std::vector<Frame>& frames, const PlmModel& model);

// Mean per-pixel absolute difference between the reblurred and observed image.
double blur_loss(const Frame& reblurred, const Frame& observed);

// Frame m+1 propagated back to index m with the interval-m flow: warp(I_{m+1}, k*v_m).
Frame photo_warp(const std::vector<Frame>& frames, const PlmModel& model, int m);

// Mean over m = 0..M-2 of the mean absolute difference between the
// propagated frame and I_m. Requires at least two frames.
double photo_loss(const std::vector<Frame>& frames, const PlmModel& model);

// Mean over frames of the mean absolute difference to ground truth.
double recon_loss(const std::vector<Frame>& frames, const std::vector<Frame>& truth);

// Weighted objective: recon + alpha*blur + beta*photo with ground truth,
// gamma*blur + delta*photo without. The photometric term is skipped for
// single-frame models.
double total_loss(const std::vector<Frame>& frames, const PlmModel& model,
                  const Frame& observed, const std::vector<Frame>* truth,
                  const LossWeights& weights);

// Self-supervised objective with each |.| replaced by sqrt(.^2 + eps^2);
// this is what the solver differentiates.
double charbonnier_objective(const std::vector<Frame>& frames, const PlmModel& model,
                             const Frame& observed, const LossWeights& weights, double eps);

// Analytic gradient of charbonnier_objective with respect to each frame,
// including the warp adjoints of both the reblur and photometric paths.
std::vector<Frame> loss_gradient(const std::vector<Frame>& frames, const PlmModel& model,
                                 const Frame& observed, const LossWeights& weights,
                                 double eps = 1e-6);

// Projected gradient descent on gamma*blur + delta*photo starting from
// frames all equal to the observed image; frames are clamped to [0,1] after
// every step. Deterministic for fixed inputs. Throws numeric_error if the
// loss turns non-finite.
std::pair<std::vector<Frame>, SolverReport> solve(const Frame& observed,
                                                  const PlmModel& model,
                                                  const SolverConfig& cfg);

// Event-integration baseline: per-pixel cumulative polarity sums scaled by c
// give relative log intensity at m_count evenly spaced times; a per-pixel
// offset is solved so the average of the exponentiated frames matches the
// observed blurry image, then frames are clamped to [0,1].
std::vector<Frame> integrate_baseline(const Frame& observed, const EventStream& s,
                                      double c, int m_count);

}  // namespace evblur
