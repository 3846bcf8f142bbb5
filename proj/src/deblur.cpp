#include "evblur/deblur.hpp"

#include "evblur/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace evblur {

namespace {

void check_frames_model(const std::vector<Frame>& frames, const PlmModel& model,
                        const char* who) {
    model.check_valid();
    if (static_cast<int>(frames.size()) != model.m_count())
        throw std::invalid_argument(std::string(who) + ": frame count must equal the model's interval count");
    for (const Frame& f : frames)
        if (f.width != model.flows[0].width || f.height != model.flows[0].height)
            throw std::invalid_argument(std::string(who) + ": frame and flow dimensions differ");
}

FlowField scaled(const FlowField& f, double s) {
    FlowField out(f.width, f.height);
    for (std::size_t i = 0; i < f.pixel_count(); ++i) {
        out.u[i] = s * f.u[i];
        out.v[i] = s * f.v[i];
    }
    return out;
}

double mean_abs_diff(const Frame& a, const Frame& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.pixel_count(); ++i)
        sum += std::abs(a.data[i] - b.data[i]);
    return sum / static_cast<double>(a.pixel_count());
}

double mean_charbonnier(const Frame& a, const Frame& b, double eps) {
    const double e2 = eps * eps;
    double sum = 0.0;
    for (std::size_t i = 0; i < a.pixel_count(); ++i) {
        const double r = a.data[i] - b.data[i];
        sum += std::sqrt(r * r + e2);
    }
    return sum / static_cast<double>(a.pixel_count());
}

}  // namespace

Frame latent_frame(const std::vector<Frame>& frames, const PlmModel& model, int n) {
    check_frames_model(frames, model, "latent_frame");
    if (n < 0 || n >= model.latent_count())
        throw std::invalid_argument("latent_frame: latent index out of range");
    const int m = n / model.k;
    const double intra = static_cast<double>(n - m * model.k);
    if (intra == 0.0) return frames[m];
    return warp(frames[m], scaled(model.flows[m], intra));
}

Frame reblur(const std::vector<Frame>& frames, const PlmModel& model) {
    check_frames_model(frames, model, "reblur");
    const int n_total = model.latent_count();
    Frame acc(frames[0].width, frames[0].height, 0.0);
    for (int n = 0; n < n_total; ++n) {
        const Frame latent = latent_frame(frames, model, n);
        for (std::size_t i = 0; i < acc.pixel_count(); ++i)
            acc.data[i] += latent.data[i];
    }
    const double inv = 1.0 / static_cast<double>(n_total);
    for (double& v : acc.data) v *= inv;
    return acc;
}

double blur_loss(const Frame& reblurred, const Frame& observed) {
    require_same_size(reblurred, observed, "blur_loss");
    return mean_abs_diff(reblurred, observed);
}

Frame photo_warp(const std::vector<Frame>& frames, const PlmModel& model, int m) {
    check_frames_model(frames, model, "photo_warp");
    if (m < 0 || m > model.m_count() - 2)
        throw std::invalid_argument("photo_warp: interval index out of range");
    return warp(frames[m + 1], scaled(model.flows[m], static_cast<double>(model.k)));
}

double photo_loss(const std::vector<Frame>& frames, const PlmModel& model) {
    check_frames_model(frames, model, "photo_loss");
    const int m_count = model.m_count();
    if (m_count < 2)
        throw std::invalid_argument("photo_loss: at least two frames required");
    double total = 0.0;
    for (int m = 0; m + 1 < m_count; ++m)
        total += mean_abs_diff(photo_warp(frames, model, m), frames[m]);
    return total / static_cast<double>(m_count - 1);
}

double recon_loss(const std::vector<Frame>& frames, const std::vector<Frame>& truth) {
    if (frames.size() != truth.size() || frames.empty())
        throw std::invalid_argument("recon_loss: sequence lengths differ or are empty");
    double total = 0.0;
    for (std::size_t m = 0; m < frames.size(); ++m) {
        require_same_size(frames[m], truth[m], "recon_loss");
        total += mean_abs_diff(frames[m], truth[m]);
    }
    return total / static_cast<double>(frames.size());
}

double total_loss(const std::vector<Frame>& frames, const PlmModel& model,
                  const Frame& observed, const std::vector<Frame>* truth,
                  const LossWeights& weights) {
    const double blur = blur_loss(reblur(frames, model), observed);
    const double photo = model.m_count() >= 2 ? photo_loss(frames, model) : 0.0;
    if (truth != nullptr)
        return recon_loss(frames, *truth) + weights.alpha * blur + weights.beta * photo;
    return weights.gamma * blur + weights.delta * photo;
}

double charbonnier_objective(const std::vector<Frame>& frames, const PlmModel& model,
                             const Frame& observed, const LossWeights& weights,
                             double eps) {
    const Frame reblurred = reblur(frames, model);
    require_same_size(reblurred, observed, "charbonnier_objective");
    double loss = weights.gamma * mean_charbonnier(reblurred, observed, eps);
    const int m_count = model.m_count();
    if (m_count >= 2) {
        double photo = 0.0;
        for (int m = 0; m + 1 < m_count; ++m)
            photo += mean_charbonnier(photo_warp(frames, model, m), frames[m], eps);
        loss += weights.delta * photo / static_cast<double>(m_count - 1);
    }
    return loss;
}

std::vector<Frame> loss_gradient(const std::vector<Frame>& frames, const PlmModel& model,
                                 const Frame& observed, const LossWeights& weights,
                                 double eps) {
    check_frames_model(frames, model, "loss_gradient");
    require_same_size(frames[0], observed, "loss_gradient");
    if (eps <= 0.0)
        throw std::invalid_argument("loss_gradient: eps must be positive");

    const int m_count = model.m_count();
    const int k = model.k;
    const int n_total = model.latent_count();
    const std::size_t npx = frames[0].pixel_count();
    const double e2 = eps * eps;

    std::vector<Frame> grads;
    grads.reserve(m_count);
    for (int m = 0; m < m_count; ++m)
        grads.emplace_back(frames[0].width, frames[0].height, 0.0);

    // Blur path: d/dI_m of gamma * mean rho(reblur - observed).
    if (weights.gamma != 0.0) {
        const Frame reblurred = reblur(frames, model);
        Frame g(frames[0].width, frames[0].height);
        const double scale = weights.gamma / static_cast<double>(npx);
        for (std::size_t i = 0; i < npx; ++i) {
            const double r = reblurred.data[i] - observed.data[i];
            g.data[i] = scale * r / std::sqrt(r * r + e2);
        }
        const double inv_n = 1.0 / static_cast<double>(n_total);
        for (int n = 0; n < n_total; ++n) {
            const int m = n / k;
            const FlowField field = scaled(model.flows[m], static_cast<double>(n - m * k));
            const Frame back = warp_adjoint(field, g);
            for (std::size_t i = 0; i < npx; ++i)
                grads[m].data[i] += inv_n * back.data[i];
        }
    }

    // Photometric path: I_m appears directly in term m and as the warp
    // source in term m-1.
    if (weights.delta != 0.0 && m_count >= 2) {
        const double scale = weights.delta / (static_cast<double>(npx) * (m_count - 1));
        for (int m = 0; m + 1 < m_count; ++m) {
            const FlowField field = scaled(model.flows[m], static_cast<double>(k));
            const Frame warped = warp(frames[m + 1], field);
            Frame h(frames[0].width, frames[0].height);
            for (std::size_t i = 0; i < npx; ++i) {
                const double r = warped.data[i] - frames[m].data[i];
                h.data[i] = scale * r / std::sqrt(r * r + e2);
            }
            for (std::size_t i = 0; i < npx; ++i)
                grads[m].data[i] -= h.data[i];
            const Frame back = warp_adjoint(field, h);
            for (std::size_t i = 0; i < npx; ++i)
                grads[m + 1].data[i] += back.data[i];
        }
    }

    return grads;
}

std::pair<std::vector<Frame>, SolverReport> solve(const Frame& observed,
                                                  const PlmModel& model,
                                                  const SolverConfig& cfg) {
    model.check_valid();
    if (observed.width != model.flows[0].width || observed.height != model.flows[0].height)
        throw std::invalid_argument("solve: observed frame and flow dimensions differ");
    if (cfg.iterations < 1)
        throw std::invalid_argument("solve: iterations must be >= 1");
    if (cfg.step_size <= 0.0)
        throw std::invalid_argument("solve: step size must be positive");
    if (cfg.charbonnier_eps <= 0.0)
        throw std::invalid_argument("solve: charbonnier eps must be positive");

    const int m_count = model.m_count();
    std::vector<Frame> frames(m_count, observed);

    // The objective is per-pixel mean normalized; scale the step by the
    // pixel count so the per-pixel update magnitude is resolution
    // independent.
    const double step = cfg.step_size * static_cast<double>(observed.pixel_count());

    SolverReport report;
    report.loss_trace.reserve(cfg.iterations);
    report.blur_trace.reserve(cfg.iterations);
    report.photo_trace.reserve(cfg.iterations);

    for (int it = 0; it < cfg.iterations; ++it) {
        const std::vector<Frame> grads =
            loss_gradient(frames, model, observed, cfg.weights, cfg.charbonnier_eps);
        for (int m = 0; m < m_count; ++m)
            for (std::size_t i = 0; i < frames[m].pixel_count(); ++i) {
                const double v = frames[m].data[i] - step * grads[m].data[i];
                frames[m].data[i] = std::clamp(v, 0.0, 1.0);
            }

        const double blur = blur_loss(reblur(frames, model), observed);
        const double photo = m_count >= 2 ? photo_loss(frames, model) : 0.0;
        const double total = cfg.weights.gamma * blur + cfg.weights.delta * photo;
        if (!std::isfinite(total))
            throw numeric_error("solve: non-finite loss at iteration " + std::to_string(it));
        report.loss_trace.push_back(total);
        report.blur_trace.push_back(blur);
        report.photo_trace.push_back(photo);
    }
    report.iterations_run = cfg.iterations;
    report.blur_loss_final = report.blur_trace.back();
    report.photo_loss_final = report.photo_trace.back();
    return {std::move(frames), std::move(report)};
}

std::vector<Frame> integrate_baseline(const Frame& observed, const EventStream& s,
                                      double c, int m_count) {
    if (c <= 0.0)
        throw std::invalid_argument("integrate_baseline: threshold must be positive");
    if (m_count < 1)
        throw std::invalid_argument("integrate_baseline: m_count must be >= 1");
    if (observed.width != s.width || observed.height != s.height)
        throw std::invalid_argument("integrate_baseline: frame and sensor dimensions differ");

    const std::size_t npx = observed.pixel_count();

    // Sample times: inclusive linspace over the stream window.
    std::vector<Timestamp> times(m_count);
    for (int m = 0; m < m_count; ++m) {
        times[m] = m_count > 1
                       ? s.t_start + static_cast<Timestamp>(std::llround(
                             static_cast<double>(m) * static_cast<double>(s.duration()) /
                             static_cast<double>(m_count - 1)))
                       : s.t_start;
    }

    // exp(c * cumulative polarity) snapshot at each sample time.
    std::vector<std::vector<double>> expo(m_count, std::vector<double>(npx, 0.0));
    std::vector<double> cum(npx, 0.0);
    std::size_t next_event = 0;
    for (int m = 0; m < m_count; ++m) {
        while (next_event < s.events.size() && s.events[next_event].t <= times[m]) {
            const Event& e = s.events[next_event++];
            cum[static_cast<std::size_t>(e.y) * s.width + e.x] += static_cast<double>(e.p);
        }
        for (std::size_t i = 0; i < npx; ++i) expo[m][i] = std::exp(c * cum[i]);
    }

    std::vector<Frame> frames(m_count, Frame(observed.width, observed.height));
    for (std::size_t i = 0; i < npx; ++i) {
        double mean = 0.0;
        for (int m = 0; m < m_count; ++m) mean += expo[m][i];
        mean /= static_cast<double>(m_count);
        const double offset = observed.data[i] / mean;
        for (int m = 0; m < m_count; ++m)
            frames[m].data[i] = std::clamp(offset * expo[m][i], 0.0, 1.0);
    }
    return frames;
}

}  // namespace evblur
