#include "evblur/motion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evblur {

void PlmModel::check_valid() const {
    if (flows.empty())
        throw std::invalid_argument("PlmModel: at least one interval flow required");
    if (k < 1)
        throw std::invalid_argument("PlmModel: interval length k must be >= 1");
    for (const FlowField& f : flows)
        if (!f.same_size(flows[0]))
            throw std::invalid_argument("PlmModel: flow dimensions differ");
}

FlowField lm_field(const FlowField& v, int n) {
    if (n < 0)
        throw std::invalid_argument("lm_field: n must be non-negative");
    FlowField out(v.width, v.height);
    const double s = static_cast<double>(n);
    for (std::size_t i = 0; i < v.pixel_count(); ++i) {
        out.u[i] = s * v.u[i];
        out.v[i] = s * v.v[i];
    }
    return out;
}

FlowField plm_field(const PlmModel& model, int n) {
    model.check_valid();
    if (n < 0 || n >= model.latent_count())
        throw std::invalid_argument("plm_field: latent index out of range");

    const int m = n / model.k;
    const double intra = static_cast<double>(n - m * model.k);
    const double kk = static_cast<double>(model.k);

    FlowField acc(model.flows[0].width, model.flows[0].height);
    for (int j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < acc.pixel_count(); ++i) {
            acc.u[i] += model.flows[j].u[i];
            acc.v[i] += model.flows[j].v[i];
        }
    }
    FlowField out(acc.width, acc.height);
    const FlowField& vm = model.flows[m];
    for (std::size_t i = 0; i < acc.pixel_count(); ++i) {
        out.u[i] = intra * vm.u[i] + kk * acc.u[i];
        out.v[i] = intra * vm.v[i] + kk * acc.v[i];
    }
    return out;
}

Frame warp(const Frame& img, const FlowField& field) {
    if (img.width != field.width || img.height != field.height)
        throw std::invalid_argument("warp: image and field dimensions differ");

    const int w = img.width, h = img.height;
    Frame out(w, h);
    std::size_t i = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x, ++i) {
            double sx = x + field.u[i];
            double sy = y + field.v[i];
            sx = std::clamp(sx, 0.0, static_cast<double>(w - 1));
            sy = std::clamp(sy, 0.0, static_cast<double>(h - 1));
            const int x0 = static_cast<int>(sx);
            const int y0 = static_cast<int>(sy);
            const int x1 = std::min(x0 + 1, w - 1);
            const int y1 = std::min(y0 + 1, h - 1);
            const double fx = sx - x0;
            const double fy = sy - y0;
            const double top = (1.0 - fx) * img.at(x0, y0) + fx * img.at(x1, y0);
            const double bot = (1.0 - fx) * img.at(x0, y1) + fx * img.at(x1, y1);
            out.data[i] = (1.0 - fy) * top + fy * bot;
        }
    }
    return out;
}

Frame warp_adjoint(const FlowField& field, const Frame& g) {
    if (g.width != field.width || g.height != field.height)
        throw std::invalid_argument("warp_adjoint: dimensions differ");

    const int w = g.width, h = g.height;
    Frame out(w, h, 0.0);
    std::size_t i = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x, ++i) {
            double sx = x + field.u[i];
            double sy = y + field.v[i];
            sx = std::clamp(sx, 0.0, static_cast<double>(w - 1));
            sy = std::clamp(sy, 0.0, static_cast<double>(h - 1));
            const int x0 = static_cast<int>(sx);
            const int y0 = static_cast<int>(sy);
            const int x1 = std::min(x0 + 1, w - 1);
            const int y1 = std::min(y0 + 1, h - 1);
            const double fx = sx - x0;
            const double fy = sy - y0;
            const double gi = g.data[i];
            out.at(x0, y0) += (1.0 - fx) * (1.0 - fy) * gi;
            out.at(x1, y0) += fx * (1.0 - fy) * gi;
            out.at(x0, y1) += (1.0 - fx) * fy * gi;
            out.at(x1, y1) += fx * fy * gi;
        }
    }
    return out;
}

namespace {

// 3x3 binomial smoothing with clamped borders.
Frame binomial3(const Frame& f) {
    const int w = f.width, h = f.height;
    Frame tmp(w, h), out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const int xm = std::max(x - 1, 0), xp = std::min(x + 1, w - 1);
            tmp.at(x, y) = 0.25 * (f.at(xm, y) + 2.0 * f.at(x, y) + f.at(xp, y));
        }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const int ym = std::max(y - 1, 0), yp = std::min(y + 1, h - 1);
            out.at(x, y) = 0.25 * (tmp.at(x, ym) + 2.0 * tmp.at(x, y) + tmp.at(x, yp));
        }
    return out;
}

}  // namespace

FlowField estimate_flow(const Frame& prev_counts, const Frame& next_counts,
                        int window_radius, double eig_threshold) {
    require_same_size(prev_counts, next_counts, "estimate_flow");
    if (window_radius < 1)
        throw std::invalid_argument("estimate_flow: window radius must be >= 1");

    const int w = prev_counts.width, h = prev_counts.height;
    const Frame a = binomial3(prev_counts);
    const Frame b = binomial3(next_counts);

    // Spatial gradients on the mean image, temporal difference between the two.
    Frame ix(w, h), iy(w, h), it(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const int xm = std::max(x - 1, 0), xp = std::min(x + 1, w - 1);
            const int ym = std::max(y - 1, 0), yp = std::min(y + 1, h - 1);
            ix.at(x, y) = 0.25 * (a.at(xp, y) - a.at(xm, y) + b.at(xp, y) - b.at(xm, y));
            iy.at(x, y) = 0.25 * (a.at(x, yp) - a.at(x, ym) + b.at(x, yp) - b.at(x, ym));
            it.at(x, y) = b.at(x, y) - a.at(x, y);
        }

    FlowField out(w, h);
    const int r = window_radius;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double sxx = 0, sxy = 0, syy = 0, sxt = 0, syt = 0;
            const int y0 = std::max(y - r, 0), y1 = std::min(y + r, h - 1);
            const int x0 = std::max(x - r, 0), x1 = std::min(x + r, w - 1);
            for (int yy = y0; yy <= y1; ++yy)
                for (int xx = x0; xx <= x1; ++xx) {
                    const double gx = ix.at(xx, yy);
                    const double gy = iy.at(xx, yy);
                    const double gt = it.at(xx, yy);
                    sxx += gx * gx;
                    sxy += gx * gy;
                    syy += gy * gy;
                    sxt += gx * gt;
                    syt += gy * gt;
                }
            const double tr = sxx + syy;
            const double det_part = std::sqrt(std::max(0.0, (sxx - syy) * (sxx - syy) + 4.0 * sxy * sxy));
            const double eig_min = 0.5 * (tr - det_part);
            if (eig_min < eig_threshold) continue;  // leaves (0,0)
            const double det = sxx * syy - sxy * sxy;
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            out.u[i] = (-syy * sxt + sxy * syt) / det;
            out.v[i] = (sxy * sxt - sxx * syt) / det;
        }
    }
    return out;
}

std::vector<FlowField> flows_from_events(const EventStream& s, int m_count,
                                         int window_radius) {
    const std::vector<EventStream> intervals = partition_intervals(s, m_count);
    std::vector<FlowField> flows;
    flows.reserve(intervals.size());
    for (const EventStream& interval : intervals) {
        const std::vector<EventStream> halves = partition_intervals(interval, 2);
        const Frame prev = count_image(halves[0], false);
        const Frame next = count_image(halves[1], false);
        FlowField f = estimate_flow(prev, next, window_radius);
        // Lucas-Kanade reports the half-interval motion of the event cloud;
        // the sampling-convention displacement over the full interval is its
        // negation scaled by two.
        for (std::size_t i = 0; i < f.pixel_count(); ++i) {
            f.u[i] *= -2.0;
            f.v[i] *= -2.0;
        }
        flows.push_back(std::move(f));
    }
    return flows;
}

}  // namespace evblur
