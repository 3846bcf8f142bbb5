#pragma once

#include <vector>

#include "evblur/events.hpp"
#include "evblur/frame.hpp"

namespace evblur {

// Dense per-pixel displacement field. The convention everywhere in this
// library is backward sampling: warp(img, f)(x) = img(x + f(x)).
struct FlowField {
    int width = 0;
    int height = 0;
    std::vector<double> u;
    std::vector<double> v;

    FlowField() = default;
    FlowField(int w, int h, double fu = 0.0, double fv = 0.0)
        : width(w),
          height(h),
          u(detail::checked_raster_size(w, h), fu),
          v(u.size(), fv) {}

    bool same_size(const FlowField& o) const { return width == o.width && height == o.height; }
    std::size_t pixel_count() const { return u.size(); }
};

// Piece-wise linear motion: one unit flow per interval, each interval
// spanning k latent steps. Latent index n belongs to interval m = n / k; the
// dense field at n is (n - m*k)*flows[m] + k*sum_{j<m} flows[j].
struct PlmModel {
    std::vector<FlowField> flows;
    int k = 1;

    int m_count() const { return static_cast<int>(flows.size()); }
    int latent_count() const { return m_count() * k; }
    void check_valid() const;
};

// Linear-motion field after n unit steps: n * v componentwise.
FlowField lm_field(const FlowField& v, int n);

// Dense piece-wise linear field at latent step n (0 <= n < m_count*k).
FlowField plm_field(const PlmModel& model, int n);

// Backward bilinear warp with clamp-to-edge sampling.
Frame warp(const Frame& img, const FlowField& field);

// Adjoint of warp in its image argument: scatters g through the same
// bilinear taps. Needed by the solver gradients.
Frame warp_adjoint(const FlowField& field, const Frame& g);

// Dense Lucas-Kanade on smoothed count images. Returns the per-pixel
// displacement of the brightness pattern from prev to next; pixels whose
// structure tensor has a small eigenvalue below eig_threshold get (0,0).
FlowField estimate_flow(const Frame& prev_counts, const Frame& next_counts,
                        int window_radius, double eig_threshold = 1e-3);

// Per-interval displacement fields estimated from events: the stream is
// split into m_count intervals, each interval's first and second halves are
// turned into unsigned count images, and Lucas-Kanade runs between them.
// Fields are expressed in the library's sampling convention and scaled to
// displacement per interval; divide by the sub-step count when assembling a
// PlmModel.
std::vector<FlowField> flows_from_events(const EventStream& s, int m_count,
                                         int window_radius);

}  // namespace evblur
