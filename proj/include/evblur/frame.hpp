#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace evblur {

// Timestamps are integer microseconds.
using Timestamp = std::int64_t;

namespace detail {
inline std::size_t checked_raster_size(int w, int h) {
    if (w <= 0 || h <= 0)
        throw std::invalid_argument("raster dimensions must be positive");
    return static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
}
}  // namespace detail

// Single-channel raster, row-major, double precision. Intensity frames live
// in [0,1]; event-derived rasters (counts, time surfaces) reuse the type with
// their own ranges.
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Frame() = default;
    Frame(int w, int h, double fill = 0.0)
        : width(w), height(h), data(detail::checked_raster_size(w, h), fill) {}

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    std::size_t pixel_count() const { return data.size(); }
    bool same_size(const Frame& o) const { return width == o.width && height == o.height; }
};

inline void require_same_size(const Frame& a, const Frame& b, const char* who) {
    if (!a.same_size(b))
        throw std::invalid_argument(std::string(who) + ": frame dimensions differ");
}

// Ordered list of equally sized frames with strictly increasing timestamps.
struct FrameSequence {
    std::vector<Frame> frames;
    std::vector<Timestamp> timestamps;

    void check_valid() const {
        if (frames.size() != timestamps.size())
            throw std::invalid_argument("FrameSequence: one timestamp per frame required");
        for (std::size_t i = 0; i < frames.size(); ++i) {
            if (!frames[i].same_size(frames[0]))
                throw std::invalid_argument("FrameSequence: frame dimensions differ");
            if (i > 0 && timestamps[i] <= timestamps[i - 1])
                throw std::invalid_argument("FrameSequence: timestamps must be strictly increasing");
        }
    }

    bool empty() const { return frames.empty(); }
    std::size_t size() const { return frames.size(); }
};

}  // namespace evblur
