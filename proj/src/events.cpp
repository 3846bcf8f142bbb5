#include "evblur/events.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evblur {

void EventStream::check_valid() const {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("EventStream: sensor dimensions must be positive");
    if (t_end < t_start)
        throw std::invalid_argument("EventStream: t_end before t_start");
    Timestamp prev = t_start;
    for (const Event& e : events) {
        if (e.t < prev)
            throw std::invalid_argument("EventStream: events not sorted by timestamp");
        if (e.t > t_end)
            throw std::invalid_argument("EventStream: event after t_end");
        if (e.x >= width || e.y >= height)
            throw std::invalid_argument("EventStream: event outside sensor raster");
        if (e.p != 1 && e.p != -1)
            throw std::invalid_argument("EventStream: polarity must be +1 or -1");
        prev = e.t;
    }
}

namespace {

// First event with t >= key.
std::vector<Event>::const_iterator lower_by_time(const std::vector<Event>& ev, Timestamp key) {
    return std::lower_bound(ev.begin(), ev.end(), key,
                            [](const Event& e, Timestamp t) { return e.t < t; });
}

}  // namespace

EventStream window(const EventStream& s, Timestamp t0, Timestamp t1) {
    if (t0 < s.t_start || t1 < t0 || t1 > s.t_end + 1)
        throw std::out_of_range("window: [t0,t1) outside the stream bounds");
    EventStream out;
    out.width = s.width;
    out.height = s.height;
    out.t_start = t0;
    out.t_end = std::min(t1, s.t_end);
    out.events.assign(lower_by_time(s.events, t0), lower_by_time(s.events, t1));
    return out;
}

std::vector<EventStream> partition_intervals(const EventStream& s, int m_count) {
    if (m_count < 1)
        throw std::invalid_argument("partition_intervals: m_count must be >= 1");

    const Timestamp dur = s.duration();
    auto boundary = [&](int i) {
        return s.t_start + static_cast<Timestamp>(
            static_cast<__int128>(dur) * i / m_count);
    };

    std::vector<EventStream> parts;
    parts.reserve(m_count);
    auto lo = s.events.begin();
    for (int m = 0; m < m_count; ++m) {
        const Timestamp b0 = boundary(m);
        const Timestamp b1 = boundary(m + 1);
        auto hi = (m == m_count - 1)
                      ? s.events.end()
                      : std::lower_bound(lo, s.events.end(), b1,
                                         [](const Event& e, Timestamp t) { return e.t < t; });
        EventStream part;
        part.width = s.width;
        part.height = s.height;
        part.t_start = b0;
        part.t_end = b1;
        part.events.assign(lo, hi);
        parts.push_back(std::move(part));
        lo = hi;
    }
    return parts;
}

Frame time_surface(const EventStream& s, Timestamp t_ref, std::optional<double> decay_tau_us) {
    if (t_ref < s.t_start)
        throw std::invalid_argument("time_surface: t_ref before t_start");
    if (decay_tau_us && *decay_tau_us <= 0.0)
        throw std::invalid_argument("time_surface: decay constant must be positive");

    const Timestamp none = s.t_start - 1;
    std::vector<Timestamp> last(static_cast<std::size_t>(s.width) * s.height, none);
    for (const Event& e : s.events) {
        if (e.t > t_ref) break;
        last[static_cast<std::size_t>(e.y) * s.width + e.x] = e.t;
    }

    Frame out(s.width, s.height, 0.0);
    const double denom = static_cast<double>(t_ref - s.t_start);
    for (std::size_t i = 0; i < last.size(); ++i) {
        if (last[i] == none) continue;
        if (decay_tau_us) {
            out.data[i] = std::exp(-static_cast<double>(t_ref - last[i]) / *decay_tau_us);
        } else {
            out.data[i] = denom > 0.0
                              ? static_cast<double>(last[i] - s.t_start) / denom
                              : 1.0;
        }
    }
    return out;
}

Frame count_image(const EventStream& s, bool signed_counts) {
    Frame out(s.width, s.height, 0.0);
    for (const Event& e : s.events) {
        const std::size_t i = static_cast<std::size_t>(e.y) * s.width + e.x;
        out.data[i] += signed_counts ? static_cast<double>(e.p) : 1.0;
    }
    return out;
}

}  // namespace evblur
