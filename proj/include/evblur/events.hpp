#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "evblur/frame.hpp"

namespace evblur {

// One polarity spike: timestamp (us), pixel location, sign of the
// log-intensity change.
struct Event {
    Timestamp t = 0;
    std::uint16_t x = 0;
    std::uint16_t y = 0;
    std::int8_t p = 1;  // +1 or -1
};

inline bool operator==(const Event& a, const Event& b) {
    return a.t == b.t && a.x == b.x && a.y == b.y && a.p == b.p;
}

// Time-sorted event batch over a fixed sensor and exposure window.
// Invariants: events sorted by t (stable for ties), every event inside
// [t_start, t_end] and inside the sensor raster.
struct EventStream {
    std::vector<Event> events;
    int width = 0;
    int height = 0;
    Timestamp t_start = 0;
    Timestamp t_end = 0;

    void check_valid() const;

    bool empty() const { return events.empty(); }
    std::size_t size() const { return events.size(); }
    Timestamp duration() const { return t_end - t_start; }
};

// Sub-stream with t in [t0, t1). t1 may be t_end + 1 so the closing
// timestamp can be captured; anything outside that is a range error.
// The result keeps the sensor size and gets bounds [t0, min(t1, t_end)].
EventStream window(const EventStream& s, Timestamp t0, Timestamp t1);

// Splits [t_start, t_end] into m_count equal sub-windows. Windows are
// half-open except the last, which is closed on the right, so every event
// lands in exactly one part.
std::vector<EventStream> partition_intervals(const EventStream& s, int m_count);

// Recency image of the last event at or before t_ref. Without decay the
// value is the last event time normalized over [t_start, t_ref]; with a
// decay constant tau (us) it is exp(-(t_ref - t_last)/tau). Pixels that
// never fired are 0.
Frame time_surface(const EventStream& s, Timestamp t_ref,
                   std::optional<double> decay_tau_us = std::nullopt);

// Per-pixel event count, or polarity sum when signed_counts is set.
Frame count_image(const EventStream& s, bool signed_counts);

}  // namespace evblur
