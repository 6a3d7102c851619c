#pragma once

/* Simulation time base: integer picoseconds. All configured timing values
 * are multiples of 0.5 ns, so picosecond ticks are exact. */

#include <cmath>
#include <cstdint>

namespace tdram {

using Tick = std::int64_t;

inline constexpr Tick kTicksPerNs = 1000;

inline Tick ns_to_ticks(double ns) {
    return static_cast<Tick>(std::llround(ns * static_cast<double>(kTicksPerNs)));
}

inline constexpr double ticks_to_ns(Tick t) {
    return static_cast<double>(t) / static_cast<double>(kTicksPerNs);
}

} // namespace tdram
