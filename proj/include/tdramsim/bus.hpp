#pragma once

/* Per-bus occupancy ledger over half-open tick intervals. Reservations
 * never overlap in a correct schedule; strict mode aborts on the first
 * overlap, audit mode counts them. Old intervals are pruned behind a
 * sliding horizon to bound memory on long runs. */

#include <cstdint>
#include <map>
#include <string>

#include "tdramsim/time.hpp"
#include "tdramsim/types.hpp"

namespace tdram {

enum class BusKind : std::uint8_t { CA, DQ, HM };

inline const char* to_string(BusKind b) {
    switch (b) {
    case BusKind::CA: return "CA";
    case BusKind::DQ: return "DQ";
    case BusKind::HM: return "HM";
    }
    return "?";
}

class BusLedger {
public:
    BusLedger() = default;
    BusLedger(BusKind kind, int channel, bool strict)
        : kind_(kind), channel_(channel), strict_(strict) {}

    bool is_free(Tick start, Tick end) const {
        if (start >= end) return true;
        auto it = intervals_.upper_bound(start);
        if (it != intervals_.begin()) {
            auto prev = std::prev(it);
            if (prev->second > start) return false;
        }
        return it == intervals_.end() || it->first >= end;
    }

    /// Earliest start >= earliest such that [start, start + len) is free.
    Tick first_free(Tick earliest, Tick len) const {
        Tick t = earliest;
        auto it = intervals_.upper_bound(t);
        if (it != intervals_.begin()) {
            auto prev = std::prev(it);
            if (prev->second > t) t = prev->second;
        }
        while (it != intervals_.end() && it->first < t + len) {
            t = it->second;
            ++it;
        }
        return t;
    }

    /// Record occupancy. Returns false (and counts) on overlap; strict
    /// mode throws instead, since an overlap is a scheduler bug.
    bool reserve(Tick start, Tick end) {
        if (start >= end)
            throw SimError("bus reservation must be a nonempty interval");
        ++reservations_;
        busy_ticks_ += end - start;
        if (!is_free(start, end)) {
            ++violations_;
            if (strict_)
                throw SimError(std::string("bus overlap on ") + to_string(kind_) +
                               " channel " + std::to_string(channel_) + " at [" +
                               std::to_string(start) + "," + std::to_string(end) + ")");
            return false;
        }
        intervals_.emplace(start, end);
        prune(start);
        return true;
    }

    std::uint64_t violations() const { return violations_; }
    std::uint64_t reservations() const { return reservations_; }
    Tick busy_ticks() const { return busy_ticks_; }

private:
    void prune(Tick now) {
        // Keep a generous history window; reservations are near-present.
        const Tick horizon = now - 1000 * kTicksPerNs;
        while (!intervals_.empty()) {
            auto it = intervals_.begin();
            if (it->second >= horizon) break;
            intervals_.erase(it);
        }
    }

    BusKind kind_ = BusKind::CA;
    int channel_ = 0;
    bool strict_ = true;
    std::map<Tick, Tick> intervals_; // start -> end
    std::uint64_t violations_ = 0;
    std::uint64_t reservations_ = 0;
    Tick busy_ticks_ = 0;
};

} // namespace tdram
