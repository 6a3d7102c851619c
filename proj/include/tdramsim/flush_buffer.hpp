#pragma once

/* Device-side flush buffer: dirty lines displaced by write misses, held
 * until an opportunistic or explicit drain returns them to the
 * controller. At most one entry per address. Occupancy is tracked
 * time-weighted for the sensitivity experiments. */

#include <cstdint>
#include <deque>
#include <unordered_map>

#include "tdramsim/time.hpp"
#include "tdramsim/types.hpp"

namespace tdram {

struct FlushBufferEntry {
    std::uint64_t addr = 0;     // line-aligned byte address
    std::uint64_t tag = 0;
    std::uint64_t payload = 0;
    Tick inserted_at = 0;
};

class FlushBuffer {
public:
    explicit FlushBuffer(int capacity = 16) : capacity_(capacity) {}

    int capacity() const { return capacity_; }
    int size() const { return static_cast<int>(entries_.size()); }
    bool empty() const { return entries_.empty(); }
    bool full() const { return size() >= capacity_; }
    bool contains(std::uint64_t addr) const { return by_addr_.count(addr) != 0; }

    const FlushBufferEntry* find(std::uint64_t addr) const {
        auto it = by_addr_.find(addr);
        if (it == by_addr_.end()) return nullptr;
        return &entries_[index_of(it->second)];
    }

    void insert(const FlushBufferEntry& e, Tick now) {
        if (full()) throw SimError("flush buffer insert while full");
        if (contains(e.addr)) throw SimError("flush buffer holds duplicate address");
        note_size(now);
        entries_.push_back(e);
        by_addr_[e.addr] = next_key_++;
        ++inserted_;
        if (size() > max_occupancy_) max_occupancy_ = size();
    }

    FlushBufferEntry pop_oldest(Tick now) {
        if (empty()) throw SimError("flush buffer pop on empty buffer");
        note_size(now);
        FlushBufferEntry e = entries_.front();
        entries_.pop_front();
        by_addr_.erase(e.addr);
        base_key_++;
        return e;
    }

    /// Remove a superseded entry (a newer write to the same address).
    bool remove(std::uint64_t addr, Tick now) {
        auto it = by_addr_.find(addr);
        if (it == by_addr_.end()) return false;
        note_size(now);
        entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(index_of(it->second)));
        rebuild_keys();
        return true;
    }

    std::uint64_t inserted() const { return inserted_; }
    int max_occupancy() const { return max_occupancy_; }

    /// Time-weighted mean occupancy over [0, now].
    double avg_occupancy(Tick now) const {
        if (now <= 0) return 0.0;
        double integral = occupancy_integral_ +
                          static_cast<double>(size()) * static_cast<double>(now - last_change_);
        return integral / static_cast<double>(now);
    }

private:
    std::size_t index_of(std::uint64_t key) const {
        return static_cast<std::size_t>(key - base_key_);
    }

    void rebuild_keys() {
        by_addr_.clear();
        base_key_ = 0;
        next_key_ = 0;
        for (auto& e : entries_) by_addr_[e.addr] = next_key_++;
    }

    void note_size(Tick now) {
        occupancy_integral_ +=
            static_cast<double>(size()) * static_cast<double>(now - last_change_);
        last_change_ = now;
    }

    int capacity_;
    std::deque<FlushBufferEntry> entries_; // oldest first
    std::unordered_map<std::uint64_t, std::uint64_t> by_addr_; // addr -> key
    std::uint64_t base_key_ = 0, next_key_ = 0;
    std::uint64_t inserted_ = 0;
    int max_occupancy_ = 0;
    double occupancy_integral_ = 0.0;
    Tick last_change_ = 0;
};

} // namespace tdram
