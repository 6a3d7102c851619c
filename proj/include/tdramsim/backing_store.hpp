#pragma once

/* DDR5-like backing store: per-channel FIFO service at a fixed rate plus
 * a constant device latency and an optional interconnect link latency
 * (applied once, round-trip, per access). Channels interleave by line.
 * Per-channel FIFO admission keeps same-address accesses ordered, so a
 * read admitted after a writeback to the same line always returns the
 * written data. */

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

#include "tdramsim/config.hpp"
#include "tdramsim/event_queue.hpp"
#include "tdramsim/time.hpp"
#include "tdramsim/types.hpp"

namespace tdram {

class BackingStore {
public:
    using ReadCallback = std::function<void(std::uint64_t payload, Tick arrival)>;
    using WriteCallback = std::function<void(Tick committed)>;

    BackingStore(EventQueue& eq, const SimConfig& cfg)
        : eq_(eq),
          channels_(static_cast<std::size_t>(cfg.backing_channels)),
          queue_capacity_(cfg.backing_queue),
          service_(ns_to_ticks(cfg.backing_service_ns)),
          device_latency_(ns_to_ticks(cfg.backing_latency_ns)),
          link_latency_(ns_to_ticks(cfg.link_latency_ns)) {}

    void set_release_hook(std::function<void()> hook) { release_hook_ = std::move(hook); }

    bool can_accept_read() const { return reads_queued_ < queue_capacity_; }
    bool can_accept_write() const { return writes_queued_ < queue_capacity_; }

    /// Enqueue a demand read. The callback fires when the line arrives
    /// back at the cache controller (service + device latency + link).
    void read(std::uint64_t addr, ReadCallback cb) {
        if (!can_accept_read()) throw SimError("backing read queue overflow");
        ++reads_queued_;
        ++reads_total_;
        Channel& ch = channel_for(addr);
        ch.jobs.push_back(Job{false, addr, 0, eq_.now(), std::move(cb), {}});
        pump(ch);
    }

    /// Enqueue a writeback. `data_ready` is when the payload physically
    /// exists at the controller; service starts no earlier.
    void write(std::uint64_t addr, std::uint64_t payload, Tick data_ready,
               WriteCallback cb = nullptr) {
        if (!can_accept_write()) throw SimError("backing write queue overflow");
        ++writes_queued_;
        ++writes_total_;
        Channel& ch = channel_for(addr);
        ch.jobs.push_back(Job{true, addr, payload, std::max(eq_.now(), data_ready),
                              {}, std::move(cb)});
        pump(ch);
    }

    bool idle() const {
        for (const auto& ch : channels_)
            if (ch.busy || !ch.jobs.empty()) return false;
        return true;
    }

    std::uint64_t payload_of(std::uint64_t addr) const {
        auto it = memory_.find(line_of(addr));
        return it == memory_.end() ? initial_payload(line_of(addr)) : it->second;
    }

    std::uint64_t reads_total() const { return reads_total_; }
    std::uint64_t writes_total() const { return writes_total_; }
    std::uint64_t bytes_total() const { return (reads_total_ + writes_total_) * kLineBytes; }

    /// Ordered view of every line ever written (for image assembly).
    std::map<std::uint64_t, std::uint64_t> written_lines() const {
        return {memory_.begin(), memory_.end()};
    }

private:
    struct Job {
        bool is_write;
        std::uint64_t addr;
        std::uint64_t payload;
        Tick min_start;
        ReadCallback read_cb;
        WriteCallback write_cb;
    };
    struct Channel {
        std::deque<Job> jobs;
        bool busy = false;
        Tick free_at = 0;
    };

    Channel& channel_for(std::uint64_t addr) {
        return channels_[static_cast<std::size_t>(line_of(addr)) % channels_.size()];
    }

    void pump(Channel& ch) {
        if (ch.busy || ch.jobs.empty()) return;
        ch.busy = true;
        const Job& j = ch.jobs.front();
        Tick start = std::max({eq_.now(), ch.free_at, j.min_start});
        Tick finish = start + service_;
        ch.free_at = finish;
        eq_.schedule(finish, [this, &ch] { complete(ch); });
    }

    void complete(Channel& ch) {
        Job j = std::move(ch.jobs.front());
        ch.jobs.pop_front();
        ch.busy = false;
        const Tick now = eq_.now();
        if (j.is_write) {
            memory_[line_of(j.addr)] = j.payload;
            --writes_queued_;
            if (j.write_cb) j.write_cb(now);
        } else {
            std::uint64_t data = payload_of(j.addr);
            --reads_queued_;
            Tick arrival = now + device_latency_ + link_latency_;
            auto cb = std::move(j.read_cb);
            eq_.schedule(arrival, [cb = std::move(cb), data, arrival] { cb(data, arrival); });
        }
        if (release_hook_) release_hook_();
        pump(ch);
    }

    EventQueue& eq_;
    std::vector<Channel> channels_;
    int queue_capacity_;
    Tick service_, device_latency_, link_latency_;
    int reads_queued_ = 0, writes_queued_ = 0;
    std::uint64_t reads_total_ = 0, writes_total_ = 0;
    std::unordered_map<std::uint64_t, std::uint64_t> memory_; // line -> payload
    std::function<void()> release_hook_;
};

} // namespace tdram
