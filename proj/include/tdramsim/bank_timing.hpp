#pragma once

/* Bank-level timing ledgers for one channel. Close-page policy with
 * auto-precharge: a standalone precharge command does not exist, so the
 * row cycle folds into activate-to-activate spacing (tRC = tRAS + tRP).
 * Tag mats keep their own, faster ledger so probes and main commands can
 * be checked independently of the data banks. */

#include <cstdint>
#include <deque>
#include <vector>

#include "tdramsim/config.hpp"
#include "tdramsim/time.hpp"
#include "tdramsim/types.hpp"

namespace tdram {

/// Per-bank activation bookkeeping used by earliest_activate.
struct BankState {
    Tick last_act = -1;          // most recent activate (row cycle anchor)
    Tick last_col_issue = -1;    // most recent column command issue
    bool ever_used = false;

    void note_activate(Tick t) {
        last_act = t;
        last_col_issue = t;
        ever_used = true;
    }
};

struct TagBankState {
    Tick last_access = -1;       // probe or main command tag activation
    Tick last_main_access = -1;  // main commands only (probe-conflict audit)
};

class ChannelTiming {
public:
    ChannelTiming() = default;
    ChannelTiming(const TimingParams& t, int banks) { reset(t, banks); }

    void reset(const TimingParams& t, int banks) {
        banks_.assign(static_cast<std::size_t>(banks), BankState{});
        tag_banks_.assign(static_cast<std::size_t>(banks), TagBankState{});
        act_window_.clear();
        last_act_any_ = -1;
        refresh_block_until_ = 0;
        trc_ = ns_to_ticks(t.tRC());
        trrd_ = ns_to_ticks(t.tRRD);
        tfaw_ = ns_to_ticks(t.tFAW);
        tccd_ = ns_to_ticks(t.tCCD_L);
        trc_tag_ = ns_to_ticks(t.tRC_TAG);
        trrd_tag_ = ns_to_ticks(t.tRRD_TAG);
        last_tag_any_ = -1;
    }

    /// Earliest time >= now an activate-class command (every main command
    /// under close-page) may issue to `bank`: max over tRC to the same
    /// bank, tRRD to any bank, the four-activate tFAW window, tCCD_L
    /// against the previous column op, and any refresh block.
    Tick earliest_activate(int bank, Tick now) const {
        Tick t = now;
        const BankState& b = banks_[static_cast<std::size_t>(bank)];
        if (b.last_act >= 0 && b.last_act + trc_ > t) t = b.last_act + trc_;
        if (last_act_any_ >= 0 && last_act_any_ + trrd_ > t) t = last_act_any_ + trrd_;
        if (act_window_.size() >= 4) {
            Tick fourth_back = act_window_[act_window_.size() - 4];
            if (fourth_back + tfaw_ > t) t = fourth_back + tfaw_;
        }
        if (last_col_any_ >= 0 && last_col_any_ + tccd_ > t) t = last_col_any_ + tccd_;
        if (refresh_block_until_ > t) t = refresh_block_until_;
        return t;
    }

    void record_activate(int bank, Tick t, bool strict) {
        if (strict && t < earliest_activate(bank, t))
            throw SimError("bank timing violation: activate at " + std::to_string(t));
        banks_[static_cast<std::size_t>(bank)].note_activate(t);
        last_act_any_ = t;
        last_col_any_ = t;
        act_window_.push_back(t);
        if (act_window_.size() > 8) act_window_.pop_front();
    }

    /// Earliest tag-mat access (probe or lockstep activation by a main
    /// command): tRC_TAG per tag bank, tRRD_TAG across the channel.
    Tick earliest_tag_access(int bank, Tick now) const {
        Tick t = now;
        const TagBankState& b = tag_banks_[static_cast<std::size_t>(bank)];
        if (b.last_access >= 0 && b.last_access + trc_tag_ > t) t = b.last_access + trc_tag_;
        if (last_tag_any_ >= 0 && last_tag_any_ + trrd_tag_ > t) t = last_tag_any_ + trrd_tag_;
        if (refresh_block_until_ > t) t = refresh_block_until_;
        return t;
    }

    /// Same computation ignoring probe-originated accesses: used to tell
    /// whether a main command was delayed solely by a probe.
    Tick earliest_tag_access_main_only(int bank, Tick now) const {
        Tick t = now;
        const TagBankState& b = tag_banks_[static_cast<std::size_t>(bank)];
        if (b.last_main_access >= 0 && b.last_main_access + trc_tag_ > t)
            t = b.last_main_access + trc_tag_;
        if (refresh_block_until_ > t) t = refresh_block_until_;
        return t;
    }

    void record_tag_access(int bank, Tick t, bool from_probe) {
        TagBankState& b = tag_banks_[static_cast<std::size_t>(bank)];
        b.last_access = t;
        if (!from_probe) b.last_main_access = t;
        last_tag_any_ = t;
    }

    /// Latest row-cycle completion across banks; refresh waits for it.
    Tick busy_horizon() const {
        Tick h = 0;
        for (const auto& b : banks_)
            if (b.last_act >= 0 && b.last_act + trc_ > h) h = b.last_act + trc_;
        return h;
    }

    void block_for_refresh(Tick until) {
        if (until > refresh_block_until_) refresh_block_until_ = until;
    }
    Tick refresh_block_until() const { return refresh_block_until_; }

    int banks() const { return static_cast<int>(banks_.size()); }

private:
    std::vector<BankState> banks_;
    std::vector<TagBankState> tag_banks_;
    std::deque<Tick> act_window_; // recent activates, oldest first
    Tick last_act_any_ = -1;
    Tick last_col_any_ = -1;
    Tick last_tag_any_ = -1;
    Tick refresh_block_until_ = 0;
    Tick trc_ = 0, trrd_ = 0, tfaw_ = 0, tccd_ = 0;
    Tick trc_tag_ = 0, trrd_tag_ = 0;
};

} // namespace tdram
