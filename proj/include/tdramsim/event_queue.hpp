#pragma once

/* Deterministic discrete-event queue. Events fire in (time, seq) order
 * where seq is assigned at schedule time, so same-tick events run in the
 * order they were scheduled and replays are bit-identical. */

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "tdramsim/time.hpp"
#include "tdramsim/types.hpp"

namespace tdram {

class EventQueue {
public:
    Tick now() const { return now_; }
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }

    void schedule(Tick t, std::function<void()> fn) {
        if (t < now_)
            throw SimError("event scheduled in the past: t=" + std::to_string(t) +
                           " now=" + std::to_string(now_));
        heap_.push(Node{t, next_seq_++, std::move(fn)});
    }

    /// Run the next event. Returns false when the queue is empty.
    bool advance() {
        if (heap_.empty()) return false;
        Node n = heap_.top();
        heap_.pop();
        now_ = n.time;
        n.fn();
        return true;
    }

    /// Drain events while `keep_going` holds (checked before each event).
    template <typename Pred>
    void run_while(Pred keep_going) {
        while (!heap_.empty() && keep_going()) {
            if (!advance()) break;
        }
    }

    void run_all() {
        while (advance()) {}
    }

private:
    struct Node {
        Tick time;
        std::uint64_t seq;
        std::function<void()> fn;
    };
    struct Later {
        bool operator()(const Node& a, const Node& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Node, std::vector<Node>, Later> heap_;
    Tick now_ = 0;
    std::uint64_t next_seq_ = 0;
};

} // namespace tdram
