#pragma once

/* Sparse tag/metadata store: set index -> LineState. Only touched sets
 * are materialized, so full-size geometries cost memory proportional to
 * the trace footprint. */

#include <cstdint>
#include <map>
#include <unordered_map>

#include "tdramsim/types.hpp"

namespace tdram {

class TagStore {
public:
    LineState& line(std::uint64_t set) { return lines_[set]; }

    LineState peek(std::uint64_t set) const {
        auto it = lines_.find(set);
        return it == lines_.end() ? LineState{} : it->second;
    }

    /// Deterministically ordered snapshot for image comparison.
    std::map<std::uint64_t, LineState> snapshot() const {
        return {lines_.begin(), lines_.end()};
    }

private:
    std::unordered_map<std::uint64_t, LineState> lines_;
};

} // namespace tdram
