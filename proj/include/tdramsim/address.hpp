#pragma once

/* Line-address decode: Ro-Co-Ra-Ba-Ch slicing with the channel in the
 * lowest interleave bits, the set index covering the whole in-cache
 * coordinate, and the tag taken from the bits above it. */

#include <cstdint>
#include <stdexcept>

#include "tdramsim/config.hpp"
#include "tdramsim/types.hpp"

namespace tdram {

struct DecodedAddress {
    std::uint32_t channel = 0;
    std::uint32_t bank = 0;
    std::uint32_t rank = 0; // single rank; kept for mapping completeness
    std::uint64_t row = 0;
    std::uint64_t col = 0;
    std::uint64_t set = 0;  // direct-mapped set index
    std::uint64_t tag = 0;
};

inline DecodedAddress decode_address(std::uint64_t addr, const Geometry& g) {
    if (addr >= g.address_space_bytes)
        throw std::out_of_range("address outside configured address space");
    std::uint64_t line = addr / kLineBytes;
    DecodedAddress d;
    std::uint64_t v = line;
    d.channel = static_cast<std::uint32_t>(v & ((1ULL << g.channel_bits()) - 1));
    v >>= g.channel_bits();
    d.bank = static_cast<std::uint32_t>(v & ((1ULL << g.bank_bits()) - 1));
    v >>= g.bank_bits();
    d.rank = 0;
    d.col = v & ((1ULL << g.col_bits()) - 1);
    v >>= g.col_bits();
    d.row = v & ((1ULL << g.row_bits()) - 1);
    v >>= g.row_bits();
    d.tag = v;
    d.set = line & ((1ULL << g.set_bits()) - 1);
    return d;
}

inline std::uint64_t encode_address(const DecodedAddress& d, const Geometry& g) {
    std::uint64_t line = d.tag;
    line = (line << g.row_bits()) | d.row;
    line = (line << g.col_bits()) | d.col;
    line = (line << g.bank_bits()) | d.bank;
    line = (line << g.channel_bits()) | d.channel;
    return line * kLineBytes;
}

} // namespace tdram
