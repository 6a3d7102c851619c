#pragma once

/* Core domain types: requests, line metadata, access classification and
 * the payload digest scheme shared by the timed models and the oracle. */

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "tdramsim/time.hpp"

namespace tdram {

enum class AccessKind : std::uint8_t { Read, Write };

/// The nine-way classification of a cache access against the target set.
enum class AccessOutcome : std::uint8_t {
    ReadHitClean,
    ReadHitDirty,
    ReadInvalid,
    ReadMissClean,
    ReadMissDirty,
    WriteInvalid,
    WriteMissClean,
    WriteMissDirty,
    WriteHitClean,
    WriteHitDirty,
};

inline constexpr int kOutcomeCount = 10;

inline const char* to_string(AccessOutcome o) {
    switch (o) {
    case AccessOutcome::ReadHitClean:   return "read_hit_clean";
    case AccessOutcome::ReadHitDirty:   return "read_hit_dirty";
    case AccessOutcome::ReadInvalid:    return "read_invalid";
    case AccessOutcome::ReadMissClean:  return "read_miss_clean";
    case AccessOutcome::ReadMissDirty:  return "read_miss_dirty";
    case AccessOutcome::WriteInvalid:   return "write_invalid";
    case AccessOutcome::WriteMissClean: return "write_miss_clean";
    case AccessOutcome::WriteMissDirty: return "write_miss_dirty";
    case AccessOutcome::WriteHitClean:  return "write_hit_clean";
    case AccessOutcome::WriteHitDirty:  return "write_hit_dirty";
    }
    return "?";
}

inline bool is_hit(AccessOutcome o) {
    return o == AccessOutcome::ReadHitClean || o == AccessOutcome::ReadHitDirty ||
           o == AccessOutcome::WriteHitClean || o == AccessOutcome::WriteHitDirty;
}

inline bool is_read(AccessOutcome o) {
    return o == AccessOutcome::ReadHitClean || o == AccessOutcome::ReadHitDirty ||
           o == AccessOutcome::ReadInvalid || o == AccessOutcome::ReadMissClean ||
           o == AccessOutcome::ReadMissDirty;
}

/// Per-set tag and status metadata, with an 8-byte payload surrogate
/// standing in for the 64B line contents.
struct LineState {
    bool valid = false;
    bool dirty = false;
    std::uint64_t tag = 0;
    std::uint64_t payload = 0;
};

/// Unique row of the access-classification table for a (kind, line, tag)
/// triple. Invalid lines classify as Read/WriteInvalid regardless of tag.
inline AccessOutcome classify_access(AccessKind kind, const LineState& line,
                                     std::uint64_t req_tag) {
    const bool rd = kind == AccessKind::Read;
    if (!line.valid)
        return rd ? AccessOutcome::ReadInvalid : AccessOutcome::WriteInvalid;
    if (line.tag == req_tag) {
        if (rd)
            return line.dirty ? AccessOutcome::ReadHitDirty : AccessOutcome::ReadHitClean;
        return line.dirty ? AccessOutcome::WriteHitDirty : AccessOutcome::WriteHitClean;
    }
    if (rd)
        return line.dirty ? AccessOutcome::ReadMissDirty : AccessOutcome::ReadMissClean;
    return line.dirty ? AccessOutcome::WriteMissDirty : AccessOutcome::WriteMissClean;
}

/// One demand from the LLC: a read miss or a dirty writeback.
struct MemRequest {
    AccessKind kind = AccessKind::Read;
    std::uint64_t addr = 0;   // byte address, line aligned
    Tick arrival = 0;         // presentation time at the controller pins
    std::uint64_t id = 0;     // strictly increasing in trace order
    std::uint64_t payload = 0; // write data surrogate (writes only)
};

inline constexpr std::uint64_t kLineBytes = 64;

inline std::uint64_t line_of(std::uint64_t addr) { return addr / kLineBytes; }

/// splitmix64 finalizer; the basis of all payload surrogates.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Backing-store contents before any write touches a line.
inline std::uint64_t initial_payload(std::uint64_t line_addr) {
    return mix64(line_addr * 2 + 1);
}

/// Payload installed by write request `id` to `line_addr`.
inline std::uint64_t write_payload(std::uint64_t line_addr, std::uint64_t write_id) {
    return mix64(mix64(line_addr) ^ (write_id * 2 + 0x517cc1b727220a95ULL));
}

/// Deterministic 64B expansion of a payload surrogate (full-payload mode).
inline std::array<std::uint8_t, 64> expand_payload(std::uint64_t digest) {
    std::array<std::uint8_t, 64> out{};
    for (int w = 0; w < 8; ++w) {
        std::uint64_t v = mix64(digest + static_cast<std::uint64_t>(w));
        for (int b = 0; b < 8; ++b)
            out[static_cast<std::size_t>(w * 8 + b)] =
                static_cast<std::uint8_t>(v >> (8 * b));
    }
    return out;
}

/// log2(address_space / cache_capacity) for a direct-mapped cache.
/// Both inputs must be powers of two with address_space >= cache_capacity.
inline int tag_bits(std::uint64_t cache_capacity, std::uint64_t address_space) {
    auto pow2 = [](std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; };
    if (!pow2(cache_capacity) || !pow2(address_space))
        throw std::invalid_argument("tag_bits: capacities must be powers of two");
    if (address_space < cache_capacity)
        throw std::invalid_argument("tag_bits: address space smaller than cache");
    int bits = 0;
    for (std::uint64_t r = address_space / cache_capacity; r > 1; r >>= 1)
        ++bits;
    return bits;
}

enum class DeviceKind : std::uint8_t { Tdram, TdramNoProbe, Ideal, CascadeLake, Alloy };

inline const char* to_string(DeviceKind k) {
    switch (k) {
    case DeviceKind::Tdram:        return "tdram";
    case DeviceKind::TdramNoProbe: return "tdram-np";
    case DeviceKind::Ideal:        return "ideal";
    case DeviceKind::CascadeLake:  return "cascade-lake";
    case DeviceKind::Alloy:        return "alloy";
    }
    return "?";
}

inline DeviceKind device_kind_from_string(const std::string& s) {
    if (s == "tdram") return DeviceKind::Tdram;
    if (s == "tdram-np" || s == "tdram-noprobe") return DeviceKind::TdramNoProbe;
    if (s == "ideal") return DeviceKind::Ideal;
    if (s == "cascade-lake" || s == "cascade") return DeviceKind::CascadeLake;
    if (s == "alloy") return DeviceKind::Alloy;
    throw std::invalid_argument("unknown device kind: " + s);
}

/// Error thrown on strict-mode timing violations and protocol bugs.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace tdram
