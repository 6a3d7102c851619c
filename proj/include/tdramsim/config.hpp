#pragma once

/* Simulation configuration: device geometry, timing parameters (by their
 * datasheet names), controller sizing, backing-store and energy knobs.
 * Flat key = value config files round-trip through load/save. */

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tdramsim/time.hpp"
#include "tdramsim/types.hpp"

namespace tdram {

inline bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline int log2_exact(std::uint64_t v) {
    int b = 0;
    while ((1ULL << b) < v) ++b;
    return b;
}

/// Channel/bank/row/column geometry. Banks are the logical (paired) banks
/// the controller schedules; the device internally drives two physical
/// banks per logical bank.
struct Geometry {
    int channels = 8;
    int banks = 4;      // logical bank pairs per channel
    std::uint64_t rows = 65536;
    std::uint64_t cols = 64;    // lines per row
    std::uint64_t address_space_bytes = 128ULL << 30;

    std::uint64_t lines_per_bank() const { return rows * cols; }
    std::uint64_t cache_lines() const {
        return static_cast<std::uint64_t>(channels) * banks * rows * cols;
    }
    std::uint64_t cache_bytes() const { return cache_lines() * kLineBytes; }

    int channel_bits() const { return log2_exact(static_cast<std::uint64_t>(channels)); }
    int bank_bits() const { return log2_exact(static_cast<std::uint64_t>(banks)); }
    int col_bits() const { return log2_exact(cols); }
    int row_bits() const { return log2_exact(rows); }
    int set_bits() const { return channel_bits() + bank_bits() + col_bits() + row_bits(); }
    int tag_width() const { return tag_bits(cache_bytes(), address_space_bytes); }
};

/// Device timing in nanoseconds. Data-bank values apply to every design;
/// the *_TAG / tHM values only exist on the tag-enhanced device.
struct TimingParams {
    double tBURST = 2.0;   // one 32B half-line burst
    double tRCD = 12.0;
    double tRCD_WR = 6.0;
    double tCCD_L = 2.0;
    double tRP = 14.0;
    double tRAS = 28.0;
    double tCL = 18.0;
    double tCWL = 7.0;
    double tRRD = 2.0;
    double tFAW = 16.0;
    double tRL_core = 2.0;
    // tag mats
    double tHM = 7.5;
    double tHM_int = 2.5;
    double tRCD_TAG = 7.5;
    double tRTP_TAG = 2.5;  // accepted for schema completeness; spacing is
    double tRRD_TAG = 2.0;  // governed by tRC_TAG / tRRD_TAG in this model
    double tWR_TAG = 1.0;
    double tRTW_TAG = 1.0;
    double tRC_TAG = 12.0;
    // refresh (not in the device datasheet; defaults chosen per HBM class)
    double tREFI = 3900.0;
    double tRFC = 160.0;
    // one command occupies the CA bus for this long
    double tCMD = 1.0;
    // round-trip controller latency, split half inbound / half outbound
    double ctrl_latency_rt = 20.0;

    double tRC() const { return tRAS + tRP; }
};

/// Relative per-event energy weights. Defaults make DQ movement the
/// dominant component of a typical run; absolute calibration is out of
/// scope and the totals are meaningful only across designs on one trace.
struct EnergyCoefficients {
    double per_activate = 15.0;
    double per_column_op = 6.0;
    double per_dq_byte = 1.2;
    double per_hm_beat = 0.08;
    double per_tag_mat_access = 1.0;
    double background_per_ns = 3.0;
};

enum class PayloadCheck : std::uint8_t { Digest, Full };

struct SimConfig {
    Geometry geom;
    TimingParams t;
    EnergyCoefficients energy;

    int read_buffer = 64;
    int write_buffer = 64;
    int writeback_buffer = 64;
    int flush_buffer_capacity = 16;
    int write_high_watermark = 48;
    int write_low_watermark = 16;
    int forced_drain_group = 4;

    bool probing = true;
    bool strict_timing = true;
    bool count_drains_useful = true;
    PayloadCheck payload_check = PayloadCheck::Digest;

    int backing_channels = 2;
    int backing_queue = 64;
    double backing_latency_ns = 50.0;
    double backing_service_ns = 2.0;
    double link_latency_ns = 0.0;

    std::uint64_t seed = 1;

    /// Field-level validation. Empty result means the config is usable.
    std::vector<std::string> validate() const {
        std::vector<std::string> errs;
        auto req = [&](bool ok, const std::string& msg) {
            if (!ok) errs.push_back(msg);
        };
        req(geom.channels > 0 && is_pow2(static_cast<std::uint64_t>(geom.channels)),
            "channels must be a power of two");
        req(geom.banks > 0 && is_pow2(static_cast<std::uint64_t>(geom.banks)),
            "banks must be a power of two");
        req(is_pow2(geom.rows), "rows must be a power of two");
        req(is_pow2(geom.cols), "cols must be a power of two");
        req(is_pow2(geom.address_space_bytes), "address_space_bytes must be a power of two");
        if (errs.empty()) {
            req(geom.address_space_bytes >= geom.cache_bytes(),
                "address space must be at least the cache capacity");
        }
        // Tag access plus internal hit/miss detection must complete within
        // tRCD so the device can gate the column decode on the result.
        req(t.tRCD_TAG + t.tHM_int <= t.tRCD,
            "hiding condition violated: tRCD_TAG + tHM_int must be <= tRCD");
        // The internal read moving a dirty line to the flush buffer must
        // finish before the incoming write data lands in the sense amps.
        req(t.tRL_core <= t.tRCD_WR + t.tCWL + t.tBURST - (t.tRCD_TAG + t.tHM_int),
            "tRL_core too large: internal read cannot finish before write data");
        req(t.tHM >= t.tHM_int, "tHM must cover tHM_int");
        req(t.tRAS > 0 && t.tRP > 0 && t.tRCD > 0 && t.tBURST > 0, "core timings must be positive");
        req(t.tREFI > t.tRFC, "tREFI must exceed tRFC");
        req(read_buffer > 0 && write_buffer > 0 && writeback_buffer > 0,
            "buffer capacities must be positive");
        req(flush_buffer_capacity > 0, "flush buffer capacity must be positive");
        req(write_low_watermark < write_high_watermark &&
                write_high_watermark <= write_buffer,
            "write watermarks must satisfy low < high <= capacity");
        req(forced_drain_group > 0, "forced drain group must be positive");
        req(backing_channels > 0 && is_pow2(static_cast<std::uint64_t>(backing_channels)),
            "backing channels must be a power of two");
        req(backing_queue > 0, "backing queue depth must be positive");
        req(backing_latency_ns >= 0 && backing_service_ns > 0 && link_latency_ns >= 0,
            "backing latencies must be nonnegative");
        req(energy.per_activate >= 0 && energy.per_column_op >= 0 &&
                energy.per_dq_byte >= 0 && energy.per_hm_beat >= 0 &&
                energy.per_tag_mat_access >= 0 && energy.background_per_ns >= 0,
            "energy coefficients must be nonnegative");
        return errs;
    }

    void validate_or_throw() const {
        auto errs = validate();
        if (!errs.empty()) {
            std::string msg = "config validation failed:";
            for (auto& e : errs) msg += "\n  - " + e;
            throw std::invalid_argument(msg);
        }
    }
};

/// Scaled-down geometry for trace-level experiments: a 1 MiB cache over a
/// 16 MiB address space, same timing as the full-size device.
inline SimConfig desk_config() {
    SimConfig c;
    c.geom.channels = 2;
    c.geom.banks = 4;
    c.geom.rows = 64;
    c.geom.cols = 32;
    c.geom.address_space_bytes = 16ULL << 20;
    return c;
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct KvBinding {
    std::string key;
    enum class Type { U64, I32, F64, Bool, Str } type;
    void* ptr;
};

inline std::vector<KvBinding> config_bindings(SimConfig& c, std::string& payload_mode) {
    using T = KvBinding::Type;
    return {
        {"channels", T::I32, &c.geom.channels},
        {"banks_per_channel", T::I32, &c.geom.banks},
        {"rows", T::U64, &c.geom.rows},
        {"cols", T::U64, &c.geom.cols},
        {"address_space_bytes", T::U64, &c.geom.address_space_bytes},
        {"tBURST", T::F64, &c.t.tBURST},
        {"tRCD", T::F64, &c.t.tRCD},
        {"tRCD_WR", T::F64, &c.t.tRCD_WR},
        {"tCCD_L", T::F64, &c.t.tCCD_L},
        {"tRP", T::F64, &c.t.tRP},
        {"tRAS", T::F64, &c.t.tRAS},
        {"tCL", T::F64, &c.t.tCL},
        {"tCWL", T::F64, &c.t.tCWL},
        {"tRRD", T::F64, &c.t.tRRD},
        {"tFAW", T::F64, &c.t.tFAW},
        {"tRL_core", T::F64, &c.t.tRL_core},
        {"tHM", T::F64, &c.t.tHM},
        {"tHM_int", T::F64, &c.t.tHM_int},
        {"tRCD_TAG", T::F64, &c.t.tRCD_TAG},
        {"tRTP_TAG", T::F64, &c.t.tRTP_TAG},
        {"tRRD_TAG", T::F64, &c.t.tRRD_TAG},
        {"tWR_TAG", T::F64, &c.t.tWR_TAG},
        {"tRTW_TAG", T::F64, &c.t.tRTW_TAG},
        {"tRC_TAG", T::F64, &c.t.tRC_TAG},
        {"tREFI", T::F64, &c.t.tREFI},
        {"tRFC", T::F64, &c.t.tRFC},
        {"tCMD", T::F64, &c.t.tCMD},
        {"ctrl_latency_rt", T::F64, &c.t.ctrl_latency_rt},
        {"read_buffer", T::I32, &c.read_buffer},
        {"write_buffer", T::I32, &c.write_buffer},
        {"writeback_buffer", T::I32, &c.writeback_buffer},
        {"flush_buffer", T::I32, &c.flush_buffer_capacity},
        {"write_high_watermark", T::I32, &c.write_high_watermark},
        {"write_low_watermark", T::I32, &c.write_low_watermark},
        {"forced_drain_group", T::I32, &c.forced_drain_group},
        {"probing", T::Bool, &c.probing},
        {"strict", T::Bool, &c.strict_timing},
        {"count_drains_useful", T::Bool, &c.count_drains_useful},
        {"payload_check", T::Str, &payload_mode},
        {"backing_channels", T::I32, &c.backing_channels},
        {"backing_queue", T::I32, &c.backing_queue},
        {"backing_latency", T::F64, &c.backing_latency_ns},
        {"backing_service", T::F64, &c.backing_service_ns},
        {"link_latency", T::F64, &c.link_latency_ns},
        {"seed", T::U64, &c.seed},
        {"e_activate", T::F64, &c.energy.per_activate},
        {"e_column_op", T::F64, &c.energy.per_column_op},
        {"e_dq_byte", T::F64, &c.energy.per_dq_byte},
        {"e_hm_beat", T::F64, &c.energy.per_hm_beat},
        {"e_tag_mat", T::F64, &c.energy.per_tag_mat_access},
        {"e_background_ns", T::F64, &c.energy.background_per_ns},
    };
}

} // namespace detail

/// Parse a flat key = value document. Unknown keys and malformed lines are
/// reported with their line number.
inline SimConfig parse_config(std::istream& in) {
    SimConfig c;
    std::string payload_mode = "digest";
    auto bindings = detail::config_bindings(c, payload_mode);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = line;
        auto hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = detail::trim(s);
        if (s.empty()) continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        std::string key = detail::trim(s.substr(0, eq));
        std::string val = detail::trim(s.substr(eq + 1));
        bool matched = false;
        for (auto& b : bindings) {
            if (b.key != key) continue;
            matched = true;
            try {
                using T = detail::KvBinding::Type;
                switch (b.type) {
                case T::U64: *static_cast<std::uint64_t*>(b.ptr) = std::stoull(val); break;
                case T::I32: *static_cast<int*>(b.ptr) = std::stoi(val); break;
                case T::F64: *static_cast<double*>(b.ptr) = std::stod(val); break;
                case T::Bool:
                    if (val == "on" || val == "true" || val == "1")
                        *static_cast<bool*>(b.ptr) = true;
                    else if (val == "off" || val == "false" || val == "0")
                        *static_cast<bool*>(b.ptr) = false;
                    else
                        throw std::invalid_argument("expected on/off");
                    break;
                case T::Str: *static_cast<std::string*>(b.ptr) = val; break;
                }
            } catch (const std::exception&) {
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": bad value for " + key + ": " + val);
            }
            break;
        }
        if (!matched)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": unknown key " + key);
    }
    if (payload_mode == "digest")
        c.payload_check = PayloadCheck::Digest;
    else if (payload_mode == "full")
        c.payload_check = PayloadCheck::Full;
    else
        throw std::invalid_argument("payload_check must be digest or full");
    return c;
}

inline SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    return parse_config(in);
}

inline void save_config(const SimConfig& cfg, std::ostream& out) {
    SimConfig tmp = cfg; // bindings need mutable pointers
    std::string payload_mode = cfg.payload_check == PayloadCheck::Full ? "full" : "digest";
    for (auto& b : detail::config_bindings(tmp, payload_mode)) {
        using T = detail::KvBinding::Type;
        out << b.key << " = ";
        switch (b.type) {
        case T::U64: out << *static_cast<std::uint64_t*>(b.ptr); break;
        case T::I32: out << *static_cast<int*>(b.ptr); break;
        case T::F64: {
            std::ostringstream os;
            os << *static_cast<double*>(b.ptr);
            out << os.str();
            break;
        }
        case T::Bool: out << (*static_cast<bool*>(b.ptr) ? "on" : "off"); break;
        case T::Str: out << *static_cast<std::string*>(b.ptr); break;
        }
        out << "\n";
    }
}

} // namespace tdram
