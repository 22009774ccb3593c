#pragma once

// The coded caching scheme induced by a PDA: placement from stars, one XOR
// broadcast per symbol, and per-user decoding.

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <boost/rational.hpp>
#include <nlohmann/json.hpp>

#include "pda/grid.hpp"

namespace pda::caching {

using Rate = boost::rational<std::int64_t>;
using Bytes = std::vector<std::uint8_t>;

/// (file, subfile)
using SubfileId = std::pair<std::size_t, std::size_t>;

struct Instance {
    std::size_t n_files = 1;
    std::size_t k_users = 0;
    std::size_t f_subfiles = 1;
    std::size_t subfile_size = 32;
    std::vector<std::size_t> demands;
    std::uint64_t seed = 0;

    /// Throws UsageError unless the dimensions match the grid and every
    /// demand is in [0, n_files).
    void check_against(const Grid& g) const;
};

/// Deterministic content of one subfile.
Bytes subfile_content(const Instance& inst, SubfileId id);

/// The whole library, generated once per instance.
class Library {
public:
    Library(const Instance& inst, std::size_t f_subfiles);
    const Bytes& at(SubfileId id) const { return contents_[id.first * f_ + id.second]; }

private:
    std::size_t f_;
    std::vector<Bytes> contents_;
};

struct UserCache {
    std::map<SubfileId, Bytes> subfiles;

    const Bytes* find(SubfileId id) const;
};

using Placement = std::vector<UserCache>;

struct Broadcast {
    Symbol symbol;
    std::vector<SubfileId> terms;
    Bytes payload;
};

struct Transcript {
    Placement placement;
    std::vector<Broadcast> broadcasts;
    std::vector<bool> decoded;
    Rate rate;

    bool decoded_all() const;
    nlohmann::json summary() const;
};

/// User k caches subfile j of every file iff cell (j, k) is a star.
Placement place(const Grid& g, const Instance& inst);

/// One broadcast per symbol present, XOR over the demanded subfiles at its cells.
std::vector<Broadcast> deliver(const Grid& g, const Instance& inst, const Placement& placement);

/// Per-user verdict: true iff every subfile of the demanded file is
/// reconstructed byte-exactly.
std::vector<bool> decode(const Grid& g, const Instance& inst, const Placement& placement,
                         const std::vector<Broadcast>& broadcasts);

/// symbols_used / F in lowest terms.
Rate rate(const Grid& g);

Transcript simulate(const Grid& g, const Instance& inst);

}  // namespace pda::caching
