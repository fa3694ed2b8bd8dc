#pragma once

// Bitmask helpers shared by the exhaustive solvers. Element i of a universe of
// size n is bit i of a Mask; a family over that universe is a membership bitmap
// indexed by mask.

#include "af2db/error.hpp"
#include "af2db/name_set.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace af2db::detail {

using Mask = std::uint64_t;

inline Mask bit(std::size_t i) { return Mask{1} << i; }

inline void require_within_cap(std::size_t size, std::size_t cap) {
    if (cap > kMaxEnumerationCap)
        throw Error("enumeration cap " + std::to_string(cap) + " is above the hard limit " +
                    std::to_string(kMaxEnumerationCap));
    if (size > cap)
        throw CapExceeded(size, cap);
}

/// Members of `in` that have no strict superset in `in`. Superset-closure DP,
/// O(n 2^n).
inline std::vector<bool> maximal_members(const std::vector<bool>& in, std::size_t n) {
    const std::size_t total = std::size_t{1} << n;
    std::vector<bool> covered(in); // covered[S]: some member is a superset of S
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t s = total; s-- > 0;)
            if (!(s & bit(i)) && covered[s | bit(i)])
                covered[s] = true;

    std::vector<bool> out(total, false);
    for (std::size_t s = 0; s < total; ++s) {
        if (!in[s])
            continue;
        bool dominated = false;
        for (std::size_t i = 0; i < n && !dominated; ++i)
            dominated = !(s & bit(i)) && covered[s | bit(i)];
        out[s] = !dominated;
    }
    return out;
}

inline NameSet to_names(Mask mask, const std::vector<std::string>& universe) {
    NameSet out;
    for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
        if (mask & 1)
            out.insert(universe[i]);
    return out;
}

inline Family to_family(const std::vector<bool>& members, const std::vector<std::string>& universe) {
    Family out;
    for (std::size_t s = 0; s < members.size(); ++s)
        if (members[s])
            out.insert(to_names(s, universe));
    return out;
}

} // namespace af2db::detail
