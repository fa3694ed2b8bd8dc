#pragma once

#include <cstddef>
#include <set>
#include <string>

namespace af2db {

/// A set of symbols: argument names on the graph side, tuple ids on the table side.
using NameSet = std::set<std::string>;

/// Orders sets by cardinality first, then lexicographically by their sorted members.
struct BySizeThenLex {
    bool operator()(const NameSet& lhs, const NameSet& rhs) const {
        if (lhs.size() != rhs.size())
            return lhs.size() < rhs.size();
        return lhs < rhs;
    }
};

/// A family of sets (extensions or repairs) in canonical order.
using Family = std::set<NameSet, BySizeThenLex>;

inline constexpr std::size_t kDefaultEnumerationCap = 20;
/// Hard ceiling for any cap override; the solvers keep O(2^n) bitmaps.
inline constexpr std::size_t kMaxEnumerationCap = 30;

/// `{a,b}`; the empty set prints as `{}`.
std::string format_set(const NameSet& set);

/// One set per line, in family order, each line terminated by '\n'.
std::string format_family(const Family& family);

/// Parses `{a,b}` / `{}` back into a set. Throws ParseError on malformed text.
NameSet parse_set(const std::string& text);

} // namespace af2db
