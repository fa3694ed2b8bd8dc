#pragma once

#include "af2db/argumentation.hpp"
#include "af2db/relational.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace af2db::translate {

/// An unordered attacked pair {first, second} with first < second. Mutual
/// attacks collapse into one conflict; self-attacks never become conflicts.
struct Conflict {
    std::string id; // "r<k>", k counted from 1 in canonical pair order
    std::string first;
    std::string second;

    friend bool operator==(const Conflict&, const Conflict&) = default;
};

/// One conflict per attacked pair of distinct arguments, ordered by (first, second).
std::vector<Conflict> canonical_conflicts(const af::ArgumentationFramework& af);

/// Colors indexed like the conflict sequence they were computed for.
struct EdgeColoring {
    std::vector<std::size_t> color_of;

    /// Number of colors in use (colors are dense: 0 .. count-1).
    std::size_t color_count() const;
};

/// Proper edge coloring of the conflict graph with at most degree(af) + 1 colors
/// (Misra-Gries). Colors are renumbered by first use along the conflict order.
EdgeColoring edge_color(const std::vector<Conflict>& conflicts, const af::ArgumentationFramework& af);

/// Conflicts sharing an endpoint have distinct colors, and the colors are dense.
bool is_proper(const std::vector<Conflict>& conflicts, const EdgeColoring& coloring);

/// Misra-Gries on a plain loop-free simple graph; colors are in [0, max degree].
std::vector<std::size_t> misra_gries(std::size_t vertex_count,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& edges);

enum class Target { Conflict, Defense, AfDb, Range };

std::string_view to_string(Target target);
Target parse_target(std::string_view tag);

/// Where a column came from.
struct ColumnOrigin {
    std::string attribute;
    std::string role;                   // conflict | name | defense-u | defense-v | self-u | self-v
    std::vector<std::string> conflicts; // conflict columns: the conflict ids stored in the column
    std::string argument;               // defense columns: the argument the column is about
};

/// A built database together with the data needed to audit it.
struct Translation {
    Target target = Target::Conflict;
    rdb::Instance instance;
    std::vector<Conflict> conflicts; // over the framework with self-attackers removed
    EdgeColoring coloring;           // empty when the conflict columns are not compressed
    bool compressed = false;
    std::string self_symbol; // s in u_s/v_s; empty when the target has no such columns
    std::vector<ColumnOrigin> columns;
};

/// Name columns `x<k>` (one per conflict r<k>) or, when compressed, `x_c<k>`
/// (one per color), then `n`. Self-attacking arguments are dropped.
Translation build_conflict_db(const af::ArgumentationFramework& af, bool compress = true);
/// Compressed form with a caller-supplied coloring of
/// canonical_conflicts(strip_self_attackers(af)); throws Error if it is not proper.
Translation build_conflict_db(const af::ArgumentationFramework& af, const EdgeColoring& coloring);

/// Columns u_a, v_a per argument with inclusion dependencies u_a <= v_a.
Translation build_defense_db(const af::ArgumentationFramework& af);

/// Compressed conflict columns, n, defense columns and u_s/v_s with u_s <= v_s.
Translation build_af_db(const af::ArgumentationFramework& af);
Translation build_af_db(const af::ArgumentationFramework& af, const EdgeColoring& coloring);

/// The AF database without u_a columns and without defense dependencies.
Translation build_range_db(const af::ArgumentationFramework& af);
Translation build_range_db(const af::ArgumentationFramework& af, const EdgeColoring& coloring);

Translation build(const af::ArgumentationFramework& af, Target target, bool compress = true);

/// v_x for every argument x, then n.
std::vector<std::string> range_attrs(const af::ArgumentationFramework& af);

/// A symbol s outside the argument names, used for the u_s/v_s columns.
std::string self_attack_symbol(const af::ArgumentationFramework& af);

/// Column naming helpers shared with tests and tooling.
std::string u_column(std::string_view symbol);
std::string v_column(std::string_view symbol);
inline constexpr std::string_view kNameColumn = "n";
inline constexpr std::string_view kAbsent = "0";

/// Coloring, conflict ids and column provenance as JSON.
nlohmann::json manifest(const Translation& translation);

} // namespace af2db::translate
