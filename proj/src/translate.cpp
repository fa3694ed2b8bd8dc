#include "af2db/translate.hpp"

#include "af2db/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace af2db::translate {

namespace {

using af::ArgumentationFramework;
using rdb::Dependency;

const std::string kName(kNameColumn);
const std::string kZero(kAbsent);

// Row-major table under construction; rows follow the framework's argument order.
class TableBuilder {
public:
    explicit TableBuilder(const std::vector<std::string>& rows) : ids_(rows) { values_.resize(rows.size()); }

    std::size_t add_column(const std::string& attribute, ColumnOrigin origin, const std::vector<std::string>& fill) {
        schema_.push_back(attribute);
        origin.attribute = attribute;
        origins_.push_back(std::move(origin));
        for (std::size_t r = 0; r < values_.size(); ++r)
            values_[r].push_back(fill[r]);
        return schema_.size() - 1;
    }

    std::size_t add_column(const std::string& attribute, ColumnOrigin origin, const std::string& fill) {
        return add_column(attribute, std::move(origin), std::vector<std::string>(values_.size(), fill));
    }

    void set(std::size_t row, std::size_t column, const std::string& value) { values_[row][column] = value; }

    void add(Dependency dep) { deps_.push_back(std::move(dep)); }

    rdb::Instance instance() const {
        std::vector<rdb::Tuple> tuples;
        tuples.reserve(ids_.size());
        for (std::size_t r = 0; r < ids_.size(); ++r)
            tuples.push_back({ids_[r], values_[r]});
        return rdb::Instance(schema_, std::move(tuples), deps_);
    }

    std::vector<ColumnOrigin> origins() const { return origins_; }

private:
    std::vector<std::string> ids_;
    std::vector<std::string> schema_;
    std::vector<std::vector<std::string>> values_;
    std::vector<Dependency> deps_;
    std::vector<ColumnOrigin> origins_;
};

// Argument names double as cell values next to conflict ids and the sentinel,
// so they must not coincide with either.
void check_value_space(const ArgumentationFramework& af, const std::vector<Conflict>& conflicts) {
    std::set<std::string> ids;
    for (const auto& conflict : conflicts)
        ids.insert(conflict.id);
    for (const auto& name : af.arguments())
        if (ids.count(name))
            throw Error("argument name '" + name + "' collides with a conflict id");
}

// Appends the conflict columns (one per conflict, or one per color) and the
// name column. Rows of self-attacking arguments only carry fill values.
void add_conflict_columns(TableBuilder& table, const ArgumentationFramework& af,
                          const std::vector<Conflict>& conflicts, const EdgeColoring* coloring) {
    const std::size_t groups = coloring ? coloring->color_count() : conflicts.size();
    std::vector<std::size_t> column_of_group(groups);
    std::vector<ColumnOrigin> origins(groups);
    for (std::size_t k = 0; k < conflicts.size(); ++k)
        origins[coloring ? coloring->color_of[k] : k].conflicts.push_back(conflicts[k].id);
    for (std::size_t g = 0; g < groups; ++g) {
        origins[g].role = "conflict";
        const std::string attribute = coloring ? "x_c" + std::to_string(g + 1) : "x" + std::to_string(g + 1);
        column_of_group[g] = table.add_column(attribute, origins[g], af.arguments());
        table.add(Dependency::functional({attribute}, {kName}));
    }
    for (std::size_t k = 0; k < conflicts.size(); ++k) {
        const auto column = column_of_group[coloring ? coloring->color_of[k] : k];
        table.set(af.require_index(conflicts[k].first), column, conflicts[k].id);
        table.set(af.require_index(conflicts[k].second), column, conflicts[k].id);
    }
    table.add_column(kName, {"", "name", {}, ""}, af.arguments());
}

// v_x holds x in the rows of x's attackers; with `with_u`, u_x also holds x in
// the rows of everything x interacts with. Self-loops are skipped when
// `skip_loops` is set.
void add_defense_columns(TableBuilder& table, const ArgumentationFramework& af, bool with_u, bool skip_loops) {
    const std::size_t n = af.size();
    for (std::size_t x = 0; x < n; ++x) {
        const auto& name = af.name(x);
        std::size_t u_col = 0;
        if (with_u)
            u_col = table.add_column(u_column(name), {"", "defense-u", {}, name}, kZero);
        const auto v_col = table.add_column(v_column(name), {"", "defense-v", {}, name}, kZero);
        for (auto attacker : af.attackers_of(x)) {
            if (skip_loops && attacker == x)
                continue;
            table.set(attacker, v_col, name);
            if (with_u)
                table.set(attacker, u_col, name);
        }
        if (with_u)
            for (auto target : af.targets_of(x))
                if (!(skip_loops && target == x))
                    table.set(target, u_col, name);
        if (with_u)
            table.add(Dependency::inclusion({u_column(name)}, {v_column(name)}));
    }
}

void add_self_attack_columns(TableBuilder& table, const ArgumentationFramework& af, const std::string& symbol) {
    const auto u_col = table.add_column(u_column(symbol), {"", "self-u", {}, ""}, kZero);
    table.add_column(v_column(symbol), {"", "self-v", {}, ""}, kZero);
    for (std::size_t a = 0; a < af.size(); ++a)
        if (af.self_attacking(a))
            table.set(a, u_col, af.name(a));
    table.add(Dependency::inclusion({u_column(symbol)}, {v_column(symbol)}));
}

struct ConflictPlan {
    std::vector<Conflict> conflicts;
    EdgeColoring coloring;
};

ConflictPlan plan_conflicts(const ArgumentationFramework& af, const EdgeColoring* supplied, bool compress) {
    const auto loop_free = af::strip_self_attackers(af);
    ConflictPlan plan{canonical_conflicts(loop_free), {}};
    check_value_space(af, plan.conflicts);
    if (supplied) {
        if (!is_proper(plan.conflicts, *supplied))
            throw Error("supplied edge coloring is not a proper dense coloring of the conflicts");
        plan.coloring = *supplied;
    } else if (compress) {
        plan.coloring = edge_color(plan.conflicts, loop_free);
    }
    return plan;
}

Translation conflict_db(const ArgumentationFramework& af, const EdgeColoring* supplied, bool compress) {
    const auto loop_free = af::strip_self_attackers(af);
    auto plan = plan_conflicts(af, supplied, compress);
    const bool compressed = supplied || compress;
    TableBuilder table(loop_free.arguments());
    add_conflict_columns(table, loop_free, plan.conflicts, compressed ? &plan.coloring : nullptr);
    return {Target::Conflict, table.instance(), std::move(plan.conflicts), std::move(plan.coloring), compressed, "",
            table.origins()};
}

Translation combined_db(const ArgumentationFramework& af, const EdgeColoring* supplied, Target target) {
    auto plan = plan_conflicts(af, supplied, true);
    const auto symbol = self_attack_symbol(af);
    TableBuilder table(af.arguments());
    add_conflict_columns(table, af, plan.conflicts, &plan.coloring);
    add_defense_columns(table, af, target == Target::AfDb, true);
    add_self_attack_columns(table, af, symbol);
    return {target, table.instance(), std::move(plan.conflicts), std::move(plan.coloring), true, symbol,
            table.origins()};
}

} // namespace

std::vector<Conflict> canonical_conflicts(const ArgumentationFramework& af) {
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& att : af.attacks())
        if (att.attacker != att.target)
            pairs.emplace(std::min(att.attacker, att.target), std::max(att.attacker, att.target));
    std::vector<Conflict> out;
    out.reserve(pairs.size());
    for (const auto& [a, b] : pairs)
        out.push_back({"r" + std::to_string(out.size() + 1), af.name(a), af.name(b)});
    return out;
}

std::string_view to_string(Target target) {
    switch (target) {
    case Target::Conflict:
        return "conflict";
    case Target::Defense:
        return "defense";
    case Target::AfDb:
        return "afdb";
    case Target::Range:
        return "range";
    }
    return "unknown";
}

Target parse_target(std::string_view tag) {
    for (auto t : {Target::Conflict, Target::Defense, Target::AfDb, Target::Range})
        if (to_string(t) == tag)
            return t;
    throw Error("unknown target '" + std::string(tag) + "'");
}

std::string u_column(std::string_view symbol) { return "u_" + std::string(symbol); }
std::string v_column(std::string_view symbol) { return "v_" + std::string(symbol); }

std::string self_attack_symbol(const ArgumentationFramework& af) {
    std::string symbol = "s";
    while (af.index_of(symbol))
        symbol += '\'';
    return symbol;
}

Translation build_conflict_db(const ArgumentationFramework& af, bool compress) {
    return conflict_db(af, nullptr, compress);
}

Translation build_conflict_db(const ArgumentationFramework& af, const EdgeColoring& coloring) {
    return conflict_db(af, &coloring, true);
}

Translation build_defense_db(const ArgumentationFramework& af) {
    TableBuilder table(af.arguments());
    add_defense_columns(table, af, true, false);
    return {Target::Defense, table.instance(), {}, {}, false, "", table.origins()};
}

Translation build_af_db(const ArgumentationFramework& af) { return combined_db(af, nullptr, Target::AfDb); }

Translation build_af_db(const ArgumentationFramework& af, const EdgeColoring& coloring) {
    return combined_db(af, &coloring, Target::AfDb);
}

Translation build_range_db(const ArgumentationFramework& af) { return combined_db(af, nullptr, Target::Range); }

Translation build_range_db(const ArgumentationFramework& af, const EdgeColoring& coloring) {
    return combined_db(af, &coloring, Target::Range);
}

Translation build(const ArgumentationFramework& af, Target target, bool compress) {
    switch (target) {
    case Target::Conflict:
        return build_conflict_db(af, compress);
    case Target::Defense:
        return build_defense_db(af);
    case Target::AfDb:
        return build_af_db(af);
    case Target::Range:
        return build_range_db(af);
    }
    throw Error("unknown target");
}

std::vector<std::string> range_attrs(const ArgumentationFramework& af) {
    std::vector<std::string> out;
    out.reserve(af.size() + 1);
    for (const auto& name : af.arguments())
        out.push_back(v_column(name));
    out.push_back(kName);
    return out;
}

nlohmann::json manifest(const Translation& translation) {
    using nlohmann::json;
    std::map<std::string, std::string> attribute_of;
    for (const auto& column : translation.columns)
        for (const auto& id : column.conflicts)
            attribute_of[id] = column.attribute;

    json conflicts = json::array();
    for (std::size_t k = 0; k < translation.conflicts.size(); ++k) {
        const auto& conflict = translation.conflicts[k];
        json entry{{"id", conflict.id},
                   {"endpoints", {conflict.first, conflict.second}},
                   {"attribute", attribute_of[conflict.id]}};
        entry["color"] = translation.compressed ? json(translation.coloring.color_of[k]) : json(nullptr);
        conflicts.push_back(std::move(entry));
    }

    json columns = json::array();
    for (const auto& column : translation.columns) {
        json entry{{"attribute", column.attribute}, {"role", column.role}};
        if (column.role == "conflict")
            entry["conflicts"] = column.conflicts;
        if (!column.argument.empty())
            entry["argument"] = column.argument;
        columns.push_back(std::move(entry));
    }

    json dependencies = json::array();
    for (const auto& dep : translation.instance.dependencies())
        dependencies.push_back(rdb::to_string(dep));

    json doc{{"target", std::string(to_string(translation.target))},
             {"compressed", translation.compressed},
             {"rows", translation.instance.row_count()},
             {"columns", columns},
             {"conflicts", conflicts},
             {"dependencies", dependencies}};
    doc["colors"] = translation.compressed ? translation.coloring.color_count() : translation.conflicts.size();
    if (!translation.self_symbol.empty())
        doc["self_attack_symbol"] = translation.self_symbol;
    return doc;
}

} // namespace af2db::translate
