#include "af2db/relational.hpp"

#include "af2db/error.hpp"
#include "subset_lattice.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace af2db::rdb {

namespace {

using detail::bit;
using detail::Mask;
using nlohmann::json;

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i)
            out += sep;
        out += items[i];
    }
    return out;
}

std::vector<std::size_t> resolve(const Instance& inst, const std::vector<std::string>& attrs) {
    std::vector<std::size_t> out;
    out.reserve(attrs.size());
    for (const auto& attr : attrs)
        out.push_back(inst.attribute_index(attr));
    return out;
}

bool agree(const Tuple& s, const std::vector<std::size_t>& s_cols, const Tuple& t,
           const std::vector<std::size_t>& t_cols) {
    for (std::size_t k = 0; k < s_cols.size(); ++k)
        if (s.values[s_cols[k]] != t.values[t_cols[k]])
            return false;
    return true;
}

std::vector<std::size_t> tuple_indices(const Instance& inst, const NameSet& subset) {
    std::vector<std::size_t> out;
    out.reserve(subset.size());
    for (const auto& id : subset)
        out.push_back(inst.tuple_index(id));
    return out;
}

// Dependencies lowered to per-tuple masks: a subset satisfies the functional
// dependencies iff it holds no clashing pair, and an inclusion dependency iff
// every member meets its support mask.
struct CompiledConstraints {
    std::vector<Mask> clashes;               // per tuple, union over all FDs
    std::vector<std::vector<Mask>> supports; // per ID, per tuple

    explicit CompiledConstraints(const Instance& inst) : clashes(inst.row_count(), 0) {
        const auto& rows = inst.tuples();
        const std::size_t n = rows.size();
        for (const auto& dep : inst.dependencies()) {
            const auto lhs = resolve(inst, dep.lhs);
            const auto rhs = resolve(inst, dep.rhs);
            if (dep.kind == DependencyKind::Functional) {
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j)
                        if (agree(rows[i], lhs, rows[j], lhs) && !agree(rows[i], rhs, rows[j], rhs)) {
                            clashes[i] |= bit(j);
                            clashes[j] |= bit(i);
                        }
            } else {
                std::vector<Mask> support(n, 0);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        if (agree(rows[i], lhs, rows[j], rhs))
                            support[i] |= bit(j);
                supports.push_back(std::move(support));
            }
        }
    }

    bool fd_compatible(Mask s, std::size_t i) const { return (clashes[i] & s) == 0; }

    bool fds_hold(Mask s) const {
        for (std::size_t i = 0; i < clashes.size(); ++i)
            if ((s & bit(i)) && (clashes[i] & s))
                return false;
        return true;
    }

    bool ids_hold(Mask s) const {
        for (const auto& support : supports)
            for (std::size_t i = 0; i < support.size(); ++i)
                if ((s & bit(i)) && (support[i] & s) == 0)
                    return false;
        return true;
    }

    bool consistent(Mask s) const { return fds_hold(s) && ids_hold(s); }
};

std::vector<bool> repair_bitmap(const Instance& inst, SearchStrategy strategy) {
    const CompiledConstraints constraints(inst);
    const std::size_t n = inst.row_count();
    std::vector<bool> out(std::size_t{1} << n, false);
    if (strategy == SearchStrategy::SubsetScan) {
        for (std::size_t s = 0; s < out.size(); ++s)
            out[s] = constraints.consistent(s);
        return out;
    }
    // Functional-dependency violations are monotone, so a branch that adds a
    // clashing tuple can be cut; inclusion dependencies are checked at the leaves.
    struct Frame {
        std::size_t next;
        Mask chosen;
    };
    std::vector<Frame> stack{{0, 0}};
    while (!stack.empty()) {
        const auto [next, chosen] = stack.back();
        stack.pop_back();
        if (next == n) {
            if (constraints.ids_hold(chosen))
                out[chosen] = true;
            continue;
        }
        stack.push_back({next + 1, chosen});
        if (constraints.fd_compatible(chosen, next))
            stack.push_back({next + 1, chosen | bit(next)});
    }
    return out;
}

std::vector<std::string> tuple_id_universe(const Instance& inst) {
    std::vector<std::string> ids;
    ids.reserve(inst.row_count());
    for (const auto& t : inst.tuples())
        ids.push_back(t.id);
    return ids;
}

// Dynamic bitset over the projected value universe.
struct ValueBits {
    std::vector<std::uint64_t> words;

    explicit ValueBits(std::size_t size = 0) : words((size + 63) / 64, 0) {}
    void set(std::size_t i) { words[i / 64] |= std::uint64_t{1} << (i % 64); }
    ValueBits& operator|=(const ValueBits& other) {
        for (std::size_t w = 0; w < words.size(); ++w)
            words[w] |= other.words[w];
        return *this;
    }
    bool subset_of(const ValueBits& other) const {
        for (std::size_t w = 0; w < words.size(); ++w)
            if (words[w] & ~other.words[w])
                return false;
        return true;
    }
    auto operator<=>(const ValueBits&) const = default;
};

json deps_to_json(const Instance& inst) {
    json fds = json::array();
    json ids = json::array();
    for (const auto& dep : inst.dependencies()) {
        json entry{{"lhs", dep.lhs}, {"rhs", dep.rhs}};
        (dep.kind == DependencyKind::Functional ? fds : ids).push_back(std::move(entry));
    }
    return json{{"fds", fds}, {"ids", ids}};
}

std::vector<std::string> string_array(const json& node, const char* what) {
    if (!node.is_array())
        throw ParseError(0, std::string(what) + " must be an array");
    std::vector<std::string> out;
    for (const auto& item : node) {
        if (!item.is_string())
            throw ParseError(0, std::string(what) + " must contain strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

std::vector<Dependency> deps_from_json(const json& node) {
    if (!node.is_object())
        throw ParseError(0, "dependency document must be a JSON object");
    std::vector<Dependency> out;
    for (const auto& [key, kind] : {std::pair{"fds", DependencyKind::Functional},
                                    std::pair{"ids", DependencyKind::Inclusion}}) {
        if (!node.contains(key))
            continue;
        if (!node.at(key).is_array())
            throw ParseError(0, std::string("'") + key + "' must be an array");
        for (const auto& entry : node.at(key)) {
            if (!entry.is_object() || !entry.contains("lhs") || !entry.contains("rhs"))
                throw ParseError(0, std::string("entries of '") + key + "' need 'lhs' and 'rhs'");
            out.push_back({kind, string_array(entry.at("lhs"), "lhs"), string_array(entry.at("rhs"), "rhs")});
        }
    }
    return out;
}

json parse_json(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(0, std::string("malformed ") + what + ": " + e.what());
    }
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

struct CsvRecord {
    std::vector<std::string> fields;
    std::size_t line;
};

std::vector<CsvRecord> read_csv(std::string_view text) {
    std::vector<CsvRecord> records;
    std::size_t line = 1;
    std::size_t pos = 0;
    while (pos < text.size()) {
        CsvRecord record{{}, line};
        std::string field;
        bool quoted = false;
        bool line_done = false;
        while (!line_done) {
            if (pos >= text.size()) {
                if (quoted)
                    throw ParseError(record.line, "unterminated quoted field");
                record.fields.push_back(std::move(field));
                break;
            }
            const char c = text[pos++];
            if (quoted) {
                if (c == '"') {
                    if (pos < text.size() && text[pos] == '"') {
                        field += '"';
                        ++pos;
                    } else {
                        quoted = false;
                    }
                } else {
                    if (c == '\n')
                        ++line;
                    field += c;
                }
            } else if (c == '"' && field.empty()) {
                quoted = true;
            } else if (c == ',') {
                record.fields.push_back(std::move(field));
                field.clear();
            } else if (c == '\n' || c == '\r') {
                if (c == '\r' && pos < text.size() && text[pos] == '\n')
                    ++pos;
                ++line;
                record.fields.push_back(std::move(field));
                line_done = true;
            } else {
                field += c;
            }
        }
        const bool blank = record.fields.size() == 1 && record.fields[0].empty();
        if (!blank)
            records.push_back(std::move(record));
    }
    return records;
}

} // namespace

std::string to_string(const Dependency& dep) {
    return join(dep.lhs, ",") + (dep.kind == DependencyKind::Functional ? " -> " : " <= ") + join(dep.rhs, ",");
}

Instance::Instance(std::vector<std::string> schema, std::vector<Tuple> tuples, std::vector<Dependency> dependencies)
    : schema_(std::move(schema)), tuples_(std::move(tuples)), dependencies_(std::move(dependencies)) {
    std::unordered_set<std::string> seen;
    for (const auto& attr : schema_) {
        if (attr.empty())
            throw Error("empty attribute name");
        if (attr == "_id")
            throw Error("attribute name '_id' is reserved for tuple ids");
        if (!seen.insert(attr).second)
            throw Error("duplicate attribute '" + attr + "'");
    }
    seen.clear();
    for (const auto& t : tuples_) {
        if (t.id.empty())
            throw Error("empty tuple id");
        if (!seen.insert(t.id).second)
            throw Error("duplicate tuple id '" + t.id + "'");
        if (t.values.size() != schema_.size())
            throw Error("tuple '" + t.id + "' has " + std::to_string(t.values.size()) + " values, schema has " +
                        std::to_string(schema_.size()) + " attributes");
    }
    for (const auto& dep : dependencies_) {
        for (const auto* side : {&dep.lhs, &dep.rhs})
            for (const auto& attr : *side)
                if (std::find(schema_.begin(), schema_.end(), attr) == schema_.end())
                    throw Error("dependency " + to_string(dep) + " mentions unknown attribute '" + attr + "'");
        if (dep.kind == DependencyKind::Inclusion && dep.lhs.size() != dep.rhs.size())
            throw Error("inclusion dependency " + to_string(dep) + " has sides of different length");
    }
}

std::size_t Instance::attribute_index(std::string_view attribute) const {
    const auto it = std::find(schema_.begin(), schema_.end(), attribute);
    if (it == schema_.end())
        throw Error("unknown attribute '" + std::string(attribute) + "'");
    return static_cast<std::size_t>(it - schema_.begin());
}

std::size_t Instance::tuple_index(std::string_view id) const {
    const auto it = std::find_if(tuples_.begin(), tuples_.end(), [&](const Tuple& t) { return t.id == id; });
    if (it == tuples_.end())
        throw Error("unknown tuple id '" + std::string(id) + "'");
    return static_cast<std::size_t>(it - tuples_.begin());
}

const Value& Instance::value(std::string_view id, std::string_view attribute) const {
    return tuples_[tuple_index(id)].values[attribute_index(attribute)];
}

NameSet Instance::tuple_ids() const {
    NameSet out;
    for (const auto& t : tuples_)
        out.insert(t.id);
    return out;
}

Instance Instance::with_dependencies(std::vector<Dependency> dependencies) const {
    return Instance(schema_, tuples_, std::move(dependencies));
}

std::string_view to_string(RepairClass repair_class) {
    switch (repair_class) {
    case RepairClass::All:
        return "all";
    case RepairClass::Maximal:
        return "maximal";
    case RepairClass::MaxCovering:
        return "max-covering";
    case RepairClass::FullCovering:
        return "full-covering";
    }
    return "unknown";
}

RepairClass parse_repair_class(std::string_view tag) {
    for (auto rc : {RepairClass::All, RepairClass::Maximal, RepairClass::MaxCovering, RepairClass::FullCovering})
        if (to_string(rc) == tag)
            return rc;
    throw Error("unknown repair class '" + std::string(tag) + "'");
}

bool satisfies(const NameSet& subset, const Dependency& dep, const Instance& inst) {
    const auto members = tuple_indices(inst, subset);
    const auto lhs = resolve(inst, dep.lhs);
    const auto rhs = resolve(inst, dep.rhs);
    const auto& rows = inst.tuples();
    if (dep.kind == DependencyKind::Functional) {
        for (auto s : members)
            for (auto t : members)
                if (agree(rows[s], lhs, rows[t], lhs) && !agree(rows[s], rhs, rows[t], rhs))
                    return false;
        return true;
    }
    return std::all_of(members.begin(), members.end(), [&](auto s) {
        return std::any_of(members.begin(), members.end(), [&](auto t) { return agree(rows[s], lhs, rows[t], rhs); });
    });
}

NameSet support_set(const Instance& inst, const Dependency& dep, std::string_view tuple_id) {
    if (dep.kind != DependencyKind::Inclusion)
        throw Error("support_set needs an inclusion dependency, got " + to_string(dep));
    const auto& s = inst.tuples()[inst.tuple_index(tuple_id)];
    const auto lhs = resolve(inst, dep.lhs);
    const auto rhs = resolve(inst, dep.rhs);
    NameSet out;
    for (const auto& t : inst.tuples())
        if (agree(s, lhs, t, rhs))
            out.insert(t.id);
    return out;
}

bool is_repair(const Instance& inst, const NameSet& subset) {
    tuple_indices(inst, subset);
    return std::all_of(inst.dependencies().begin(), inst.dependencies().end(),
                       [&](const Dependency& dep) { return satisfies(subset, dep, inst); });
}

RepairFamily enumerate_repairs(const Instance& inst, RepairClass mode, std::size_t cap, SearchStrategy strategy) {
    if (mode != RepairClass::All && mode != RepairClass::Maximal)
        throw Error("enumerate_repairs handles 'all' and 'maximal'; use covering_repairs for covering classes");
    detail::require_within_cap(inst.row_count(), cap);
    auto members = repair_bitmap(inst, strategy);
    if (mode == RepairClass::Maximal)
        members = detail::maximal_members(members, inst.row_count());
    return {mode, std::nullopt, detail::to_family(members, tuple_id_universe(inst))};
}

std::set<Value> projection_domain(const Instance& inst, const NameSet& subset, const std::vector<std::string>& attrs) {
    const auto cols = resolve(inst, attrs);
    std::set<Value> out;
    for (auto i : tuple_indices(inst, subset))
        for (auto c : cols)
            out.insert(inst.tuples()[i].values[c]);
    return out;
}

RepairFamily covering_repairs(const Instance& inst, Covering mode, const std::vector<std::string>& attrs,
                              std::size_t cap) {
    detail::require_within_cap(inst.row_count(), cap);
    const auto cols = resolve(inst, attrs);
    const auto& rows = inst.tuples();
    const std::size_t n = rows.size();

    std::unordered_map<std::string, std::size_t> value_index;
    for (const auto& row : rows)
        for (auto c : cols)
            value_index.emplace(row.values[c], value_index.size());
    std::vector<ValueBits> row_bits(n, ValueBits(value_index.size()));
    ValueBits everything(value_index.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (auto c : cols)
            row_bits[i].set(value_index.at(rows[i].values[c]));
        everything |= row_bits[i];
    }

    const auto repairs = repair_bitmap(inst, SearchStrategy::SubsetScan);
    std::map<ValueBits, std::vector<Mask>> by_domain;
    for (std::size_t s = 0; s < repairs.size(); ++s) {
        if (!repairs[s])
            continue;
        ValueBits domain(value_index.size());
        for (std::size_t i = 0; i < n; ++i)
            if (s & bit(i))
                domain |= row_bits[i];
        by_domain[domain].push_back(s);
    }

    const auto ids = tuple_id_universe(inst);
    RepairFamily out{mode == Covering::Max ? RepairClass::MaxCovering : RepairClass::FullCovering, attrs, {}};
    for (const auto& [domain, masks] : by_domain) {
        bool keep;
        if (mode == Covering::Full) {
            keep = domain == everything;
        } else {
            keep = std::none_of(by_domain.begin(), by_domain.end(), [&](const auto& other) {
                return other.first != domain && domain.subset_of(other.first);
            });
        }
        if (keep)
            for (auto s : masks)
                out.repairs.insert(detail::to_names(s, ids));
    }
    return out;
}

RepairFamily solve(const Instance& inst, RepairClass repair_class, const std::optional<std::vector<std::string>>& attrs,
                   std::size_t cap) {
    switch (repair_class) {
    case RepairClass::All:
    case RepairClass::Maximal:
        return enumerate_repairs(inst, repair_class, cap);
    case RepairClass::MaxCovering:
        return covering_repairs(inst, Covering::Max, attrs.value_or(inst.schema()), cap);
    case RepairClass::FullCovering:
        return covering_repairs(inst, Covering::Full, attrs.value_or(inst.schema()), cap);
    }
    throw Error("unknown repair class");
}

std::string export_csv(const Instance& inst) {
    std::string out = "_id";
    for (const auto& attr : inst.schema())
        out += "," + csv_escape(attr);
    out += '\n';
    for (const auto& t : inst.tuples()) {
        out += csv_escape(t.id);
        for (const auto& v : t.values)
            out += "," + csv_escape(v);
        out += '\n';
    }
    return out;
}

std::string export_dependencies(const Instance& inst) { return deps_to_json(inst).dump(2) + "\n"; }

std::string export_json(const Instance& inst) {
    json tuples = json::array();
    for (const auto& t : inst.tuples()) {
        json row{{"_id", t.id}};
        for (std::size_t c = 0; c < inst.schema().size(); ++c)
            row[inst.schema()[c]] = t.values[c];
        tuples.push_back(std::move(row));
    }
    json doc{{"schema", inst.schema()}, {"tuples", tuples}, {"dependencies", deps_to_json(inst)}};
    return doc.dump(2) + "\n";
}

Instance import_csv(std::string_view csv, std::string_view dependencies_json) {
    const auto records = read_csv(csv);
    if (records.empty())
        throw ParseError(1, "missing header row");
    const auto& header = records.front().fields;
    if (header.front() != "_id")
        throw ParseError(records.front().line, "malformed header: first column must be '_id'");
    std::vector<std::string> schema(header.begin() + 1, header.end());
    for (const auto& attr : schema)
        if (attr.empty())
            throw ParseError(records.front().line, "malformed header: empty attribute name");

    std::vector<Tuple> tuples;
    std::unordered_set<std::string> ids;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != header.size())
            throw ParseError(rec.line, "row has " + std::to_string(rec.fields.size()) + " cells, header has " +
                                           std::to_string(header.size()));
        if (!ids.insert(rec.fields[0]).second)
            throw ParseError(rec.line, "duplicate tuple id '" + rec.fields[0] + "'");
        tuples.push_back({rec.fields[0], std::vector<Value>(rec.fields.begin() + 1, rec.fields.end())});
    }

    std::vector<Dependency> deps;
    if (!dependencies_json.empty())
        deps = deps_from_json(parse_json(dependencies_json, "dependency JSON"));
    try {
        return Instance(std::move(schema), std::move(tuples), std::move(deps));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(0, e.what());
    }
}

Instance import_json(std::string_view text) {
    const auto doc = parse_json(text, "table JSON");
    if (!doc.is_object() || !doc.contains("schema") || !doc.contains("tuples"))
        throw ParseError(0, "table JSON needs 'schema' and 'tuples'");
    auto schema = string_array(doc.at("schema"), "schema");
    if (!doc.at("tuples").is_array())
        throw ParseError(0, "'tuples' must be an array");
    std::vector<Tuple> tuples;
    for (const auto& row : doc.at("tuples")) {
        if (!row.is_object() || !row.contains("_id") || !row.at("_id").is_string())
            throw ParseError(0, "every tuple needs a string '_id'");
        if (row.size() != schema.size() + 1)
            throw ParseError(0, "tuple '" + row.at("_id").get<std::string>() + "' does not match the schema");
        Tuple t{row.at("_id").get<std::string>(), {}};
        for (const auto& attr : schema) {
            if (!row.contains(attr) || !row.at(attr).is_string())
                throw ParseError(0, "tuple '" + t.id + "' lacks a string value for '" + attr + "'");
            t.values.push_back(row.at(attr).get<std::string>());
        }
        tuples.push_back(std::move(t));
    }
    std::vector<Dependency> deps;
    if (doc.contains("dependencies"))
        deps = deps_from_json(doc.at("dependencies"));
    try {
        return Instance(std::move(schema), std::move(tuples), std::move(deps));
    } catch (const Error& e) {
        throw ParseError(0, e.what());
    }
}

std::string export_table(const Instance& inst, TableFormat format) {
    return format == TableFormat::Csv ? export_csv(inst) : export_json(inst);
}

std::vector<Dependency> import_dependencies(std::string_view dependencies_json) {
    return deps_from_json(parse_json(dependencies_json, "dependency JSON"));
}

Instance import_table(std::string_view text, TableFormat format, std::string_view dependencies_json) {
    if (format == TableFormat::Csv)
        return import_csv(text, dependencies_json);
    auto inst = import_json(text);
    return dependencies_json.empty() ? inst : inst.with_dependencies(import_dependencies(dependencies_json));
}

} // namespace af2db::rdb
