#pragma once

#include "af2db/name_set.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace af2db::rdb {

/// Cell values are plain symbols compared by exact equality. "0" is an ordinary value.
using Value = std::string;

enum class DependencyKind { Functional, Inclusion };

/// `lhs -> rhs` (functional) or `lhs <= rhs` (inclusion) over attribute names.
struct Dependency {
    DependencyKind kind = DependencyKind::Functional;
    std::vector<std::string> lhs;
    std::vector<std::string> rhs;

    static Dependency functional(std::vector<std::string> lhs, std::vector<std::string> rhs) {
        return {DependencyKind::Functional, std::move(lhs), std::move(rhs)};
    }
    static Dependency inclusion(std::vector<std::string> lhs, std::vector<std::string> rhs) {
        return {DependencyKind::Inclusion, std::move(lhs), std::move(rhs)};
    }

    friend bool operator==(const Dependency&, const Dependency&) = default;
};

/// "Tutor,Time -> Room" or "Advisor <= Tutor".
std::string to_string(const Dependency& dep);

struct Tuple {
    std::string id;
    std::vector<Value> values; // aligned with Instance::schema()

    friend bool operator==(const Tuple&, const Tuple&) = default;
};

/// A single table plus its dependency set. Immutable once built; the
/// constructor checks that ids are unique, rows are total over the schema and
/// every dependency only mentions schema attributes.
class Instance {
public:
    Instance() = default;
    Instance(std::vector<std::string> schema, std::vector<Tuple> tuples, std::vector<Dependency> dependencies);

    const std::vector<std::string>& schema() const noexcept { return schema_; }
    const std::vector<Tuple>& tuples() const noexcept { return tuples_; }
    const std::vector<Dependency>& dependencies() const noexcept { return dependencies_; }

    std::size_t row_count() const noexcept { return tuples_.size(); }
    std::size_t column_count() const noexcept { return schema_.size(); }

    std::size_t attribute_index(std::string_view attribute) const;
    std::size_t tuple_index(std::string_view id) const;
    const Value& value(std::string_view id, std::string_view attribute) const;

    /// All tuple ids as a set.
    NameSet tuple_ids() const;

    /// Same table, different constraints.
    Instance with_dependencies(std::vector<Dependency> dependencies) const;

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    std::vector<std::string> schema_;
    std::vector<Tuple> tuples_;
    std::vector<Dependency> dependencies_;
};

enum class RepairClass { All, Maximal, MaxCovering, FullCovering };

std::string_view to_string(RepairClass repair_class);
RepairClass parse_repair_class(std::string_view tag);

struct RepairFamily {
    RepairClass repair_class = RepairClass::All;
    std::optional<std::vector<std::string>> witness_attrs; // set for the covering classes
    Family repairs;
};

/// Does `subset` satisfy `dep`? Throws Error on an unknown tuple id.
bool satisfies(const NameSet& subset, const Dependency& dep, const Instance& inst);

/// Tuples u with u[rhs] = t[lhs]. Throws Error when `dep` is not an inclusion dependency.
NameSet support_set(const Instance& inst, const Dependency& dep, std::string_view tuple_id);

/// `subset` satisfies every dependency of `inst`.
bool is_repair(const Instance& inst, const NameSet& subset);

enum class SearchStrategy {
    SubsetScan, // test every subset
    Pruned,     // backtracking that never extends a functional-dependency violation
};

/// mode must be All or Maximal. Throws CapExceeded when the table has more than `cap` rows.
RepairFamily enumerate_repairs(const Instance& inst, RepairClass mode, std::size_t cap = kDefaultEnumerationCap,
                               SearchStrategy strategy = SearchStrategy::SubsetScan);

enum class Covering { Max, Full };

/// Values occurring in `subset` restricted to `attrs`.
std::set<Value> projection_domain(const Instance& inst, const NameSet& subset, const std::vector<std::string>& attrs);

/// Maximally covering (set-inclusion maximal projected domain among all repairs)
/// or fully covering (projected domain equals the whole table's) repairs.
RepairFamily covering_repairs(const Instance& inst, Covering mode, const std::vector<std::string>& attrs,
                              std::size_t cap = kDefaultEnumerationCap);

/// Convenience dispatch over the four classes; `attrs` defaults to the whole schema.
RepairFamily solve(const Instance& inst, RepairClass repair_class,
                   const std::optional<std::vector<std::string>>& attrs = std::nullopt,
                   std::size_t cap = kDefaultEnumerationCap);

// Serialization. CSV: header `_id,<attr>...`, one row per tuple. Dependencies
// travel in a sidecar JSON object {"fds":[{"lhs":[...],"rhs":[...]}],"ids":[...]}.
// The JSON table format carries schema, tuples and dependencies in one object.
enum class TableFormat { Csv, Json };

std::string export_csv(const Instance& inst);
std::string export_dependencies(const Instance& inst);
std::string export_json(const Instance& inst);

Instance import_csv(std::string_view csv, std::string_view dependencies_json = {});
Instance import_json(std::string_view json);
std::vector<Dependency> import_dependencies(std::string_view dependencies_json);

std::string export_table(const Instance& inst, TableFormat format);
/// A non-empty `dependencies_json` replaces the dependencies embedded in a JSON table.
Instance import_table(std::string_view text, TableFormat format, std::string_view dependencies_json = {});

} // namespace af2db::rdb
