#pragma once

#include "af2db/argumentation.hpp"
#include "af2db/relational.hpp"
#include "af2db/translate.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace af2db::verify {

enum class InstanceKind { Conflict, AfDb, RangeDb };

std::string_view to_string(InstanceKind kind);

/// Extension family vs repair family for one semantics. Tuple ids equal
/// argument names, so the argument <-> tuple bijection is the identity on names.
struct CorrespondenceReport {
    af::Semantics semantics = af::Semantics::ConflictFree;
    rdb::RepairClass repair_class = rdb::RepairClass::All;
    InstanceKind instance_kind = InstanceKind::Conflict;
    Family extensions;
    Family repairs;
    bool verdict = false;
    /// Smallest set (by size, then lexicographically) in the symmetric difference.
    std::optional<NameSet> counterexample;
};

/// Lets a test corrupt a translated instance before it is solved.
using FaultHook = std::function<void(InstanceKind, rdb::Instance&)>;

/// The seven semantics that have a repair counterpart, in a fixed order:
/// conflict-free, naive, admissible, preferred, stable, stage, semi-stable.
const std::vector<af::Semantics>& correspondence_semantics();

/// Throws Error for complete semantics (no repair counterpart) and CapExceeded
/// when the framework is larger than `cap`.
CorrespondenceReport check_correspondence(const af::ArgumentationFramework& af, af::Semantics semantics,
                                          std::size_t cap = kDefaultEnumerationCap, const FaultHook& hook = {});

struct BoundCheck {
    std::string name;
    std::size_t actual = 0;
    std::size_t bound = 0;
    bool ok = false;
};

struct SizeReport {
    std::vector<BoundCheck> checks;
    bool ok() const;
};

/// Builds all four databases and compares rows, columns and dependency counts
/// against the size formulas. Violations are entries, never exceptions.
SizeReport check_size_bounds(const af::ArgumentationFramework& af);

struct SuiteConfig {
    std::size_t instance_count = 200;
    std::size_t max_args = 8;
    double attack_probability = 0.25;
    double self_loop_probability = 0.05;
    std::uint64_t seed = 42;
    /// Lemma-level checks enumerate every subset; frameworks above this size skip them.
    std::size_t lemma_max_args = 6;
    std::size_t cap = kDefaultEnumerationCap;

    /// Throws Error when a field is out of range (max_args <= 12, probabilities in [0,1]).
    void validate() const;
};

/// Deterministic in (seed, index). The argument count is uniform in
/// [1, max_args] (0 when max_args is 0); names are a, b, c, ...
af::ArgumentationFramework random_af(const SuiteConfig& config, std::size_t index);

/// Adds the reverse of every attack and drops self-loops.
af::ArgumentationFramework symmetrize(const af::ArgumentationFramework& af);

// Single-framework property checks. Each returns a description of the first
// violation, or nullopt when the property holds.
using Finding = std::optional<std::string>;

/// Edge coloring is proper and |FDs| <= degree + 1 <= |A| (the second bound only for |A| > 0).
Finding check_coloring_bound(const af::ArgumentationFramework& af);
/// Compressed and uncompressed conflict databases have the same repairs.
Finding check_compression_equivalence(const af::ArgumentationFramework& af, std::size_t cap);
/// In the defense database the support set of b for u_a <= v_a is the set of
/// defenders of b against a, for every attack (a, b).
Finding check_support_is_defense(const af::ArgumentationFramework& af);
/// For every S: range_of(S) equals the projected domain of S over the range attributes minus "0".
Finding check_range_encoding(const af::ArgumentationFramework& af);
/// Max-covering repairs are maximal repairs (AF database); full-covering repairs
/// are max-covering (range database).
Finding check_covering_inclusions(const af::ArgumentationFramework& af, std::size_t cap);
/// When stable extensions exist, full- and max-covering repairs of the range database coincide.
Finding check_stable_collapse(const af::ArgumentationFramework& af, std::size_t cap);
/// The reduced range database and the full AF table under FDs + u_s <= v_s have
/// the same covering repairs.
Finding check_range_reduction(const af::ArgumentationFramework& af, std::size_t cap);
/// For a symmetric framework: maximal conflict-database repairs = naive = stable = preferred.
Finding check_symmetric_collapse(const af::ArgumentationFramework& af, std::size_t cap);

struct CheckTally {
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::optional<std::string> first_failure;
};

/// Per-check pass/fail counts. merge() is associative and, apart from which
/// failure is kept as "first", order-independent.
struct SuiteSummary {
    std::size_t instances = 0;
    std::map<std::string, CheckTally> checks;

    void record(const std::string& check, const Finding& finding, std::size_t instance);
    void merge(const SuiteSummary& other);
    std::size_t failures() const;
    bool ok() const { return failures() == 0; }

    nlohmann::json to_json() const;
    std::string to_text() const;
};

/// All correspondences, size bounds and lemma checks on one framework.
SuiteSummary check_framework(const af::ArgumentationFramework& af, std::size_t instance, std::size_t lemma_max_args,
                             std::size_t cap = kDefaultEnumerationCap, const FaultHook& hook = {});

/// check_framework over random_af(config, 0 .. instance_count-1).
SuiteSummary run_suite(const SuiteConfig& config, const FaultHook& hook = {});

} // namespace af2db::verify
