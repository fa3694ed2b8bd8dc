#include "af2db/verify.hpp"

#include "af2db/error.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace af2db::verify {

namespace {

using af::ArgumentationFramework;
using af::Semantics;
using rdb::RepairClass;

std::string one_line(const ArgumentationFramework& af) {
    std::string text = af::to_apx(af);
    std::replace(text.begin(), text.end(), '\n', ' ');
    if (!text.empty())
        text.pop_back();
    return text.empty() ? "<empty framework>" : text;
}

std::optional<NameSet> first_difference(const Family& lhs, const Family& rhs) {
    std::optional<NameSet> best;
    const BySizeThenLex less;
    for (const auto& [from, other] : {std::pair{&lhs, &rhs}, std::pair{&rhs, &lhs}})
        for (const auto& set : *from)
            if (!other->count(set) && (!best || less(set, *best)))
                best = set;
    return best;
}

Finding compare(const std::string& what, const Family& expected, const Family& actual) {
    if (expected == actual)
        return std::nullopt;
    const auto diff = first_difference(expected, actual);
    return what + ": " + format_set(*diff) + (expected.count(*diff) ? " missing" : " unexpected");
}

double unit_interval(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Family covering(const rdb::Instance& inst, rdb::Covering mode, const std::vector<std::string>& attrs, std::size_t cap) {
    return rdb::covering_repairs(inst, mode, attrs, cap).repairs;
}

} // namespace

std::string_view to_string(InstanceKind kind) {
    switch (kind) {
    case InstanceKind::Conflict:
        return "conflict";
    case InstanceKind::AfDb:
        return "af_db";
    case InstanceKind::RangeDb:
        return "range_db";
    }
    return "unknown";
}

const std::vector<Semantics>& correspondence_semantics() {
    static const std::vector<Semantics> seven{Semantics::ConflictFree, Semantics::Naive,  Semantics::Admissible,
                                              Semantics::Preferred,    Semantics::Stable, Semantics::Stage,
                                              Semantics::SemiStable};
    return seven;
}

CorrespondenceReport check_correspondence(const ArgumentationFramework& af, Semantics semantics, std::size_t cap,
                                          const FaultHook& hook) {
    CorrespondenceReport report;
    report.semantics = semantics;

    const auto solve = [&](InstanceKind kind, rdb::Instance inst, RepairClass rc,
                           const std::optional<std::vector<std::string>>& attrs) {
        if (hook)
            hook(kind, inst);
        report.instance_kind = kind;
        report.repair_class = rc;
        report.repairs = rdb::solve(inst, rc, attrs, cap).repairs;
    };

    switch (semantics) {
    case Semantics::ConflictFree:
    case Semantics::Naive: {
        const auto loop_free = af::strip_self_attackers(af);
        report.extensions = af::extensions(loop_free, semantics, cap);
        solve(InstanceKind::Conflict, translate::build_conflict_db(af).instance,
              semantics == Semantics::Naive ? RepairClass::Maximal : RepairClass::All, std::nullopt);
        break;
    }
    case Semantics::Admissible:
    case Semantics::Preferred:
        report.extensions = af::extensions(af, semantics, cap);
        solve(InstanceKind::AfDb, translate::build_af_db(af).instance,
              semantics == Semantics::Preferred ? RepairClass::Maximal : RepairClass::All, std::nullopt);
        break;
    case Semantics::Stable:
    case Semantics::Stage:
        report.extensions = af::extensions(af, semantics, cap);
        solve(InstanceKind::RangeDb, translate::build_range_db(af).instance,
              semantics == Semantics::Stable ? RepairClass::FullCovering : RepairClass::MaxCovering,
              translate::range_attrs(af));
        break;
    case Semantics::SemiStable:
        report.extensions = af::extensions(af, semantics, cap);
        solve(InstanceKind::AfDb, translate::build_af_db(af).instance, RepairClass::MaxCovering,
              translate::range_attrs(af));
        break;
    case Semantics::Complete:
        throw Error("complete semantics has no repair counterpart");
    }

    report.verdict = report.extensions == report.repairs;
    if (!report.verdict)
        report.counterexample = first_difference(report.extensions, report.repairs);
    return report;
}

bool SizeReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.ok; });
}

SizeReport check_size_bounds(const ArgumentationFramework& af) {
    SizeReport report;
    const std::size_t n = af.size();
    const auto at_most = [&](std::string name, std::size_t actual, std::size_t bound) {
        report.checks.push_back({std::move(name), actual, bound, actual <= bound});
    };
    const auto exactly = [&](std::string name, std::size_t actual, std::size_t bound) {
        report.checks.push_back({std::move(name), actual, bound, actual == bound});
    };
    const auto count = [](const rdb::Instance& inst, rdb::DependencyKind kind) {
        return static_cast<std::size_t>(std::count_if(inst.dependencies().begin(), inst.dependencies().end(),
                                                      [&](const rdb::Dependency& d) { return d.kind == kind; }));
    };
    using rdb::DependencyKind;

    const auto conflict = translate::build_conflict_db(af).instance;
    at_most("conflict.rows<=|A|", conflict.row_count(), n);
    at_most("conflict.columns<=|A|+1", conflict.column_count(), n + 1);
    at_most("conflict.fds<=|A|", count(conflict, DependencyKind::Functional), n);
    exactly("conflict.ids==0", count(conflict, DependencyKind::Inclusion), 0);

    const auto defense = translate::build_defense_db(af).instance;
    exactly("defense.rows==|A|", defense.row_count(), n);
    exactly("defense.columns==2|A|", defense.column_count(), 2 * n);
    exactly("defense.ids==|A|", count(defense, DependencyKind::Inclusion), n);
    exactly("defense.fds==0", count(defense, DependencyKind::Functional), 0);

    const auto afdb = translate::build_af_db(af).instance;
    exactly("afdb.rows==|A|", afdb.row_count(), n);
    at_most("afdb.columns<=3(|A|+1)", afdb.column_count(), 3 * (n + 1));
    at_most("afdb.fds<=|A|", count(afdb, DependencyKind::Functional), n);
    at_most("afdb.ids<=|A|+1", count(afdb, DependencyKind::Inclusion), n + 1);

    const auto range = translate::build_range_db(af).instance;
    exactly("range.rows==|A|", range.row_count(), n);
    at_most("range.columns<=2|A|+3", range.column_count(), 2 * n + 3);
    at_most("range.fds<=|A|", count(range, DependencyKind::Functional), n);
    exactly("range.ids==1", count(range, DependencyKind::Inclusion), 1);
    return report;
}

void SuiteConfig::validate() const {
    if (max_args > 12)
        throw Error("max_args must be at most 12");
    for (double p : {attack_probability, self_loop_probability})
        if (!(p >= 0.0 && p <= 1.0))
            throw Error("probabilities must lie in [0, 1]");
    if (cap > kMaxEnumerationCap)
        throw Error("enumeration cap above the hard limit");
}

ArgumentationFramework random_af(const SuiteConfig& config, std::size_t index) {
    const auto index64 = static_cast<std::uint64_t>(index);
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(index64), static_cast<std::uint32_t>(index64 >> 32)};
    std::mt19937_64 rng(seq);

    const std::size_t n = config.max_args == 0 ? 0 : 1 + static_cast<std::size_t>(rng() % config.max_args);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<std::pair<std::string, std::string>> attacks;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const double p = a == b ? config.self_loop_probability : config.attack_probability;
            if (unit_interval(rng) < p)
                attacks.emplace_back(names[a], names[b]);
        }
    return ArgumentationFramework(std::move(names), attacks);
}

ArgumentationFramework symmetrize(const ArgumentationFramework& af) {
    std::vector<std::pair<std::string, std::string>> attacks;
    for (const auto& [a, b] : af.attack_names())
        if (a != b) {
            attacks.emplace_back(a, b);
            attacks.emplace_back(b, a);
        }
    return ArgumentationFramework(af.arguments(), attacks);
}

Finding check_coloring_bound(const ArgumentationFramework& af) {
    const auto loop_free = af::strip_self_attackers(af);
    const auto conflicts = translate::canonical_conflicts(loop_free);
    const auto coloring = translate::edge_color(conflicts, loop_free);
    if (!translate::is_proper(conflicts, coloring))
        return "edge coloring is not proper";
    const std::size_t colors = coloring.color_count();
    const std::size_t gamma = af::degree(af);
    if (colors > gamma + 1)
        return std::to_string(colors) + " colors exceed degree+1 = " + std::to_string(gamma + 1);
    if (!af.empty() && gamma + 1 > af.size())
        return "degree+1 exceeds |A|";
    const auto conflict_db = translate::build_conflict_db(af);
    if (conflict_db.instance.dependencies().size() != colors)
        return "conflict database has " + std::to_string(conflict_db.instance.dependencies().size()) +
               " FDs for " + std::to_string(colors) + " colors";
    return std::nullopt;
}

Finding check_compression_equivalence(const ArgumentationFramework& af, std::size_t cap) {
    const auto compressed = translate::build_conflict_db(af, true).instance;
    const auto plain = translate::build_conflict_db(af, false).instance;
    return compare("compressed vs uncompressed repairs",
                   rdb::enumerate_repairs(plain, RepairClass::All, cap).repairs,
                   rdb::enumerate_repairs(compressed, RepairClass::All, cap).repairs);
}

Finding check_support_is_defense(const ArgumentationFramework& af) {
    const auto defense = translate::build_defense_db(af).instance;
    for (const auto& att : af.attacks()) {
        const auto& a = af.name(att.attacker);
        const auto& b = af.name(att.target);
        NameSet defenders;
        for (auto c : af.attackers_of(att.attacker))
            defenders.insert(af.name(c));
        const auto dep = rdb::Dependency::inclusion({translate::u_column(a)}, {translate::v_column(a)});
        const auto support = rdb::support_set(defense, dep, b);
        if (support != defenders)
            return "attack (" + a + "," + b + "): support " + format_set(support) + " vs defenders " +
                   format_set(defenders);
    }
    return std::nullopt;
}

Finding check_range_encoding(const ArgumentationFramework& af) {
    const auto afdb = translate::build_af_db(af).instance;
    const auto attrs = translate::range_attrs(af);
    const std::size_t total = std::size_t{1} << af.size();
    for (std::size_t s = 0; s < total; ++s) {
        NameSet subset;
        for (std::size_t i = 0; i < af.size(); ++i)
            if (s & (std::size_t{1} << i))
                subset.insert(af.name(i));
        auto domain = rdb::projection_domain(afdb, subset, attrs);
        domain.erase(std::string(translate::kAbsent));
        const auto range = af::range_of(af, subset);
        if (NameSet(domain.begin(), domain.end()) != range)
            return "S = " + format_set(subset) + ": range " + format_set(range) + " vs projected domain " +
                   format_set(NameSet(domain.begin(), domain.end()));
    }
    return std::nullopt;
}

Finding check_covering_inclusions(const ArgumentationFramework& af, std::size_t cap) {
    const auto attrs = translate::range_attrs(af);
    const auto afdb = translate::build_af_db(af).instance;
    const auto max_cov = covering(afdb, rdb::Covering::Max, attrs, cap);
    const auto maximal = rdb::enumerate_repairs(afdb, RepairClass::Maximal, cap).repairs;
    for (const auto& set : max_cov)
        if (!maximal.count(set))
            return "af_db: max-covering " + format_set(set) + " is not a maximal repair";

    const auto range = translate::build_range_db(af).instance;
    const auto range_max = covering(range, rdb::Covering::Max, attrs, cap);
    for (const auto& set : covering(range, rdb::Covering::Full, attrs, cap))
        if (!range_max.count(set))
            return "range_db: full-covering " + format_set(set) + " is not max-covering";
    return std::nullopt;
}

Finding check_stable_collapse(const ArgumentationFramework& af, std::size_t cap) {
    if (af::extensions(af, Semantics::Stable, cap).empty())
        return std::nullopt;
    const auto attrs = translate::range_attrs(af);
    const auto range = translate::build_range_db(af).instance;
    return compare("full-covering vs max-covering with stable extensions present",
                   covering(range, rdb::Covering::Full, attrs, cap), covering(range, rdb::Covering::Max, attrs, cap));
}

Finding check_range_reduction(const ArgumentationFramework& af, std::size_t cap) {
    const auto attrs = translate::range_attrs(af);
    const auto reduced = translate::build_range_db(af);
    const auto full = translate::build_af_db(af);

    // Full table, but only the FDs and the self-attack ID.
    std::vector<rdb::Dependency> deps;
    const auto self_u = translate::u_column(full.self_symbol);
    for (const auto& dep : full.instance.dependencies())
        if (dep.kind == rdb::DependencyKind::Functional || dep.lhs.front() == self_u)
            deps.push_back(dep);
    const auto widened = full.instance.with_dependencies(std::move(deps));

    for (auto mode : {rdb::Covering::Full, rdb::Covering::Max})
        if (auto finding = compare(mode == rdb::Covering::Full ? "full-covering" : "max-covering",
                                   covering(widened, mode, attrs, cap), covering(reduced.instance, mode, attrs, cap)))
            return finding;
    return std::nullopt;
}

Finding check_symmetric_collapse(const ArgumentationFramework& af, std::size_t cap) {
    const auto maximal = rdb::enumerate_repairs(translate::build_conflict_db(af).instance, RepairClass::Maximal, cap);
    for (auto sem : {Semantics::Naive, Semantics::Stable, Semantics::Preferred})
        if (auto finding = compare("maximal repairs vs " + std::string(af::to_string(sem)),
                                   af::extensions(af, sem, cap), maximal.repairs))
            return finding;
    return std::nullopt;
}

void SuiteSummary::record(const std::string& check, const Finding& finding, std::size_t instance) {
    auto& tally = checks[check];
    if (!finding) {
        ++tally.passed;
        return;
    }
    ++tally.failed;
    if (!tally.first_failure)
        tally.first_failure = "instance " + std::to_string(instance) + ": " + *finding;
}

void SuiteSummary::merge(const SuiteSummary& other) {
    instances += other.instances;
    for (const auto& [name, theirs] : other.checks) {
        auto& ours = checks[name];
        ours.passed += theirs.passed;
        ours.failed += theirs.failed;
        if (!ours.first_failure)
            ours.first_failure = theirs.first_failure;
    }
}

std::size_t SuiteSummary::failures() const {
    std::size_t total = 0;
    for (const auto& [name, tally] : checks)
        total += tally.failed;
    return total;
}

nlohmann::json SuiteSummary::to_json() const {
    nlohmann::json out{{"instances", instances}, {"failures", failures()}, {"ok", ok()}};
    nlohmann::json list = nlohmann::json::object();
    for (const auto& [name, tally] : checks) {
        nlohmann::json entry{{"passed", tally.passed}, {"failed", tally.failed}};
        entry["first_failure"] = tally.first_failure ? nlohmann::json(*tally.first_failure) : nlohmann::json(nullptr);
        list[name] = std::move(entry);
    }
    out["checks"] = std::move(list);
    return out;
}

std::string SuiteSummary::to_text() const {
    std::ostringstream out;
    for (const auto& [name, tally] : checks) {
        out << (tally.failed ? "FAIL " : "PASS ") << name << " " << tally.passed << "/" << tally.passed + tally.failed;
        if (tally.first_failure)
            out << "  first failure: " << *tally.first_failure;
        out << '\n';
    }
    out << "instances: " << instances << ", failures: " << failures() << '\n';
    return out.str();
}

SuiteSummary check_framework(const ArgumentationFramework& af, std::size_t instance, std::size_t lemma_max_args,
                             std::size_t cap, const FaultHook& hook) {
    SuiteSummary summary;
    summary.instances = 1;
    const std::string where = " [" + one_line(af) + "]";
    const auto note = [&](const std::string& check, Finding finding) {
        if (finding)
            *finding += where;
        summary.record(check, finding, instance);
    };

    for (auto sem : correspondence_semantics()) {
        const auto report = check_correspondence(af, sem, cap, hook);
        Finding finding;
        if (!report.verdict)
            finding = std::string(af::to_string(sem)) + " vs " + std::string(rdb::to_string(report.repair_class)) +
                      " repairs of " + std::string(to_string(report.instance_kind)) + ": counterexample " +
                      format_set(*report.counterexample) +
                      (report.extensions.count(*report.counterexample) ? " (extension only)" : " (repair only)");
        note("correspondence/" + std::string(af::to_string(sem)), finding);
    }

    const auto sizes = check_size_bounds(af);
    Finding size_finding;
    for (const auto& c : sizes.checks)
        if (!c.ok && !size_finding)
            size_finding = c.name + " violated: " + std::to_string(c.actual) + " vs " + std::to_string(c.bound);
    note("bounds/table-sizes", size_finding);
    note("bounds/coloring", check_coloring_bound(af));
    note("lemma/compression-equivalence", check_compression_equivalence(af, cap));
    note("lemma/support-is-defense", check_support_is_defense(af));
    if (af.size() <= lemma_max_args)
        note("lemma/range-encoding", check_range_encoding(af));
    note("property/covering-inclusions", check_covering_inclusions(af, cap));
    note("property/stable-collapse", check_stable_collapse(af, cap));
    note("property/range-reduction", check_range_reduction(af, cap));
    return summary;
}

SuiteSummary run_suite(const SuiteConfig& config, const FaultHook& hook) {
    config.validate();
    SuiteSummary summary;
    for (std::size_t i = 0; i < config.instance_count; ++i)
        summary.merge(check_framework(random_af(config, i), i, config.lemma_max_args, config.cap, hook));
    return summary;
}

} // namespace af2db::verify
