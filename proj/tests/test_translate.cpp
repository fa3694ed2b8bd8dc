#include "af2db/error.hpp"
#include "af2db/translate.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>

using namespace af2db;
using af::ArgumentationFramework;
using translate::EdgeColoring;

namespace {

using Rows = std::vector<std::vector<std::string>>;

ArgumentationFramework ex1() {
    return {{"a", "b", "c", "d"},
            {{"a", "b"}, {"b", "a"}, {"a", "c"}, {"b", "c"}, {"c", "d"}, {"d", "c"}, {"a", "d"}}};
}

// Conflict labels as drawn in the running example's figure.
const std::map<std::string, std::pair<std::string, std::string>> kFigureConflicts{
    {"r1", {"a", "b"}}, {"r2", {"a", "c"}}, {"r3", {"b", "c"}}, {"r4", {"c", "d"}}, {"r5", {"a", "d"}}};

// The figure's coloring: blue {r1,r4}, red {r3,r5}, gray {r2}; blue, red, gray
// in that order become the first, second and third conflict column.
EdgeColoring figure_coloring(const std::vector<translate::Conflict>& conflicts) {
    const std::map<std::pair<std::string, std::string>, std::size_t> color{
        {{"a", "b"}, 0}, {{"c", "d"}, 0}, {{"a", "d"}, 1}, {{"b", "c"}, 1}, {{"a", "c"}, 2}};
    EdgeColoring out;
    for (const auto& c : conflicts)
        out.color_of.push_back(color.at({c.first, c.second}));
    return out;
}

// Reads the built table through the manifest: each requested column is either
// a plain attribute or "@r<k>", meaning the column holding the figure's conflict
// r<k>. Conflict ids in cells are renamed to the figure's labels.
Rows render(const translate::Translation& t, const std::vector<std::string>& columns) {
    const auto doc = translate::manifest(t);
    std::map<std::string, std::string> to_figure;
    std::map<std::string, std::string> attribute_of_figure;
    for (const auto& entry : doc.at("conflicts")) {
        const std::pair<std::string, std::string> pair{entry.at("endpoints")[0], entry.at("endpoints")[1]};
        for (const auto& [label, endpoints] : kFigureConflicts)
            if (endpoints == pair) {
                to_figure[entry.at("id")] = label;
                attribute_of_figure[label] = entry.at("attribute");
            }
    }
    Rows out;
    for (const auto& tuple : t.instance.tuples()) {
        std::vector<std::string> row;
        for (const auto& column : columns) {
            const auto attr = column.front() == '@' ? attribute_of_figure.at(column.substr(1)) : column;
            const auto& value = t.instance.value(tuple.id, attr);
            row.push_back(to_figure.count(value) ? to_figure.at(value) : value);
        }
        out.push_back(row);
    }
    return out;
}

std::size_t count_kind(const rdb::Instance& inst, rdb::DependencyKind kind) {
    return static_cast<std::size_t>(std::count_if(inst.dependencies().begin(), inst.dependencies().end(),
                                                  [&](const rdb::Dependency& d) { return d.kind == kind; }));
}

} // namespace

TEST_CASE("golden: uncompressed conflict database") {
    const auto t = translate::build_conflict_db(ex1(), false);
    CHECK(t.instance.row_count() == 4);
    CHECK(t.instance.column_count() == 6);
    CHECK(t.instance.dependencies().size() == 5);
    const Rows expected{{"r1", "r2", "a", "a", "r5", "a"},
                        {"r1", "b", "r3", "b", "b", "b"},
                        {"c", "r2", "r3", "r4", "c", "c"},
                        {"d", "d", "d", "r4", "r5", "d"}};
    CHECK(render(t, {"@r1", "@r2", "@r3", "@r4", "@r5", "n"}) == expected);
    CHECK(t.instance.schema() == std::vector<std::string>{"x1", "x2", "x3", "x4", "x5", "n"});
}

TEST_CASE("golden: compressed conflict database with the figure's coloring") {
    const auto conflicts = translate::canonical_conflicts(ex1());
    const auto t = translate::build_conflict_db(ex1(), figure_coloring(conflicts));
    CHECK(t.instance.schema() == std::vector<std::string>{"x_c1", "x_c2", "x_c3", "n"});
    const Rows expected{{"r1", "r5", "r2", "a"}, {"r1", "r3", "b", "b"}, {"r4", "r3", "r2", "c"}, {"r4", "r5", "d", "d"}};
    CHECK(render(t, {"x_c1", "x_c2", "x_c3", "n"}) == expected);
}

TEST_CASE("golden: defense database") {
    const auto t = translate::build_defense_db(ex1());
    const std::vector<std::string> columns{"u_a", "v_a", "u_b", "v_b", "u_c", "v_c", "u_d", "v_d"};
    CHECK(t.instance.schema() == columns);
    const Rows expected{{"0", "0", "b", "b", "c", "c", "d", "d"},
                        {"a", "a", "0", "0", "c", "c", "0", "0"},
                        {"a", "0", "b", "0", "0", "0", "d", "d"},
                        {"a", "0", "0", "0", "c", "c", "0", "0"}};
    CHECK(render(t, columns) == expected);
    CHECK(count_kind(t.instance, rdb::DependencyKind::Inclusion) == 4);
}

TEST_CASE("golden: AF database") {
    const auto f = ex1();
    const auto t = translate::build_af_db(f, figure_coloring(translate::canonical_conflicts(f)));
    CHECK(t.instance.column_count() == 14);
    for (const auto& id : t.instance.tuple_ids()) {
        CHECK(t.instance.value(id, "u_s") == "0");
        CHECK(t.instance.value(id, "v_s") == "0");
    }
    const Rows expected{{"r1", "r5", "r2", "a", "0", "0", "b", "b", "c", "c", "d", "d"},
                        {"r1", "r3", "b", "b", "a", "a", "0", "0", "c", "c", "0", "0"},
                        {"r4", "r3", "r2", "c", "a", "0", "b", "0", "0", "0", "d", "d"},
                        {"r4", "r5", "d", "d", "a", "0", "0", "0", "c", "c", "0", "0"}};
    CHECK(render(t, {"x_c1", "x_c2", "x_c3", "n", "u_a", "v_a", "u_b", "v_b", "u_c", "v_c", "u_d", "v_d"}) ==
          expected);
    CHECK(count_kind(t.instance, rdb::DependencyKind::Functional) == 3);
    CHECK(count_kind(t.instance, rdb::DependencyKind::Inclusion) == 5);
}

TEST_CASE("range database drops u columns and defense dependencies") {
    const auto f = ex1();
    const auto t = translate::build_range_db(f);
    const auto& schema = t.instance.schema();
    CHECK(std::find(schema.begin(), schema.end(), "u_a") == schema.end());
    CHECK(std::find(schema.begin(), schema.end(), "v_a") != schema.end());
    CHECK(count_kind(t.instance, rdb::DependencyKind::Inclusion) == 1);
    CHECK(t.instance.column_count() == t.coloring.color_count() + f.size() + 3);
    CHECK(translate::range_attrs(f) == std::vector<std::string>{"v_a", "v_b", "v_c", "v_d", "n"});
}

TEST_CASE("defense database repairs of the running example") {
    const auto t = translate::build_defense_db(ex1());
    const auto repairs = oracle::to_sets(rdb::enumerate_repairs(t.instance, rdb::RepairClass::All).repairs);
    CHECK(repairs.count({"a"}));
    CHECK(repairs.count({"b"}));
    CHECK(repairs.count({"a", "b", "c"}));
    CHECK(!repairs.count({"c"}));
    CHECK(!repairs.count({"d"}));
}

TEST_CASE("self-attackers") {
    const ArgumentationFramework f({"a", "b", "s"}, {{"a", "a"}, {"a", "b"}, {"b", "s"}});
    CHECK(translate::self_attack_symbol(f) == "s'");
    const auto afdb = translate::build_af_db(f);
    CHECK(afdb.self_symbol == "s'");
    CHECK(afdb.instance.value("a", "u_s'") == "a");
    CHECK(afdb.instance.value("a", "v_s'") == "0");
    CHECK(afdb.instance.value("b", "u_s'") == "0");
    CHECK(afdb.conflicts.size() == 1);
    CHECK(afdb.instance.value("a", "v_a") == "0");
    CHECK(afdb.instance.value("a", "v_b") == "b");

    const auto conflict = translate::build_conflict_db(f);
    CHECK(conflict.instance.tuple_ids() == NameSet{"b", "s"});

    const auto defense = translate::build_defense_db(f);
    CHECK(defense.instance.value("a", "u_a") == "a");
    CHECK(defense.instance.value("a", "v_a") == "a");
}

TEST_CASE("argument names must not collide with conflict ids") {
    const ArgumentationFramework f({"r1", "b"}, {{"r1", "b"}});
    CHECK_THROWS_AS(translate::build_conflict_db(f), Error);
    CHECK_THROWS_AS(translate::build_af_db(f), Error);
    CHECK_NOTHROW(translate::build_defense_db(f));
    CHECK_NOTHROW(translate::build_conflict_db(ArgumentationFramework({"r1"}, {})));
}

TEST_CASE("supplied colorings must be proper and dense") {
    const auto f = ex1();
    const auto conflicts = translate::canonical_conflicts(f);
    CHECK_THROWS_AS(translate::build_conflict_db(f, EdgeColoring{{0, 0, 1, 1, 0}}), Error);
    CHECK_THROWS_AS(translate::build_conflict_db(f, EdgeColoring{{0, 3, 1, 1, 0}}), Error);
    CHECK_THROWS_AS(translate::build_conflict_db(f, EdgeColoring{{0, 2, 1}}), Error);
    CHECK(translate::is_proper(conflicts, figure_coloring(conflicts)));
}

TEST_CASE("canonical conflicts") {
    const auto conflicts = translate::canonical_conflicts(ex1());
    REQUIRE(conflicts.size() == 5);
    CHECK(conflicts[0] == translate::Conflict{"r1", "a", "b"});
    CHECK(conflicts[2] == translate::Conflict{"r3", "a", "d"});
    CHECK(conflicts[4] == translate::Conflict{"r5", "c", "d"});
}

TEST_CASE("Misra-Gries colorings are proper with at most max degree + 1 colors") {
    std::mt19937 rng(31);
    for (int i = 0; i < 300; ++i) {
        const auto f = af::strip_self_attackers(oracle::random_framework(rng, 14, 0.3, 0.0));
        const auto conflicts = translate::canonical_conflicts(f);
        const auto coloring = translate::edge_color(conflicts, f);
        INFO(af::to_apx(f));
        CHECK(translate::is_proper(conflicts, coloring));
        CHECK(coloring.color_count() <= af::degree(f) + 1);
    }
    // Complete graphs are the densest case.
    for (std::size_t n = 2; n <= 12; ++n) {
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                edges.emplace_back(u, v);
        const auto colors = translate::misra_gries(n, edges);
        std::set<std::pair<std::size_t, std::size_t>> used;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            CHECK(colors[e] <= n - 1);
            CHECK(used.insert({edges[e].first, colors[e]}).second);
            CHECK(used.insert({edges[e].second, colors[e]}).second);
        }
    }
}

TEST_CASE("a star with k edges needs exactly k colors") {
    for (std::size_t k = 1; k <= 9; ++k) {
        std::vector<std::string> names{"hub"};
        std::vector<std::pair<std::string, std::string>> attacks;
        for (std::size_t i = 0; i < k; ++i) {
            names.push_back("leaf" + std::to_string(i));
            attacks.emplace_back("hub", names.back());
        }
        const ArgumentationFramework star(names, attacks);
        const auto t = translate::build_conflict_db(star);
        CHECK(t.coloring.color_count() == k);
        CHECK(t.instance.dependencies().size() == k);
    }
    CHECK_THROWS_AS(translate::misra_gries(2, {{0, 0}}), Error);
    CHECK_THROWS_AS(translate::misra_gries(2, {{0, 5}}), Error);
}

TEST_CASE("compression preserves the repairs of every subset") {
    std::mt19937 rng(32);
    for (int i = 0; i < 150; ++i) {
        const auto f = oracle::random_framework(rng, 7, 0.35, 0.1);
        const auto plain = translate::build_conflict_db(f, false).instance;
        const auto compressed = translate::build_conflict_db(f, true).instance;
        INFO(af::to_apx(f));
        for (const auto& p : oracle::powerset(plain.tuple_ids()))
            CHECK(rdb::is_repair(plain, p) == rdb::is_repair(compressed, p));
    }
}

TEST_CASE("conflict database rows share a value only across a conflict") {
    std::mt19937 rng(33);
    for (int i = 0; i < 150; ++i) {
        const auto f = oracle::random_framework(rng, 8, 0.3, 0.1);
        const oracle::Framework ref(f);
        for (bool compress : {false, true}) {
            const auto inst = translate::build_conflict_db(f, compress).instance;
            const auto ids = inst.tuple_ids();
            for (const auto& s : ids)
                for (const auto& t : ids) {
                    if (s >= t)
                        continue;
                    bool shared = false;
                    for (const auto& attr : inst.schema())
                        if (attr != "n")
                            shared = shared || inst.value(s, attr) == inst.value(t, attr);
                    if (shared)
                        CHECK((ref.attacks(s, t) || ref.attacks(t, s)));
                }
        }
    }
}

TEST_CASE("targets and manifest") {
    for (auto target : {translate::Target::Conflict, translate::Target::Defense, translate::Target::AfDb,
                        translate::Target::Range})
        CHECK(translate::parse_target(translate::to_string(target)) == target);
    CHECK_THROWS_AS(translate::parse_target("graph"), Error);

    const auto t = translate::build(ex1(), translate::Target::AfDb);
    const auto doc = translate::manifest(t);
    CHECK(doc.at("target") == "afdb");
    CHECK(doc.at("compressed") == true);
    CHECK(doc.at("rows") == 4);
    CHECK(doc.at("self_attack_symbol") == "s");
    CHECK(doc.at("colors") == t.coloring.color_count());
    CHECK(doc.at("conflicts").size() == 5);
    CHECK(doc.at("columns").size() == t.instance.column_count());
    CHECK(doc.at("dependencies").size() == t.instance.dependencies().size());

    const auto plain = translate::manifest(translate::build(ex1(), translate::Target::Conflict, false));
    CHECK(plain.at("compressed") == false);
    CHECK(plain.at("conflicts")[0].at("color").is_null());
    CHECK(plain.at("conflicts")[0].at("attribute") == "x1");
}

TEST_CASE("translation is deterministic") {
    std::mt19937 rng(34);
    for (int i = 0; i < 30; ++i) {
        const auto f = oracle::random_framework(rng, 12, 0.3, 0.1);
        for (auto target : {translate::Target::Conflict, translate::Target::Defense, translate::Target::AfDb,
                            translate::Target::Range}) {
            const auto a = translate::build(f, target);
            const auto b = translate::build(f, target);
            CHECK(a.instance == b.instance);
            CHECK(translate::manifest(a) == translate::manifest(b));
        }
    }
}
