#include "af2db/error.hpp"
#include "af2db/relational.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace af2db;
using rdb::Dependency;
using rdb::Instance;
using rdb::RepairClass;

namespace {

Instance schedule() {
    return Instance({"Tutor", "Time", "Room", "Course", "Advisor"},
                    {{"s1", {"Alice", "TS-1", "A10", "Logic-I", "Alice"}},
                     {"s2", {"Alice", "TS-1", "B20", "Algorithms", "Carol"}},
                     {"s3", {"Bob", "TS-2", "B20", "Statistics", "Alice"}},
                     {"s4", {"Bob", "TS-2", "C30", "Calculus", "Bob"}},
                     {"s5", {"Carol", "TS-3", "C30", "Calculus", "Bob"}},
                     {"s6", {"Carol", "TS-3", "B20", "Algorithms", "Dave"}}},
                    {Dependency::functional({"Tutor", "Time"}, {"Room"}), Dependency::inclusion({"Advisor"}, {"Tutor"})});
}

const std::vector<std::string> kTutorTimeRoom{"Tutor", "Time", "Room"};

// Small random tables over a tiny value alphabet so that dependencies clash often.
Instance random_instance(std::mt19937& rng, std::size_t max_rows) {
    const std::vector<std::string> schema{"A", "B", "C", "D"};
    std::uniform_int_distribution<std::size_t> rows(0, max_rows);
    std::uniform_int_distribution<int> value(0, 2);
    std::uniform_int_distribution<std::size_t> attr(0, schema.size() - 1);
    std::uniform_int_distribution<int> dep_count(0, 3);
    std::bernoulli_distribution coin(0.5);

    std::vector<rdb::Tuple> tuples;
    const auto n = rows(rng);
    for (std::size_t i = 0; i < n; ++i) {
        rdb::Tuple t{"t" + std::to_string(i), {}};
        for (std::size_t a = 0; a < schema.size(); ++a)
            t.values.push_back(std::string(1, static_cast<char>('p' + value(rng))));
        tuples.push_back(std::move(t));
    }
    std::vector<Dependency> deps;
    for (int d = dep_count(rng); d > 0; --d) {
        const auto x = schema[attr(rng)];
        const auto y = schema[attr(rng)];
        if (coin(rng)) {
            deps.push_back(Dependency::functional({x}, {y}));
        } else if (coin(rng)) {
            deps.push_back(Dependency::inclusion({x}, {y}));
        } else {
            deps.push_back(Dependency::inclusion({x, schema[attr(rng)]}, {y, schema[attr(rng)]}));
        }
    }
    std::stable_partition(deps.begin(), deps.end(),
                          [](const Dependency& d) { return d.kind == rdb::DependencyKind::Functional; });
    return Instance(schema, std::move(tuples), std::move(deps));
}

} // namespace

TEST_CASE("schedule table: maximal repairs pick one tuple from each clash") {
    const auto db = schedule();
    const auto maximal = oracle::to_sets(rdb::enumerate_repairs(db, RepairClass::Maximal).repairs);
    oracle::Sets expected;
    for (const auto* x : {"s1", "s2"})
        for (const auto* y : {"s3", "s4"})
            expected.insert({x, y, "s5"});
    CHECK(maximal == expected);
    CHECK(maximal.size() == 4);

    const auto all = oracle::to_sets(rdb::enumerate_repairs(db, RepairClass::All).repairs);
    for (const oracle::Set& s : {oracle::Set{"s1"}, oracle::Set{"s4"}, oracle::Set{"s1", "s3"}}) {
        CHECK(all.count(s));
        CHECK(!maximal.count(s));
    }
    CHECK(!rdb::is_repair(db, {"s6"}));
    CHECK(!rdb::is_repair(db, {"s1", "s2"}));
}

TEST_CASE("schedule table: covering repairs") {
    const auto db = schedule();
    const auto max_all = oracle::to_sets(rdb::solve(db, RepairClass::MaxCovering).repairs);
    CHECK(max_all.count({"s1", "s3", "s5"}));
    CHECK(max_all.count({"s2", "s3", "s5"}));
    CHECK(!max_all.count({"s1", "s4", "s5"}));

    const auto full_ttr = oracle::to_sets(rdb::solve(db, RepairClass::FullCovering, kTutorTimeRoom).repairs);
    CHECK(full_ttr.count({"s1", "s3", "s5"}));
    CHECK(!full_ttr.count({"s2", "s3", "s5"}));

    CHECK(rdb::solve(db, RepairClass::FullCovering).repairs.empty());

    const oracle::Database ref(db);
    CHECK(max_all == ref.max_covering(db.schema()));
    CHECK(full_ttr == ref.full_covering(kTutorTimeRoom));
    const auto witness = rdb::solve(db, RepairClass::MaxCovering).witness_attrs;
    REQUIRE(witness);
    CHECK(*witness == db.schema());
}

TEST_CASE("satisfaction and support sets") {
    const auto db = schedule();
    const auto& fd = db.dependencies()[0];
    const auto& id = db.dependencies()[1];
    CHECK(rdb::satisfies({"s1", "s3"}, fd, db));
    CHECK(!rdb::satisfies({"s3", "s4"}, fd, db));
    CHECK(rdb::satisfies({}, id, db));
    CHECK(!rdb::satisfies({"s3"}, id, db));
    CHECK(rdb::support_set(db, id, "s3") == NameSet{"s1", "s2"});
    CHECK(rdb::support_set(db, id, "s6").empty());
    CHECK_THROWS_AS(rdb::support_set(db, fd, "s3"), Error);
    CHECK_THROWS_AS(rdb::satisfies({"zz"}, fd, db), Error);
    CHECK(rdb::to_string(fd) == "Tutor,Time -> Room");
    CHECK(rdb::to_string(id) == "Advisor <= Tutor");
}

TEST_CASE("instance validation") {
    CHECK_THROWS_AS(Instance({"A", "A"}, {}, {}), Error);
    CHECK_THROWS_AS(Instance({"_id"}, {}, {}), Error);
    CHECK_THROWS_AS(Instance({""}, {}, {}), Error);
    CHECK_THROWS_AS(Instance({"A"}, {{"t", {"1"}}, {"t", {"2"}}}, {}), Error);
    CHECK_THROWS_AS(Instance({"A"}, {{"t", {"1", "2"}}}, {}), Error);
    CHECK_THROWS_AS(Instance({"A"}, {{"", {"1"}}}, {}), Error);
    CHECK_THROWS_AS(Instance({"A"}, {}, {Dependency::functional({"A"}, {"B"})}), Error);
    CHECK_THROWS_AS(Instance({"A", "B"}, {}, {Dependency::inclusion({"A", "B"}, {"A"})}), Error);
    const auto db = schedule();
    CHECK(db.value("s4", "Room") == "C30");
    CHECK_THROWS_AS(db.value("s9", "Room"), Error);
    CHECK_THROWS_AS(db.attribute_index("Floor"), Error);
}

TEST_CASE("repair classes parse and covering classes are rejected by enumerate_repairs") {
    for (auto rc : {RepairClass::All, RepairClass::Maximal, RepairClass::MaxCovering, RepairClass::FullCovering})
        CHECK(rdb::parse_repair_class(rdb::to_string(rc)) == rc);
    CHECK_THROWS_AS(rdb::parse_repair_class("minimal"), Error);
    CHECK_THROWS_AS(rdb::enumerate_repairs(schedule(), RepairClass::MaxCovering), Error);
    CHECK_THROWS_AS(rdb::enumerate_repairs(schedule(), RepairClass::All, 5), CapExceeded);
}

TEST_CASE("empty table has exactly the empty repair") {
    const Instance empty({"A"}, {}, {Dependency::functional({"A"}, {"A"})});
    const oracle::Sets just_empty{oracle::Set{}};
    for (auto rc : {RepairClass::All, RepairClass::Maximal, RepairClass::MaxCovering, RepairClass::FullCovering})
        CHECK(oracle::to_sets(rdb::solve(empty, rc).repairs) == just_empty);
}

TEST_CASE("repair enumeration agrees with the literal oracle") {
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto db = random_instance(rng, 7);
        INFO(rdb::export_csv(db) << rdb::export_dependencies(db));
        const oracle::Database ref(db);
        const auto all = ref.repairs();
        CHECK(oracle::to_sets(rdb::enumerate_repairs(db, RepairClass::All).repairs) == all);
        CHECK(oracle::to_sets(rdb::enumerate_repairs(db, RepairClass::Maximal).repairs) == oracle::maximal(all));
        const std::vector<std::string> attrs{"A", "C"};
        CHECK(oracle::to_sets(rdb::solve(db, RepairClass::MaxCovering, attrs).repairs) == ref.max_covering(attrs));
        CHECK(oracle::to_sets(rdb::solve(db, RepairClass::FullCovering, attrs).repairs) == ref.full_covering(attrs));
        for (const auto& s : oracle::powerset(db.tuple_ids()))
            CHECK(rdb::is_repair(db, s) == ref.satisfies(s));
    }
}

TEST_CASE("subset scan and pruned search agree") {
    std::mt19937 rng(12);
    for (int i = 0; i < 200; ++i) {
        const auto db = random_instance(rng, 9);
        for (auto mode : {RepairClass::All, RepairClass::Maximal}) {
            const auto scan = rdb::enumerate_repairs(db, mode, kDefaultEnumerationCap, rdb::SearchStrategy::SubsetScan);
            const auto pruned = rdb::enumerate_repairs(db, mode, kDefaultEnumerationCap, rdb::SearchStrategy::Pruned);
            CHECK(scan.repairs == pruned.repairs);
        }
    }
}

TEST_CASE("functional dependency violations are monotone") {
    std::mt19937 rng(13);
    for (int i = 0; i < 100; ++i) {
        const auto db = random_instance(rng, 6);
        for (const auto& dep : db.dependencies()) {
            if (dep.kind != rdb::DependencyKind::Functional)
                continue;
            for (const auto& b : oracle::powerset(db.tuple_ids())) {
                if (!rdb::satisfies(b, dep, db))
                    continue;
                for (const auto& a : oracle::powerset(b))
                    CHECK(rdb::satisfies(a, dep, db));
            }
        }
    }
}

TEST_CASE("inclusion dependencies are satisfied exactly when every tuple has support") {
    std::mt19937 rng(14);
    for (int i = 0; i < 100; ++i) {
        const auto db = random_instance(rng, 6);
        for (const auto& dep : db.dependencies()) {
            if (dep.kind != rdb::DependencyKind::Inclusion)
                continue;
            for (const auto& s : oracle::powerset(db.tuple_ids())) {
                bool supported = true;
                for (const auto& t : s) {
                    const auto support = rdb::support_set(db, dep, t);
                    supported = supported && std::any_of(support.begin(), support.end(),
                                                         [&](const std::string& u) { return s.count(u) > 0; });
                }
                CHECK(rdb::satisfies(s, dep, db) == supported);
            }
        }
    }
}

TEST_CASE("covering inclusions") {
    std::mt19937 rng(15);
    for (int i = 0; i < 150; ++i) {
        const auto db = random_instance(rng, 7);
        const std::vector<std::string> attrs{"B", "D"};
        const auto full = rdb::solve(db, RepairClass::FullCovering, attrs).repairs;
        const auto max = rdb::solve(db, RepairClass::MaxCovering, attrs).repairs;
        for (const auto& s : full)
            CHECK(max.count(s));
    }

    // With a column that tells tuples apart, every added tuple grows the domain,
    // so maximally covering repairs are subset-maximal.
    const auto db = schedule();
    const auto maximal = rdb::enumerate_repairs(db, RepairClass::Maximal).repairs;
    for (const auto& s : rdb::solve(db, RepairClass::MaxCovering).repairs)
        CHECK(maximal.count(s));
    CHECK(maximal.count({"s1", "s4", "s5"}));
}

TEST_CASE("maximally covering need not be subset-maximal when tuples repeat values") {
    const Instance twins({"A"}, {{"t1", {"x"}}, {"t2", {"x"}}}, {});
    const auto max_cov = oracle::to_sets(rdb::solve(twins, RepairClass::MaxCovering).repairs);
    const auto maximal = oracle::to_sets(rdb::solve(twins, RepairClass::Maximal).repairs);
    CHECK(max_cov == oracle::Sets{{"t1"}, {"t2"}, {"t1", "t2"}});
    CHECK(maximal == oracle::Sets{{"t1", "t2"}});
}

TEST_CASE("projection domain") {
    const auto db = schedule();
    CHECK(rdb::projection_domain(db, {"s1", "s3"}, {"Room"}) == std::set<std::string>{"A10", "B20"});
    CHECK(rdb::projection_domain(db, {}, {"Room"}).empty());
}

TEST_CASE("CSV and JSON round-trip") {
    std::mt19937 rng(16);
    for (int i = 0; i < 50; ++i) {
        const auto db = random_instance(rng, 6);
        CHECK(rdb::import_csv(rdb::export_csv(db), rdb::export_dependencies(db)) == db);
        CHECK(rdb::import_json(rdb::export_json(db)) == db);
    }
    const Instance awkward({"A", "B c"}, {{"t,1", {"x\"y", ""}}, {"t2", {"line\nbreak", " lead"}}}, {});
    CHECK(rdb::import_csv(rdb::export_csv(awkward)) == awkward);
    CHECK(rdb::import_json(rdb::export_json(awkward)) == awkward);
    CHECK(rdb::import_table(rdb::export_table(awkward, rdb::TableFormat::Json), rdb::TableFormat::Json) == awkward);

    const auto db = schedule();
    const auto deps = rdb::export_dependencies(db);
    CHECK(rdb::import_dependencies(deps) == db.dependencies());
    const auto bare = db.with_dependencies({});
    CHECK(rdb::import_table(rdb::export_json(bare), rdb::TableFormat::Json, deps) == db);
}

TEST_CASE("CSV errors") {
    const auto line_of = [](const std::string& csv) {
        try {
            (void)rdb::import_csv(csv);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{99};
    };
    CHECK(line_of("id,A\nt,1\n") == 1);
    CHECK(line_of("_id,A\nt1,1\nt2,1,2\n") == 3);
    CHECK(line_of("_id,A\nt1,1\nt1,2\n") == 3);
    CHECK(line_of("_id,A\nt1,\"open\n") == 2);
    CHECK(line_of("") == 1);
    CHECK_THROWS_AS(rdb::import_csv("_id,A\nt1,1\n", "{\"fds\":[{\"lhs\":[\"A\"]}]}"), ParseError);
    CHECK_THROWS_AS(rdb::import_csv("_id,A\nt1,1\n", "not json"), ParseError);
    CHECK_THROWS_AS(rdb::import_csv("_id,A\nt1,1\n", "{\"fds\":[{\"lhs\":[\"A\"],\"rhs\":[\"Z\"]}]}"), Error);
    CHECK_THROWS_AS(rdb::import_json("{\"schema\":[\"A\"]}"), ParseError);
}
