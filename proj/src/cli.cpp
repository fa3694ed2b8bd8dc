#include "af2db/cli.hpp"

#include "af2db/argumentation.hpp"
#include "af2db/error.hpp"
#include "af2db/relational.hpp"
#include "af2db/translate.hpp"
#include "af2db/verify.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace af2db::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// All contents are staged under temporary names first, so a failure leaves no
// partial output behind.
void write_files(const fs::path& dir, const std::vector<std::pair<std::string, std::string>>& files) {
    fs::create_directories(dir);
    std::vector<std::pair<fs::path, fs::path>> staged;
    try {
        for (const auto& [name, contents] : files) {
            const fs::path final_path = dir / name;
            fs::path temp = final_path;
            temp += ".tmp";
            std::ofstream out(temp, std::ios::binary | std::ios::trunc);
            staged.emplace_back(temp, final_path);
            if (!(out << contents) || !out.flush())
                throw Error("cannot write '" + temp.string() + "'");
        }
        for (const auto& [temp, final_path] : staged)
            fs::rename(temp, final_path);
    } catch (...) {
        std::error_code ignored;
        for (const auto& [temp, final_path] : staged)
            fs::remove(temp, ignored);
        throw;
    }
}

std::size_t enumeration_cap() {
    const char* raw = std::getenv("AF2DB_ENUM_CAP");
    if (!raw || !*raw)
        return kDefaultEnumerationCap;
    const std::string_view text(raw);
    std::size_t cap = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec != std::errc() || end != text.data() + text.size() || cap > kMaxEnumerationCap)
        throw UsageError("AF2DB_ENUM_CAP must be an integer in [0, " + std::to_string(kMaxEnumerationCap) + "]");
    return cap;
}

af::ArgumentationFramework load_af(const std::string& path, const std::string& format) {
    const auto fmt = format.empty() ? af::format_for_path(path) : format == "tgf" ? af::Format::Tgf : af::Format::Apx;
    return af::parse_af(read_file(path), fmt);
}

rdb::Instance load_table(const std::string& table, const std::string& deps) {
    const auto format = fs::path(table).extension() == ".json" ? rdb::TableFormat::Json : rdb::TableFormat::Csv;
    const std::string dependencies = deps.empty() ? std::string() : read_file(deps);
    return rdb::import_table(read_file(table), format, dependencies);
}

struct TranslateArgs {
    std::string in;
    std::string format;
    std::string target;
    bool no_compress = false;
    std::string out = ".";
    bool json_table = false;
};

int do_translate(const TranslateArgs& args, std::ostream& out) {
    const auto af = load_af(args.in, args.format);
    const auto translation = translate::build(af, translate::parse_target(args.target), !args.no_compress);
    const auto& inst = translation.instance;
    std::vector<std::pair<std::string, std::string>> files;
    if (args.json_table) {
        files.emplace_back(args.target + ".json", rdb::export_json(inst));
    } else {
        files.emplace_back(args.target + ".csv", rdb::export_csv(inst));
        files.emplace_back(args.target + ".deps.json", rdb::export_dependencies(inst));
    }
    files.emplace_back(args.target + ".manifest.json", translate::manifest(translation).dump(2) + "\n");
    write_files(args.out, files);
    for (const auto& [name, contents] : files)
        out << (fs::path(args.out) / name).string() << '\n';
    out << inst.row_count() << " rows, " << inst.column_count() << " columns, " << inst.dependencies().size()
        << " dependencies\n";
    return kExitOk;
}

struct SolveAfArgs {
    std::string in;
    std::string format;
    std::string semantics;
};

int do_solve_af(const SolveAfArgs& args, std::ostream& out) {
    const auto af = load_af(args.in, args.format);
    out << format_family(af::extensions(af, af::parse_semantics(args.semantics), enumeration_cap()));
    return kExitOk;
}

struct SolveDbArgs {
    std::string table;
    std::string deps;
    std::string repair_class;
    std::vector<std::string> attrs;
};

int do_solve_db(const SolveDbArgs& args, std::ostream& out) {
    const auto inst = load_table(args.table, args.deps);
    std::optional<std::vector<std::string>> attrs;
    if (!args.attrs.empty())
        attrs = args.attrs;
    const auto family = rdb::solve(inst, rdb::parse_repair_class(args.repair_class), attrs, enumeration_cap());
    out << format_family(family.repairs);
    return kExitOk;
}

struct VerifyArgs {
    std::string in;
    std::string format;
    bool all = false;
    std::vector<std::string> semantics;
    std::optional<std::size_t> random;
    verify::SuiteConfig config;
    bool json = false;
};

int verify_framework(const VerifyArgs& args, std::ostream& out) {
    const auto af = load_af(args.in, args.format);
    std::vector<af::Semantics> chosen;
    if (args.all || args.semantics.empty())
        chosen = verify::correspondence_semantics();
    for (const auto& tag : args.semantics)
        chosen.push_back(af::parse_semantics(tag));

    const auto cap = enumeration_cap();
    std::size_t passed = 0;
    nlohmann::json results = nlohmann::json::array();
    std::ostringstream text;
    for (auto sem : chosen) {
        const auto report = verify::check_correspondence(af, sem, cap);
        passed += report.verdict ? 1 : 0;
        const std::string sem_name(af::to_string(sem));
        const std::string against = std::string(rdb::to_string(report.repair_class)) + " repairs of " +
                                    std::string(verify::to_string(report.instance_kind));
        nlohmann::json entry{{"semantics", sem_name},
                             {"repair_class", std::string(rdb::to_string(report.repair_class))},
                             {"instance", std::string(verify::to_string(report.instance_kind))},
                             {"extensions", report.extensions.size()},
                             {"repairs", report.repairs.size()},
                             {"pass", report.verdict}};
        entry["counterexample"] =
            report.counterexample ? nlohmann::json(format_set(*report.counterexample)) : nlohmann::json(nullptr);
        results.push_back(std::move(entry));
        text << (report.verdict ? "PASS " : "FAIL ") << sem_name << " vs " << against << ": "
             << report.extensions.size() << " extensions, " << report.repairs.size() << " repairs";
        if (report.counterexample)
            text << ", counterexample " << format_set(*report.counterexample);
        text << '\n';
    }
    const bool ok = passed == chosen.size();
    if (args.json) {
        out << nlohmann::json{{"results", results}, {"passed", passed}, {"total", chosen.size()}, {"ok", ok}}.dump(2)
            << '\n';
    } else {
        out << text.str() << passed << "/" << chosen.size() << " correspondences pass\n";
    }
    return ok ? kExitOk : kExitVerificationFailed;
}

int verify_random(VerifyArgs args, std::ostream& out) {
    args.config.instance_count = *args.random;
    args.config.cap = enumeration_cap();
    const auto summary = verify::run_suite(args.config);
    if (args.json)
        out << summary.to_json().dump(2) << '\n';
    else
        out << summary.to_text();
    return summary.ok() ? kExitOk : kExitVerificationFailed;
}

struct ExampleArgs {
    std::string out = ".";
};

int do_example(const ExampleArgs& args, std::ostream& out) {
    std::vector<std::pair<std::string, std::string>> files;
    for (const auto& entry : example_files())
        files.push_back(entry);
    write_files(args.out, files);
    for (const auto& [name, contents] : files)
        out << (fs::path(args.out) / name).string() << '\n';
    return kExitOk;
}

} // namespace

std::map<std::string, std::string> example_files() {
    const af::ArgumentationFramework ex1(
        {"a", "b", "c", "d"}, {{"a", "b"}, {"b", "a"}, {"a", "c"}, {"b", "c"}, {"c", "d"}, {"d", "c"}, {"a", "d"}});

    using rdb::Dependency;
    const rdb::Instance schedule(
        {"Tutor", "Time", "Room", "Course", "Advisor"},
        {{"s1", {"Alice", "TS-1", "A10", "Logic-I", "Alice"}},
         {"s2", {"Alice", "TS-1", "B20", "Algorithms", "Carol"}},
         {"s3", {"Bob", "TS-2", "B20", "Statistics", "Alice"}},
         {"s4", {"Bob", "TS-2", "C30", "Calculus", "Bob"}},
         {"s5", {"Carol", "TS-3", "C30", "Calculus", "Bob"}},
         {"s6", {"Carol", "TS-3", "B20", "Algorithms", "Dave"}}},
        {Dependency::functional({"Tutor", "Time"}, {"Room"}), Dependency::inclusion({"Advisor"}, {"Tutor"})});

    return {{"ex1.apx", af::to_apx(ex1)},
            {"table2.csv", rdb::export_csv(schedule)},
            {"table2.deps.json", rdb::export_dependencies(schedule)}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Translate argumentation frameworks into inconsistent databases and compare extensions with repairs.",
                 "af2db"};
    app.require_subcommand(1, 1);
    const auto format_check = CLI::IsMember({"apx", "tgf"});

    TranslateArgs tr;
    auto* translate_cmd = app.add_subcommand("translate", "Build a database from a framework");
    translate_cmd->add_option("--in", tr.in, "Framework file (.apx or .tgf)")->required()->check(CLI::ExistingFile);
    translate_cmd->add_option("--format", tr.format, "Input format (default: by extension)")->check(format_check);
    translate_cmd->add_option("--target", tr.target, "Database to build")
        ->required()
        ->check(CLI::IsMember({"conflict", "defense", "afdb", "range"}));
    translate_cmd->add_flag("--no-compress", tr.no_compress, "One conflict column per conflict (conflict target)");
    translate_cmd->add_option("--out", tr.out, "Output directory")->capture_default_str();
    translate_cmd->add_flag("--json-table", tr.json_table, "Write <target>.json instead of CSV + dependency file");

    SolveAfArgs saf;
    auto* solve_af_cmd = app.add_subcommand("solve-af", "Print the extensions of a framework");
    solve_af_cmd->add_option("--in", saf.in, "Framework file")->required()->check(CLI::ExistingFile);
    solve_af_cmd->add_option("--format", saf.format, "Input format (default: by extension)")->check(format_check);
    solve_af_cmd->add_option("--semantics", saf.semantics, "Semantics")->required();

    SolveDbArgs sdb;
    auto* solve_db_cmd = app.add_subcommand("solve-db", "Print the repairs of a database");
    solve_db_cmd->add_option("--table", sdb.table, "Table (.csv or .json)")->required()->check(CLI::ExistingFile);
    solve_db_cmd->add_option("--deps", sdb.deps, "Dependency file")->check(CLI::ExistingFile);
    solve_db_cmd->add_option("--class", sdb.repair_class, "Repair class")
        ->required()
        ->check(CLI::IsMember({"all", "maximal", "max-covering", "full-covering"}));
    solve_db_cmd->add_option("--attrs", sdb.attrs, "Attributes for covering repairs (default: all)")->delimiter(',');

    VerifyArgs ver;
    auto* verify_cmd = app.add_subcommand("verify", "Check extension/repair correspondences");
    auto* in_opt = verify_cmd->add_option("--in", ver.in, "Framework file")->check(CLI::ExistingFile);
    verify_cmd->add_option("--format", ver.format, "Input format (default: by extension)")->check(format_check);
    verify_cmd->add_flag("--all", ver.all, "All seven semantics (default)");
    verify_cmd->add_option("--semantics", ver.semantics, "Semantics to check")->delimiter(',');
    auto* random_opt = verify_cmd->add_option("--random", ver.random, "Number of random frameworks");
    verify_cmd->add_option("--max-args", ver.config.max_args, "Largest random framework")->capture_default_str();
    verify_cmd->add_option("--seed", ver.config.seed, "Random seed")->capture_default_str();
    verify_cmd->add_option("--attack-prob", ver.config.attack_probability, "Attack probability")
        ->capture_default_str();
    verify_cmd->add_option("--loop-prob", ver.config.self_loop_probability, "Self-attack probability")
        ->capture_default_str();
    verify_cmd->add_option("--lemma-max-args", ver.config.lemma_max_args, "Largest framework for subset lemmas")
        ->capture_default_str();
    verify_cmd->add_flag("--json", ver.json, "JSON output");
    in_opt->excludes(random_opt);

    ExampleArgs ex;
    auto* example_cmd = app.add_subcommand("example", "Write the bundled example framework and table");
    example_cmd->add_option("--out", ex.out, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
        if (verify_cmd->parsed() && ver.in.empty() && !ver.random)
            throw CLI::ValidationError("verify", "one of --in or --random is required");
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (translate_cmd->parsed())
            return do_translate(tr, out);
        if (solve_af_cmd->parsed())
            return do_solve_af(saf, out);
        if (solve_db_cmd->parsed())
            return do_solve_db(sdb, out);
        if (verify_cmd->parsed())
            return ver.random ? verify_random(ver, out) : verify_framework(ver, out);
        return do_example(ex, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    std::vector<const char*> raw;
    raw.reserve(argv.size());
    for (const auto& arg : argv)
        raw.push_back(arg.c_str());
    return run(static_cast<int>(raw.size()), raw.data(), out, err);
}

} // namespace af2db::cli
