#include "af2db/argumentation.hpp"

#include "af2db/error.hpp"
#include "subset_lattice.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <sstream>

namespace af2db::af {

namespace {

constexpr std::array<std::pair<Semantics, std::string_view>, 8> kTags{{
    {Semantics::ConflictFree, "conflict-free"},
    {Semantics::Naive, "naive"},
    {Semantics::Admissible, "admissible"},
    {Semantics::Complete, "complete"},
    {Semantics::Preferred, "preferred"},
    {Semantics::Stable, "stable"},
    {Semantics::SemiStable, "semi-stable"},
    {Semantics::Stage, "stage"},
}};

bool is_name_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',' &&
           c != '.' && c != '#';
}

std::string check_name(std::string_view name) {
    if (name.empty())
        return "empty argument name";
    if (name == "0")
        return "argument name '0' is reserved";
    if (!std::all_of(name.begin(), name.end(), is_name_char))
        return "invalid character in argument name '" + std::string(name) + "'";
    return {};
}

struct RawAttack {
    std::string attacker;
    std::string target;
    std::size_t line;
};

struct RawFramework {
    std::vector<std::string> arguments;
    std::vector<RawAttack> attacks;
};

ArgumentationFramework assemble(RawFramework raw) {
    NameSet declared(raw.arguments.begin(), raw.arguments.end());
    std::vector<std::pair<std::string, std::string>> attacks;
    attacks.reserve(raw.attacks.size());
    for (auto& att : raw.attacks) {
        for (const auto* endpoint : {&att.attacker, &att.target})
            if (!declared.count(*endpoint))
                throw ParseError(att.line, "attack references undeclared argument '" + *endpoint + "'");
        attacks.emplace_back(std::move(att.attacker), std::move(att.target));
    }
    return ArgumentationFramework(std::move(raw.arguments), attacks);
}

class ApxReader {
public:
    explicit ApxReader(std::string_view text) : text_(text) {}

    RawFramework read() {
        RawFramework out;
        while (skip_blank(), pos_ < text_.size()) {
            const std::size_t stmt_line = line_;
            const std::string keyword = read_word("statement keyword");
            expect('(');
            if (keyword == "arg") {
                out.arguments.push_back(read_name(stmt_line));
            } else if (keyword == "att") {
                std::string attacker = read_name(stmt_line);
                expect(',');
                std::string target = read_name(stmt_line);
                out.attacks.push_back({std::move(attacker), std::move(target), stmt_line});
            } else {
                throw ParseError(stmt_line, "unknown statement '" + keyword + "'");
            }
            expect(')');
            expect('.');
        }
        return out;
    }

private:
    void skip_blank() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    ++pos_;
            } else {
                break;
            }
        }
    }

    void expect(char c) {
        skip_blank();
        if (pos_ >= text_.size())
            throw ParseError(line_, std::string("expected '") + c + "', got end of input");
        if (text_[pos_] != c)
            throw ParseError(line_, std::string("expected '") + c + "', got '" + text_[pos_] + "'");
        ++pos_;
    }

    std::string read_word(const char* what) {
        skip_blank();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_name_char(text_[pos_]))
            ++pos_;
        if (start == pos_) {
            if (pos_ >= text_.size())
                throw ParseError(line_, std::string("expected ") + what + ", got end of input");
            throw ParseError(line_, std::string("expected ") + what + ", got '" + text_[pos_] + "'");
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string read_name(std::size_t stmt_line) {
        std::string name = read_word("argument name");
        if (auto problem = check_name(name); !problem.empty())
            throw ParseError(stmt_line, problem);
        return name;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;)
        out.push_back(tok);
    return out;
}

RawFramework read_tgf(std::string_view text) {
    RawFramework out;
    bool in_attacks = false;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        std::string line(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        ++line_no;
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;

        const auto tokens = split_ws(line);
        if (tokens.empty())
            continue;
        if (tokens.size() == 1 && tokens[0] == "#") {
            if (in_attacks)
                throw ParseError(line_no, "duplicate '#' separator");
            in_attacks = true;
            continue;
        }
        const std::size_t expected = in_attacks ? 2 : 1;
        if (tokens.size() != expected)
            throw ParseError(line_no, in_attacks ? "expected '<id> <id>'" : "expected '<id>'");
        for (const auto& tok : tokens)
            if (auto problem = check_name(tok); !problem.empty())
                throw ParseError(line_no, problem);
        if (in_attacks)
            out.attacks.push_back({tokens[0], tokens[1], line_no});
        else
            out.arguments.push_back(tokens[0]);
    }
    return out;
}

std::vector<std::size_t> indices_of(const ArgumentationFramework& af, const NameSet& set) {
    std::vector<std::size_t> out;
    out.reserve(set.size());
    for (const auto& name : set)
        out.push_back(af.require_index(name));
    return out;
}

// Per-argument attack masks for the exhaustive solver.
struct MaskGraph {
    std::vector<detail::Mask> out; // out[i]: arguments attacked by i
    std::vector<detail::Mask> in;  // in[i]: attackers of i

    explicit MaskGraph(const ArgumentationFramework& af) : out(af.size(), 0), in(af.size(), 0) {
        for (const auto& att : af.attacks()) {
            out[att.attacker] |= detail::bit(att.target);
            in[att.target] |= detail::bit(att.attacker);
        }
    }

    bool conflict_free(detail::Mask s) const {
        for (std::size_t i = 0; i < out.size(); ++i)
            if ((s & detail::bit(i)) && (out[i] & s))
                return false;
        return true;
    }

    detail::Mask defended(detail::Mask s) const {
        detail::Mask attacked_by_s = 0;
        for (std::size_t i = 0; i < out.size(); ++i)
            if (s & detail::bit(i))
                attacked_by_s |= out[i];
        detail::Mask result = 0;
        for (std::size_t a = 0; a < in.size(); ++a)
            if ((in[a] & ~attacked_by_s) == 0)
                result |= detail::bit(a);
        return result;
    }

    detail::Mask range(detail::Mask s) const {
        detail::Mask result = s;
        for (std::size_t i = 0; i < out.size(); ++i)
            if (s & detail::bit(i))
                result |= out[i];
        return result;
    }
};

// Members of `base` whose range is not strictly contained in the range of
// another member.
std::vector<bool> range_maximal(const MaskGraph& graph, const std::vector<bool>& base, std::size_t n) {
    const std::size_t total = std::size_t{1} << n;
    std::vector<bool> ranges(total, false);
    for (std::size_t s = 0; s < total; ++s)
        if (base[s])
            ranges[graph.range(s)] = true;
    const auto maximal_ranges = detail::maximal_members(ranges, n);
    std::vector<bool> out(total, false);
    for (std::size_t s = 0; s < total; ++s)
        out[s] = base[s] && maximal_ranges[graph.range(s)];
    return out;
}

} // namespace

std::string_view to_string(Semantics semantics) {
    for (const auto& [tag, text] : kTags)
        if (tag == semantics)
            return text;
    return "unknown";
}

Semantics parse_semantics(std::string_view tag) {
    static const std::map<std::string, Semantics, std::less<>> aliases{
        {"cf", Semantics::ConflictFree},  {"conf", Semantics::ConflictFree},
        {"na", Semantics::Naive},         {"adm", Semantics::Admissible},
        {"co", Semantics::Complete},      {"comp", Semantics::Complete},
        {"pr", Semantics::Preferred},     {"pref", Semantics::Preferred},
        {"st", Semantics::Stable},        {"stab", Semantics::Stable},
        {"sst", Semantics::SemiStable},   {"semistab", Semantics::SemiStable},
        {"stg", Semantics::Stage},        {"stag", Semantics::Stage},
    };
    for (const auto& [value, text] : kTags)
        if (text == tag)
            return value;
    if (auto it = aliases.find(tag); it != aliases.end())
        return it->second;
    throw Error("unknown semantics '" + std::string(tag) + "'");
}

const std::vector<Semantics>& all_semantics() {
    static const std::vector<Semantics> all = [] {
        std::vector<Semantics> out;
        for (const auto& entry : kTags)
            out.push_back(entry.first);
        return out;
    }();
    return all;
}

void validate_argument_name(std::string_view name) {
    if (auto problem = check_name(name); !problem.empty())
        throw Error(problem);
}

ArgumentationFramework::ArgumentationFramework(
    std::vector<std::string> arguments, const std::vector<std::pair<std::string, std::string>>& attacks) {
    for (const auto& name : arguments)
        validate_argument_name(name);
    std::sort(arguments.begin(), arguments.end());
    arguments.erase(std::unique(arguments.begin(), arguments.end()), arguments.end());
    arguments_ = std::move(arguments);

    attacks_.reserve(attacks.size());
    for (const auto& [attacker, target] : attacks) {
        const auto a = index_of(attacker);
        const auto b = index_of(target);
        if (!a || !b)
            throw Error("attack (" + attacker + "," + target + ") references an undeclared argument");
        attacks_.push_back({*a, *b});
    }
    std::sort(attacks_.begin(), attacks_.end());
    attacks_.erase(std::unique(attacks_.begin(), attacks_.end()), attacks_.end());

    attackers_.assign(arguments_.size(), {});
    targets_.assign(arguments_.size(), {});
    for (const auto& att : attacks_) {
        targets_[att.attacker].push_back(att.target);
        attackers_[att.target].push_back(att.attacker);
    }
}

std::optional<std::size_t> ArgumentationFramework::index_of(std::string_view name) const {
    const auto it = std::lower_bound(arguments_.begin(), arguments_.end(), name);
    if (it == arguments_.end() || *it != name)
        return std::nullopt;
    return static_cast<std::size_t>(it - arguments_.begin());
}

std::size_t ArgumentationFramework::require_index(std::string_view name) const {
    if (auto index = index_of(name))
        return *index;
    throw Error("unknown argument '" + std::string(name) + "'");
}

bool ArgumentationFramework::attacks(std::size_t attacker, std::size_t target) const {
    return std::binary_search(attacks_.begin(), attacks_.end(), Attack{attacker, target});
}

std::vector<std::pair<std::string, std::string>> ArgumentationFramework::attack_names() const {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(attacks_.size());
    for (const auto& att : attacks_)
        out.emplace_back(arguments_[att.attacker], arguments_[att.target]);
    return out;
}

ArgumentationFramework parse_af(std::string_view text, Format format) {
    return assemble(format == Format::Apx ? ApxReader(text).read() : read_tgf(text));
}

Format format_for_path(std::string_view path) {
    const auto dot = path.rfind('.');
    if (dot != std::string_view::npos) {
        std::string ext(path.substr(dot + 1));
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext == "tgf")
            return Format::Tgf;
    }
    return Format::Apx;
}

std::string to_apx(const ArgumentationFramework& af) {
    std::string out;
    for (const auto& name : af.arguments())
        out += "arg(" + name + ").\n";
    for (const auto& [attacker, target] : af.attack_names())
        out += "att(" + attacker + "," + target + ").\n";
    return out;
}

std::string to_tgf(const ArgumentationFramework& af) {
    std::string out;
    for (const auto& name : af.arguments())
        out += name + "\n";
    out += "#\n";
    for (const auto& [attacker, target] : af.attack_names())
        out += attacker + " " + target + "\n";
    return out;
}

std::size_t degree(const ArgumentationFramework& af) {
    std::size_t best = 0;
    for (std::size_t a = 0; a < af.size(); ++a) {
        std::vector<std::size_t> neighbours;
        for (auto b : af.attackers_of(a))
            if (b != a)
                neighbours.push_back(b);
        for (auto b : af.targets_of(a))
            if (b != a)
                neighbours.push_back(b);
        std::sort(neighbours.begin(), neighbours.end());
        neighbours.erase(std::unique(neighbours.begin(), neighbours.end()), neighbours.end());
        best = std::max(best, neighbours.size());
    }
    return best;
}

bool is_conflict_free(const ArgumentationFramework& af, const NameSet& set) {
    const auto members = indices_of(af, set);
    for (auto a : members)
        for (auto b : af.targets_of(a))
            if (std::binary_search(members.begin(), members.end(), b))
                return false;
    return true;
}

NameSet defended_set(const ArgumentationFramework& af, const NameSet& set) {
    const auto members = indices_of(af, set);
    NameSet out;
    for (std::size_t a = 0; a < af.size(); ++a) {
        const bool defended = std::all_of(af.attackers_of(a).begin(), af.attackers_of(a).end(), [&](auto b) {
            return std::any_of(members.begin(), members.end(), [&](auto c) { return af.attacks(c, b); });
        });
        if (defended)
            out.insert(af.name(a));
    }
    return out;
}

NameSet range_of(const ArgumentationFramework& af, const NameSet& set) {
    NameSet out = set;
    for (auto a : indices_of(af, set))
        for (auto b : af.targets_of(a))
            out.insert(af.name(b));
    return out;
}

Family extensions(const ArgumentationFramework& af, Semantics semantics, std::size_t cap) {
    detail::require_within_cap(af.size(), cap);
    const std::size_t n = af.size();
    const std::size_t total = std::size_t{1} << n;
    const MaskGraph graph(af);

    std::vector<bool> cf(total, false);
    for (std::size_t s = 0; s < total; ++s)
        cf[s] = graph.conflict_free(s);

    const auto admissible = [&] {
        std::vector<bool> out(total, false);
        for (std::size_t s = 0; s < total; ++s)
            out[s] = cf[s] && (s & ~graph.defended(s)) == 0;
        return out;
    };

    std::vector<bool> members;
    switch (semantics) {
    case Semantics::ConflictFree:
        members = std::move(cf);
        break;
    case Semantics::Naive:
        members = detail::maximal_members(cf, n);
        break;
    case Semantics::Admissible:
        members = admissible();
        break;
    case Semantics::Complete: {
        members = admissible();
        for (std::size_t s = 0; s < total; ++s)
            members[s] = members[s] && graph.defended(s) == s;
        break;
    }
    case Semantics::Preferred:
        members = detail::maximal_members(admissible(), n);
        break;
    case Semantics::Stable: {
        const detail::Mask all = total - 1;
        members.assign(total, false);
        for (std::size_t s = 0; s < total; ++s)
            members[s] = cf[s] && graph.range(s) == all;
        break;
    }
    case Semantics::SemiStable:
        members = range_maximal(graph, admissible(), n);
        break;
    case Semantics::Stage:
        members = range_maximal(graph, cf, n);
        break;
    }
    return detail::to_family(members, af.arguments());
}

ArgumentationFramework strip_self_attackers(const ArgumentationFramework& af) {
    std::vector<std::string> kept;
    for (std::size_t a = 0; a < af.size(); ++a)
        if (!af.self_attacking(a))
            kept.push_back(af.name(a));
    std::vector<std::pair<std::string, std::string>> attacks;
    for (const auto& att : af.attacks())
        if (!af.self_attacking(att.attacker) && !af.self_attacking(att.target))
            attacks.emplace_back(af.name(att.attacker), af.name(att.target));
    return ArgumentationFramework(std::move(kept), attacks);
}

} // namespace af2db::af
