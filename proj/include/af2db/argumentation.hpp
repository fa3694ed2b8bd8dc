#pragma once

#include "af2db/name_set.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace af2db::af {

enum class Semantics {
    ConflictFree,
    Naive,
    Admissible,
    Complete,
    Preferred,
    Stable,
    SemiStable,
    Stage,
};

/// Canonical tag, e.g. "semi-stable".
std::string_view to_string(Semantics semantics);

/// Accepts the canonical tags plus the usual short forms (cf, adm, pref, ...).
Semantics parse_semantics(std::string_view tag);

/// All eight tags in declaration order.
const std::vector<Semantics>& all_semantics();

enum class Format { Apx, Tgf };

/// Index-based attack; endpoints refer to ArgumentationFramework::arguments().
struct Attack {
    std::size_t attacker;
    std::size_t target;

    auto operator<=>(const Attack&) const = default;
};

/// Throws Error when `name` is empty, contains whitespace or one of `(),.#`, or is
/// the reserved sentinel "0".
void validate_argument_name(std::string_view name);

/// A Dung framework (A, R). Arguments are kept in lexicographic order and
/// attacks are sorted and unique; both are fixed at construction.
class ArgumentationFramework {
public:
    ArgumentationFramework() = default;

    /// Duplicate arguments and attacks are merged. Throws Error on an invalid
    /// argument name or an attack endpoint that was not declared.
    ArgumentationFramework(std::vector<std::string> arguments,
                           const std::vector<std::pair<std::string, std::string>>& attacks);

    const std::vector<std::string>& arguments() const noexcept { return arguments_; }
    const std::vector<Attack>& attacks() const noexcept { return attacks_; }
    std::size_t size() const noexcept { return arguments_.size(); }
    bool empty() const noexcept { return arguments_.empty(); }

    const std::string& name(std::size_t index) const { return arguments_.at(index); }
    std::optional<std::size_t> index_of(std::string_view name) const;
    /// Like index_of but throws Error for an unknown name.
    std::size_t require_index(std::string_view name) const;

    bool attacks(std::size_t attacker, std::size_t target) const;
    bool self_attacking(std::size_t index) const { return attacks(index, index); }
    const std::vector<std::size_t>& attackers_of(std::size_t index) const { return attackers_.at(index); }
    const std::vector<std::size_t>& targets_of(std::size_t index) const { return targets_.at(index); }

    /// Attacks as name pairs, in canonical order.
    std::vector<std::pair<std::string, std::string>> attack_names() const;

    friend bool operator==(const ArgumentationFramework& lhs, const ArgumentationFramework& rhs) {
        return lhs.arguments_ == rhs.arguments_ && lhs.attacks_ == rhs.attacks_;
    }

private:
    std::vector<std::string> arguments_;
    std::vector<Attack> attacks_;
    std::vector<std::vector<std::size_t>> attackers_;
    std::vector<std::vector<std::size_t>> targets_;
};

using AF = ArgumentationFramework;

/// Parses APX (`arg(a).` / `att(a,b).`, `#` comments) or TGF (ids, `#`, id pairs).
/// Errors carry the 1-based line number.
ArgumentationFramework parse_af(std::string_view text, Format format);

/// Picks the format from a file extension (".tgf" is TGF, anything else APX).
Format format_for_path(std::string_view path);

/// Canonical APX: one `arg` line per argument, then one `att` line per attack.
std::string to_apx(const ArgumentationFramework& af);
std::string to_tgf(const ArgumentationFramework& af);

/// Maximum number of distinct other arguments adjacent to one argument through
/// an attack in either direction. Self-loops do not count.
std::size_t degree(const ArgumentationFramework& af);

/// Throws Error if `set` names an argument outside the framework.
bool is_conflict_free(const ArgumentationFramework& af, const NameSet& set);

/// The characteristic function: every argument all of whose attackers are
/// counter-attacked from `set`.
NameSet defended_set(const ArgumentationFramework& af, const NameSet& set);

/// `set` together with everything it attacks.
NameSet range_of(const ArgumentationFramework& af, const NameSet& set);

/// Exact extension family by exhaustive subset enumeration. Throws CapExceeded
/// when the framework has more than `cap` arguments.
Family extensions(const ArgumentationFramework& af, Semantics semantics,
                  std::size_t cap = kDefaultEnumerationCap);

/// Removes every self-attacking argument with all of its incident attacks.
ArgumentationFramework strip_self_attackers(const ArgumentationFramework& af);

} // namespace af2db::af
