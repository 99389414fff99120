#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "relhorn/signature.hpp"

namespace relhorn {

/// A Π-edge over variables: R v_1 ... v_n. Variables may repeat.
struct Atom {
    SymbolId symbol = 0;
    std::vector<VarId> vars;

    auto operator<=>(const Atom&) const = default;
};

/// v_1 = v_2. Kept apart from Atom: "=" is never a signature symbol.
struct Equality {
    VarId left = 0;
    VarId right = 0;

    auto operator<=>(const Equality&) const = default;
};

/// A relational Horn formula Φ ⇒ ψ. Variables are local indices into
/// var_names(); the table holds exactly the variables that occur.
class HornFormula {
  public:
    using Conclusion = std::variant<Atom, Equality>;

    /// `premises`: each entry is {symbol, var, var, ...}. `conclusion` is
    /// either {symbol, var, ...} or {"=", v1, v2}.
    static HornFormula make(const Signature& sig, const std::vector<std::vector<std::string>>& premises,
                            const std::vector<std::string>& conclusion);

    /// Prefix text syntax: "le x y, le y z => le x z", "=> le x x",
    /// "le x y, le y x => = x y".
    static HornFormula parse(const Signature& sig, const std::string& text);

    /// Build from already-resolved parts; validates the equality assumption.
    HornFormula(std::vector<std::string> var_names, std::vector<Atom> premises, Conclusion conclusion);

    /// Same, but variables that do not occur are dropped from the table and
    /// the rest renumbered in table order.
    static HornFormula compacted(const std::vector<std::string>& var_names, std::vector<Atom> premises,
                                 Conclusion conclusion);

    [[nodiscard]] const std::vector<std::string>& var_names() const { return var_names_; }
    [[nodiscard]] std::size_t var_count() const { return var_names_.size(); }
    [[nodiscard]] const std::vector<Atom>& premises() const { return premises_; }
    [[nodiscard]] const Conclusion& conclusion() const { return conclusion_; }
    [[nodiscard]] bool has_equality() const { return std::holds_alternative<Equality>(conclusion_); }
    [[nodiscard]] const Atom& conclusion_atom() const { return std::get<Atom>(conclusion_); }

    /// Var(Φ), ascending.
    [[nodiscard]] std::vector<VarId> premise_vars() const;
    [[nodiscard]] std::optional<VarId> find_var(const std::string& name) const;

    [[nodiscard]] std::string to_string(const Signature& sig) const;

    bool operator==(const HornFormula&) const = default;

  private:
    std::vector<std::string> var_names_;
    std::vector<Atom> premises_;
    Conclusion conclusion_;
};

/// Var(Φ) for a set of atoms, ascending and deduplicated.
[[nodiscard]] std::vector<VarId> var_set(const std::vector<Atom>& atoms);

/// Fresh variable name not in `taken`: base, base1, base2, ...
[[nodiscard]] std::string fresh_var(const std::vector<std::string>& taken, const std::string& base = "v");

} // namespace relhorn
