#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "relhorn/formula.hpp"
#include "relhorn/structure.hpp"
#include "relhorn/theory.hpp"

namespace relhorn {

inline constexpr ElementId kUnbound = std::numeric_limits<ElementId>::max();

/// Per-variable allowed elements. An empty inner vector means "any element".
using VarDomains = std::vector<std::vector<bool>>;

/// Enumerates total valuations of variables 0..var_count-1 that extend
/// `bound` (kUnbound = free), stay inside `domains` and send every atom to
/// an edge of X. Variables not touched by any atom range over the carrier.
/// `fn` returns false to stop early; the function returns false iff stopped.
/// Order of visits is unspecified; callers that need the lexicographic
/// first hit collect and sort.
bool for_each_valuation(const Structure& x, std::span<const Atom> atoms, std::size_t var_count,
                        std::span<const ElementId> bound, const VarDomains& domains,
                        const std::function<bool(std::span<const ElementId>)>& fn);

/// All matches, sorted lexicographically.
[[nodiscard]] std::vector<std::vector<ElementId>> all_valuations(const Structure& x, std::span<const Atom> atoms,
                                                                 std::size_t var_count,
                                                                 std::span<const ElementId> bound = {},
                                                                 const VarDomains& domains = {});

[[nodiscard]] bool atom_holds(const Structure& x, const Atom& a, std::span<const ElementId> valuation);

/// X ⊨ φ: every valuation of all formula variables satisfying the premises
/// satisfies the conclusion. Conclusion-only variables are quantified too.
[[nodiscard]] bool satisfies_formula(const Structure& x, const HornFormula& phi);

/// Lexicographically least violating valuation, if any.
[[nodiscard]] std::optional<std::vector<ElementId>> first_violation(const Structure& x, const HornFormula& phi);

struct ModelCheck {
    bool ok = true;
    std::size_t axiom = 0; ///< index into Theory::all_axioms()
    std::vector<ElementId> valuation;

    explicit operator bool() const { return ok; }
};

[[nodiscard]] ModelCheck is_model(const Structure& x, const Theory& t);

struct FreeModelResult {
    Structure model;
    /// input element ↦ its class in the model (classes keep the name of the
    /// least member).
    Morphism unit_map;
};

/// Chase: rounds of axiom firing, equality merges before edge additions,
/// until nothing changes.
[[nodiscard]] FreeModelResult free_model(const Theory& t, const Structure& a);

/// Φ_Π for a formula: carrier = all formula variables, edges = premises.
[[nodiscard]] Structure premise_structure(const SignaturePtr& sig, const HornFormula& phi);

[[nodiscard]] bool entails(const Theory& t, const HornFormula& phi);

[[nodiscard]] bool is_reflexive(const Structure& x);
/// T ⊨ (⇒ R v...v) for every symbol R.
[[nodiscard]] bool is_reflexive_theory(const Theory& t);

/// Throws Error when some symbol is not binary.
[[nodiscard]] bool is_transitive(const Structure& x);
/// T ⊨ (Rxy, Ryz ⇒ Rxz) for every symbol; binary signatures only.
[[nodiscard]] bool is_transitive_theory(const Theory& t);

} // namespace relhorn
