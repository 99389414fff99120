#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relhorn/formula.hpp"
#include "relhorn/structure.hpp"
#include "relhorn/theory.hpp"

namespace relhorn {

/// A (κ_Z, x̄) pair with no lifting κ. Valuations are indexed by the
/// axiom's variable table; x̄ follows the conclusion's argument order.
struct ConvexityCounterexample {
    std::size_t axiom = 0; ///< index into Theory::all_axioms()
    std::vector<ElementId> kappa_z;
    std::vector<ElementId> x;
};

struct ConvexityResult {
    bool convex = true;
    std::optional<ConvexityCounterexample> counterexample;

    explicit operator bool() const { return convex; }
};

/// Discrete signatures only; f must be a morphism between T-models and `ax`
/// an edge-conclusion axiom. The counterexample is the lexicographically
/// first failing (κ_Z, x̄). `axiom_index` is copied into it.
[[nodiscard]] ConvexityResult is_convex_wrt(const Morphism& f, const HornFormula& ax, const Theory& t,
                                            std::size_t axiom_index = 0);
/// Conjunction over the equality-free axioms of T \ T_Π.
[[nodiscard]] ConvexityResult is_convex(const Morphism& f, const Theory& t);

/// The same verdict through squares R_T → X, (Φ ⇒ R)_T → Z against
/// f_{Φ,R}, each of which must have a diagonal filler.
[[nodiscard]] ConvexityResult is_convex_via_lifting(const Morphism& f, const Theory& t);
[[nodiscard]] ConvexityResult is_convex_via_lifting_wrt(const Morphism& f, const HornFormula& ax, const Theory& t,
                                                        std::size_t axiom_index = 0);

/// Direct object form: every R-edge x̄ of X extends to a valuation κ with
/// κ(v_i) = x_i satisfying Φ. kappa_z is empty in counterexamples.
[[nodiscard]] ConvexityResult is_object_convex(const Structure& x, const Theory& t);

struct SafetyResult {
    bool safe = false;
    bool very_safe = false;
    /// κ as a variable table map (every variable sent to a conclusion
    /// variable); empty when not safe.
    std::vector<VarId> kappa;
};

/// κ-search over functions Var → {v_1..v_n} fixing the v_i, in
/// lexicographic order; the first κ with T ⊨ R v̄ ⇒ κ·φ for all φ wins.
[[nodiscard]] SafetyResult is_safe_axiom(const HornFormula& ax, const Theory& t);
[[nodiscard]] inline bool is_very_safe(const HornFormula& ax, const Theory& t) {
    return is_safe_axiom(ax, t).very_safe;
}

enum class SafetyClass { AllVerySafe, AllSafe, Neither };

[[nodiscard]] std::string to_string(SafetyClass c);

struct AxiomSafety {
    std::size_t axiom = 0; ///< index into Theory::all_axioms()
    SafetyResult result;
};

struct Classification {
    SafetyClass safety = SafetyClass::Neither;
    std::vector<AxiomSafety> axioms;
    bool reflexive = false;
    bool has_equality = false;
    bool binary_only = false;
    bool transitive = false;
    bool cartesian_closed = false;
    bool locally_cartesian_closed = false;
    bool quasitopos = false;
    std::vector<std::string> advisories;
};

/// Safety of every equality-free axiom of T \ T_Π plus the closure
/// consequences. Discrete signatures only.
[[nodiscard]] Classification classify_theory(const Theory& t);

} // namespace relhorn
