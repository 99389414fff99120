#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relhorn/quantale.hpp"
#include "relhorn/structure.hpp"
#include "relhorn/theory.hpp"
#include "relhorn/vgraph.hpp"

namespace relhorn {

/// A failing (κ_Z, x̄, T). kappa_z is indexed by the schema's variable
/// table and empty for the object form.
struct SchemaCounterexample {
    std::size_t schema = 0;
    std::vector<SymbolId> labels; ///< R̄
    std::vector<ElementId> kappa_z;
    std::vector<ElementId> x;
    SymbolId t = 0;
    SymbolId bound = 0; ///< ⋁ R_κ over good κ
};

struct SchemaConvexityResult {
    bool convex = true;
    std::optional<SchemaCounterexample> counterexample;

    explicit operator bool() const { return convex; }
};

struct SchemaOptions {
    /// Recompute every R_κ by the full join over S̄ and compare with the
    /// monotone shortcut (Error on disagreement). On by default in debug
    /// builds.
#ifdef NDEBUG
    bool cross_check = false;
#else
    bool cross_check = true;
#endif
};

/// f must be a morphism of T_Π-models over a complete-Heyting signature.
[[nodiscard]] SchemaConvexityResult is_schema_convex_wrt_instance(const Morphism& f, const Theory& t,
                                                                  const SchemaInstance& inst,
                                                                  const SchemaOptions& opts = {});
/// Every instance of every schema of T.
[[nodiscard]] SchemaConvexityResult is_schema_convex(const Morphism& f, const Theory& t,
                                                     const SchemaOptions& opts = {});
/// Object form: x̄ ranges over all of |X|^n and good κ only pin the v_i.
[[nodiscard]] SchemaConvexityResult is_schema_object_convex(const Structure& x, const Theory& t,
                                                            const SchemaOptions& opts = {});

/// For all x1, x3, z2, v ≤ d_Z(f x1, z2), v' ≤ d_Z(z2, f x3):
/// d_X(x1,x3) ∧ (v⊗v') ≤ ⋁_{x2 ∈ f⁻¹(z2)} (d_X(x1,x2) ∧ v) ⊗ (d_X(x2,x3) ∧ v').
/// Throws unless V is Heyting.
[[nodiscard]] bool ch_condition_oracle(const VGraph& x, const VGraph& z, const std::vector<ElementId>& f,
                                       const Quantale& v);
/// Same on a morphism of V-graph structures.
[[nodiscard]] bool ch_condition_oracle(const Morphism& f);

struct MeetCounterexample {
    std::vector<SymbolId> labels; ///< R̄
    SymbolId s = 0;
    SymbolId lhs = 0; ///< σ(R̄ ∧ S)
    SymbolId rhs = 0; ///< σ(R̄) ∧ S
};

struct SchemaSafetyResult {
    bool meet_equation = false;
    std::optional<MeetCounterexample> meet_counterexample;
    /// Meet equation holds and every R̄ has some κ with σ(R̄)v̄ ⊢ κ·φ_{R_φ}.
    bool safe = false;
    bool very_safe = false;
    /// First working κ per R̄, label tuples in lexicographic order; empty
    /// unless every R̄ has one.
    std::vector<std::vector<VarId>> kappas;
    /// A single κ serves every R̄; `kappa` is the first such.
    bool uniform = false;
    std::vector<VarId> kappa; ///< over the schema's variable table
};

[[nodiscard]] SchemaSafetyResult is_schema_safe(const AxiomSchema& s, const Theory& t);
[[nodiscard]] inline bool is_schema_very_safe(const AxiomSchema& s, const Theory& t) {
    return is_schema_safe(s, t).very_safe;
}

struct SchematicClassification {
    std::vector<SchemaSafetyResult> schemas;
    bool all_safe = true;
    bool all_very_safe = true;
    bool has_equality = false;
    bool cartesian_closed = false;
    bool locally_cartesian_closed = false;
    bool quasitopos = false;
    std::vector<std::string> advisories;
};

/// T must be T_Π plus schema instances plus equality axioms only.
[[nodiscard]] SchematicClassification classify_schematic_theory(const Theory& t);

} // namespace relhorn
