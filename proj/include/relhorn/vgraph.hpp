#pragma once

#include <string>
#include <vector>

#include "relhorn/quantale.hpp"
#include "relhorn/structure.hpp"
#include "relhorn/theory.hpp"

namespace relhorn {

/// A V-valued graph (X, d).
struct VGraph {
    std::vector<std::string> carrier;
    std::vector<std::vector<Quantale::Value>> d;

    bool operator==(const VGraph&) const = default;
};

/// Π_V, after checking the quantale laws (Error on failure).
[[nodiscard]] SignaturePtr signature_of(const Quantale& v);

/// Ex-style theory generators. The ⋁-family axioms are instantiated as the
/// nullary join plus binary joins. vcat/pmet/met are schematic extensions
/// of T_Π when V is Heyting with k = ⊤, flat instance lists otherwise; in
/// the latter case `warning` (when given) receives a note.
[[nodiscard]] Theory theory_vgph(const Quantale& v);
[[nodiscard]] Theory theory_vrgph(const Quantale& v, std::string* warning = nullptr);
[[nodiscard]] Theory theory_vcat(const Quantale& v, std::string* warning = nullptr);
[[nodiscard]] Theory theory_pmet(const Quantale& v, std::string* warning = nullptr);
[[nodiscard]] Theory theory_met(const Quantale& v, std::string* warning = nullptr);

/// Whether the schematic path applies: V Heyting and k = ⊤.
[[nodiscard]] bool schematic_path(const Quantale& v);

/// d(x, y) = ⋁{u | X ⊨ x ∼_u y}. X must be a T_{V-Gph}-model.
[[nodiscard]] VGraph structure_to_vgraph(const Structure& x);
/// Edges x ∼_v y for every v ≤ d(x, y).
[[nodiscard]] Structure vgraph_to_structure(const VGraph& g, const SignaturePtr& sig);

/// Direct V-graph predicates, used as independent oracles.
[[nodiscard]] bool vgraph_reflexive(const VGraph& g, const Quantale& v);
[[nodiscard]] bool vgraph_transitive(const VGraph& g, const Quantale& v);
[[nodiscard]] bool vgraph_symmetric(const VGraph& g);
[[nodiscard]] bool vgraph_separated(const VGraph& g, const Quantale& v);
/// d_X(x, x') ≤ d_Y(h(x), h(x')) for all x, x'.
[[nodiscard]] bool is_vfunctor(const VGraph& x, const VGraph& y, const std::vector<ElementId>& h, const Quantale& v);

} // namespace relhorn
