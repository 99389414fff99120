#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relhorn/limits.hpp"
#include "relhorn/semantics.hpp"
#include "relhorn/structure.hpp"
#include "relhorn/theory.hpp"

namespace relhorn {

enum class PartialProductVariant { Str, Reflexive };

/// P(Y, f) with its projection p : P → Z and evaluation ε : P ×_Z X → Y.
struct PartialProductResult {
    PartialProductVariant variant = PartialProductVariant::Str;
    Morphism f;
    Structure y;
    Structure object;
    Morphism p;
    ProductResult pullback; ///< P ×_Z X along p and f
    Morphism eval;
    /// fibres[z] = f⁻¹(z) in source order; tables[e] = j of element e,
    /// aligned with fibres[p(e)].
    std::vector<std::vector<ElementId>> fibres;
    std::vector<std::vector<ElementId>> tables;
};

/// j ranges over all functions f⁻¹(z) → |Y|.
[[nodiscard]] PartialProductResult partial_product_str(const Structure& y, const Morphism& f);
/// j ranges over Π-morphisms X_{f,z} → Y; the edge condition runs over all
/// S ≤ R. X, Z and Y must be T_Π-models.
[[nodiscard]] PartialProductResult partial_product_refl(const Structure& y, const Morphism& f);

/// Same carrier and maps, different edges on P (mutation tests).
[[nodiscard]] PartialProductResult with_object(const PartialProductResult& c, const Structure& new_object);

struct ExponentialResult {
    Structure x;
    Structure y;
    Structure object;                         ///< Y^X
    std::vector<std::vector<ElementId>> homs; ///< element e of Y^X is homs[e]
    ProductResult product;                    ///< Y^X × X
    Morphism eval;
};

/// Carrier Str(Π)(X, Y); R h̄ iff every R-edge x̄ of X gives Y ⊨ R h_1(x_1)…h_n(x_n).
[[nodiscard]] ExponentialResult exponential_object(const Structure& x, const Structure& y);
[[nodiscard]] ExponentialResult with_object(const ExponentialResult& c, const Structure& new_object);

/// [X, Y]: carrier T-Mod(X, Y) with the pointwise edge condition.
[[nodiscard]] Structure internal_hom(const Theory& t, const Structure& x, const Structure& y);

struct TensorResult {
    Structure axes; ///< the structure on |X|×|Y| before saturation
    FreeModelResult free;
};

/// X ⊗ Y: free T-model on the axis structure.
[[nodiscard]] TensorResult tensor(const Theory& t, const Structure& x, const Structure& y);

struct VerifyEntry {
    std::size_t q_index = 0;
    std::size_t q_size = 0;
    std::size_t lhs = 0; ///< |Hom(Q, Y^X)| or mediating maps found
    std::size_t rhs = 0; ///< |Hom(Q×X, Y)| or cone count
    bool ok = true;
    std::string detail;
};

struct VerifyReport {
    bool passed = true;
    std::vector<VerifyEntry> entries;
    std::optional<std::size_t> witness_q;
    std::string witness;

    explicit operator bool() const { return passed; }
};

/// Currying bijection Hom(Q, Y^X) → Hom(Q × X, Y), h ↦ ε ∘ (h × id_X).
[[nodiscard]] VerifyReport verify_exponential(const ExponentialResult& candidate, const std::vector<Structure>& family);
[[nodiscard]] VerifyReport verify_exponential_parallel(const ExponentialResult& candidate,
                                                       const std::vector<Structure>& family);

/// For every q : Q → Z and g : Q ×_Z X → Y exactly one h : Q → P with
/// p ∘ h = q and ε ∘ (h ×_Z id) = g.
[[nodiscard]] VerifyReport verify_partial_product(const PartialProductResult& candidate,
                                                  const std::vector<Structure>& family);
[[nodiscard]] VerifyReport verify_partial_product_parallel(const PartialProductResult& candidate,
                                                           const std::vector<Structure>& family);

} // namespace relhorn
