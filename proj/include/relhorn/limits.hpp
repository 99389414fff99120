#pragma once

#include <functional>
#include <span>
#include <vector>

#include "relhorn/structure.hpp"
#include "relhorn/theory.hpp"

namespace relhorn {

/// ({*}, every full edge)
[[nodiscard]] Structure terminal(const SignaturePtr& sig);
[[nodiscard]] Morphism to_terminal(const Structure& x);

struct ProductResult {
    Structure object;
    Morphism first;
    Morphism second;
    /// Component indices of each element of `object`.
    std::vector<std::pair<ElementId, ElementId>> pairs;
};

/// Carrier ordered lexicographically: (a, b) has index a·|Y| + b.
[[nodiscard]] ProductResult product(const Structure& x, const Structure& y);

/// A ×_C B along f : A → C and g : B → C; pairs in lexicographic order.
[[nodiscard]] ProductResult pullback(const Morphism& f, const Morphism& g);

/// X_{f,z}: induced substructure on f⁻¹(z), elements in source order.
[[nodiscard]] Structure fibre_structure(const Morphism& f, ElementId z);
[[nodiscard]] std::vector<ElementId> fibre(const Morphism& f, ElementId z);

struct EqualizerResult {
    Structure object;
    Morphism inclusion;
};

[[nodiscard]] EqualizerResult equalizer(const Morphism& f, const Morphism& g);

/// Optional per-element restriction on the image: candidates[x] lists the
/// allowed targets for x in increasing order; an empty list means "any".
using ImageCandidates = std::vector<std::vector<ElementId>>;

/// Visits every edge-preserving map X → Y in lexicographic order of the
/// map table (element 0 most significant). `fn` returns false to stop.
bool for_each_morphism(const Structure& x, const Structure& y, const ImageCandidates& candidates,
                       const std::function<bool(std::span<const ElementId>)>& fn);

/// Serial reference.
[[nodiscard]] std::vector<std::vector<ElementId>> enumerate_maps(const Structure& x, const Structure& y,
                                                                 const ImageCandidates& candidates = {});
/// OpenMP fan-out over the image of the first element; same output order.
[[nodiscard]] std::vector<std::vector<ElementId>> enumerate_maps_parallel(const Structure& x, const Structure& y,
                                                                          const ImageCandidates& candidates = {});

[[nodiscard]] std::size_t count_morphisms(const Structure& x, const Structure& y);

/// Hom(X, Y) as morphisms. When a theory is given both ends must be
/// models of it (Error otherwise).
[[nodiscard]] std::vector<Morphism> enumerate_morphisms(const Structure& x, const Structure& y,
                                                        const Theory* in_theory = nullptr);
[[nodiscard]] std::vector<Morphism> enumerate_morphisms_parallel(const Structure& x, const Structure& y,
                                                                 const Theory* in_theory = nullptr);

} // namespace relhorn
