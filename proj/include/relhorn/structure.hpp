#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "relhorn/signature.hpp"

namespace relhorn {

/// A Π-edge (R, (x_1, ..., x_n)) over element ids.
struct Edge {
    SymbolId symbol = 0;
    std::vector<ElementId> args;

    auto operator<=>(const Edge&) const = default;
};

/// The interpretation R^X of one symbol: a set of n-tuples over a carrier
/// of fixed size. Tuples are kept sorted lexicographically; membership is a
/// dense bitmap when |X|^n is small and a hash set of encoded tuples
/// otherwise.
class Relation {
  public:
    Relation(std::uint32_t arity, std::size_t carrier_size, std::vector<ElementId> flat_tuples);

    [[nodiscard]] std::uint32_t arity() const { return arity_; }
    [[nodiscard]] std::size_t size() const { return arity_ == 0 ? 0 : flat_.size() / arity_; }
    [[nodiscard]] std::span<const ElementId> tuple(std::size_t i) const {
        return {flat_.data() + i * arity_, arity_};
    }
    [[nodiscard]] const std::vector<ElementId>& flat() const { return flat_; }
    [[nodiscard]] bool contains(std::span<const ElementId> t) const;

  private:
    [[nodiscard]] std::uint64_t encode(std::span<const ElementId> t) const;

    std::uint32_t arity_;
    std::size_t n_;
    std::vector<ElementId> flat_;
    std::vector<bool> dense_;
    std::unordered_set<std::uint64_t> sparse_;
    bool use_dense_ = false;
};

/// A finite Π-structure. Immutable value with shared representation:
/// copies are cheap and all constructions return new structures.
class Structure {
  public:
    Structure(SignaturePtr signature, std::vector<std::string> carrier, const std::vector<Edge>& edges);
    /// Per-symbol flat tuple lists (any order, duplicates allowed).
    Structure(SignaturePtr signature, std::vector<std::string> carrier,
              std::vector<std::vector<ElementId>> flat_per_symbol);

    [[nodiscard]] const Signature& signature() const { return *impl_->signature; }
    [[nodiscard]] const SignaturePtr& signature_ptr() const { return impl_->signature; }
    [[nodiscard]] std::size_t size() const { return impl_->carrier.size(); }
    [[nodiscard]] const std::vector<std::string>& carrier() const { return impl_->carrier; }
    [[nodiscard]] const std::string& name(ElementId e) const { return impl_->carrier.at(e); }
    [[nodiscard]] std::optional<ElementId> find(const std::string& name) const;
    [[nodiscard]] ElementId index_of(const std::string& name) const;

    [[nodiscard]] const Relation& relation(SymbolId s) const { return impl_->relations[s]; }
    [[nodiscard]] bool holds(SymbolId s, std::span<const ElementId> t) const { return impl_->relations[s].contains(t); }
    [[nodiscard]] bool holds(SymbolId s, std::initializer_list<ElementId> t) const {
        return holds(s, std::span<const ElementId>(t.begin(), t.size()));
    }
    [[nodiscard]] std::size_t edge_count() const;
    /// All edges, ordered by symbol then tuple.
    [[nodiscard]] std::vector<Edge> edges() const;

    /// Same signature, carrier names and edge set.
    bool operator==(const Structure& other) const;

  private:
    struct Impl {
        SignaturePtr signature;
        std::vector<std::string> carrier;
        std::vector<Relation> relations;
    };
    void init(SignaturePtr signature, std::vector<std::string> carrier,
              std::vector<std::vector<ElementId>> flat_per_symbol);

    std::shared_ptr<const Impl> impl_;
};

/// A carrier function between structures. Validity (edge preservation) is
/// checked by validate_morphism, never assumed.
struct Morphism {
    Structure source;
    Structure target;
    std::vector<ElementId> map;

    ElementId operator()(ElementId e) const { return map[e]; }
    bool operator==(const Morphism&) const = default;
};

/// True iff every source edge maps to a target edge. Throws Error when the
/// signatures differ or the map is not a total function into the target.
[[nodiscard]] bool validate_morphism(const Morphism& h);

/// Edge preservation for a raw function table; no structural checks.
[[nodiscard]] bool preserves_edges(const Structure& source, const Structure& target, std::span<const ElementId> map);

[[nodiscard]] Morphism identity_morphism(const Structure& x);
/// g ∘ f
[[nodiscard]] Morphism compose(const Morphism& g, const Morphism& f);

/// Carrier names "0", "1", ..., "n-1".
[[nodiscard]] std::vector<std::string> numbered_carrier(std::size_t n, const std::string& prefix = "");

/// Induced substructure on the given elements (in the given order).
[[nodiscard]] Structure induced_substructure(const Structure& x, std::span<const ElementId> elements);

} // namespace relhorn
