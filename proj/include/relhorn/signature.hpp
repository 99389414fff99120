#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relhorn/quantale.hpp"

namespace relhorn {

using SymbolId = std::uint32_t;
using ElementId = std::uint32_t;
using VarId = std::uint32_t;

struct RelationSymbol {
    std::string name;
    std::uint32_t arity = 0;

    bool operator==(const RelationSymbol&) const = default;
};

enum class OrderKind { Discrete, Explicit, QuantaleInduced };

/// A relational signature with a preorder on each Π(n).
///
/// Symbols are identified by their position. For quantale-induced
/// signatures symbol i is the binary symbol ∼_v for quantale element i.
class Signature {
  public:
    static Signature discrete(std::vector<RelationSymbol> symbols);
    static Signature explicit_order(std::vector<RelationSymbol> symbols,
                                    const std::vector<std::pair<std::string, std::string>>& pairs);
    static Signature quantale_induced(Quantale v);

    [[nodiscard]] std::size_t size() const { return symbols_.size(); }
    [[nodiscard]] const std::vector<RelationSymbol>& symbols() const { return symbols_; }
    [[nodiscard]] const RelationSymbol& symbol(SymbolId s) const { return symbols_.at(s); }
    [[nodiscard]] std::uint32_t arity(SymbolId s) const { return symbols_[s].arity; }
    [[nodiscard]] std::optional<SymbolId> find(const std::string& name) const;
    [[nodiscard]] SymbolId index_of(const std::string& name) const;

    [[nodiscard]] OrderKind kind() const { return kind_; }
    [[nodiscard]] bool is_discrete() const;
    [[nodiscard]] const std::vector<std::pair<SymbolId, SymbolId>>& declared_pairs() const { return declared_; }
    [[nodiscard]] const std::optional<Quantale>& quantale() const { return quantale_; }

    /// Reflexive-transitive closure of the declared order.
    [[nodiscard]] bool leq(SymbolId r, SymbolId s) const { return leq_[r][s]; }

    [[nodiscard]] std::vector<std::uint32_t> arities() const;
    [[nodiscard]] const std::vector<SymbolId>& symbols_of_arity(std::uint32_t n) const;

    /// True when the order is not discrete and every nonempty Π(n) is a
    /// distributive finite lattice (hence a complete Heyting algebra).
    /// Discrete signatures always take the discrete branch, even when each
    /// Π(n) is a singleton.
    [[nodiscard]] bool is_complete_heyting() const { return heyting_ && !is_discrete(); }
    [[nodiscard]] SymbolId meet(SymbolId a, SymbolId b) const;
    [[nodiscard]] SymbolId join(SymbolId a, SymbolId b) const;
    [[nodiscard]] SymbolId bottom(std::uint32_t arity) const;
    [[nodiscard]] SymbolId top(std::uint32_t arity) const;

    bool operator==(const Signature& other) const;

  private:
    Signature() = default;
    void finish();

    std::vector<RelationSymbol> symbols_;
    OrderKind kind_ = OrderKind::Discrete;
    std::vector<std::pair<SymbolId, SymbolId>> declared_;
    std::optional<Quantale> quantale_;
    std::vector<std::vector<bool>> leq_;
    std::vector<std::vector<SymbolId>> by_arity_;
    bool heyting_ = false;
    std::vector<std::vector<SymbolId>> meet_;
    std::vector<std::vector<SymbolId>> join_;
    std::vector<SymbolId> bottom_;
    std::vector<SymbolId> top_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

[[nodiscard]] inline SignaturePtr make_signature(Signature s) {
    return std::make_shared<const Signature>(std::move(s));
}

[[nodiscard]] bool same_signature(const SignaturePtr& a, const SignaturePtr& b);

/// Name of the symbol ∼_v for quantale element v.
[[nodiscard]] std::string quantale_symbol_name(const std::string& element);

} // namespace relhorn
