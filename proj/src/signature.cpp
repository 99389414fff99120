#include "relhorn/signature.hpp"

#include <algorithm>
#include <limits>

#include "relhorn/error.hpp"

namespace relhorn {

namespace {

void check_symbols(const std::vector<RelationSymbol>& symbols) {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (symbols[i].arity < 1) {
            throw Error("signature: symbol '" + symbols[i].name + "' has arity 0");
        }
        if (symbols[i].name.empty() || symbols[i].name == "=") {
            throw Error("signature: invalid symbol name '" + symbols[i].name + "'");
        }
        for (std::size_t j = i + 1; j < symbols.size(); ++j) {
            if (symbols[i].name == symbols[j].name) {
                throw Error("signature: duplicate symbol '" + symbols[i].name + "'");
            }
        }
    }
}

} // namespace

std::string quantale_symbol_name(const std::string& element) { return "~" + element; }

Signature Signature::discrete(std::vector<RelationSymbol> symbols) {
    check_symbols(symbols);
    Signature s;
    s.symbols_ = std::move(symbols);
    s.kind_ = OrderKind::Discrete;
    s.finish();
    return s;
}

Signature Signature::explicit_order(std::vector<RelationSymbol> symbols,
                                    const std::vector<std::pair<std::string, std::string>>& pairs) {
    check_symbols(symbols);
    Signature s;
    s.symbols_ = std::move(symbols);
    s.kind_ = OrderKind::Explicit;
    for (const auto& [lo, hi] : pairs) {
        auto a = s.index_of(lo);
        auto b = s.index_of(hi);
        if (s.symbols_[a].arity != s.symbols_[b].arity) {
            throw Error("signature: order pair " + lo + " <= " + hi + " relates symbols of different arity");
        }
        s.declared_.emplace_back(a, b);
    }
    s.finish();
    return s;
}

Signature Signature::quantale_induced(Quantale v) {
    Signature s;
    for (const auto& name : v.names()) {
        s.symbols_.push_back({quantale_symbol_name(name), 2});
    }
    check_symbols(s.symbols_);
    s.kind_ = OrderKind::QuantaleInduced;
    for (SymbolId a = 0; a < v.size(); ++a) {
        for (SymbolId b = 0; b < v.size(); ++b) {
            if (a != b && v.leq(a, b)) {
                s.declared_.emplace_back(a, b);
            }
        }
    }
    s.quantale_ = std::move(v);
    s.finish();
    return s;
}

void Signature::finish() {
    const auto n = symbols_.size();
    leq_.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        leq_[i][i] = true;
    }
    for (auto [a, b] : declared_) {
        leq_[a][b] = true;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!leq_[i][k]) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (leq_[k][j]) {
                    leq_[i][j] = true;
                }
            }
        }
    }
    std::uint32_t max_arity = 0;
    for (const auto& sym : symbols_) {
        max_arity = std::max(max_arity, sym.arity);
    }
    by_arity_.assign(max_arity + 1, {});
    for (SymbolId s = 0; s < n; ++s) {
        by_arity_[symbols_[s].arity].push_back(s);
    }

    // Lattice structure per arity.
    heyting_ = n > 0;
    meet_.assign(n, std::vector<SymbolId>(n, 0));
    join_.assign(n, std::vector<SymbolId>(n, 0));
    bottom_.assign(max_arity + 1, 0);
    top_.assign(max_arity + 1, 0);
    for (std::uint32_t ar = 1; ar <= max_arity && heyting_; ++ar) {
        const auto& group = by_arity_[ar];
        if (group.empty()) {
            continue;
        }
        for (auto a : group) {
            for (auto b : group) {
                if (a != b && leq_[a][b] && leq_[b][a]) {
                    heyting_ = false;
                }
            }
        }
        for (auto a : group) {
            for (auto b : group) {
                constexpr SymbolId none = std::numeric_limits<SymbolId>::max();
                SymbolId lub = none;
                SymbolId glb = none;
                for (auto c : group) {
                    if (leq_[a][c] && leq_[b][c] && (lub == none || leq_[c][lub])) {
                        lub = c;
                    }
                    if (leq_[c][a] && leq_[c][b] && (glb == none || leq_[glb][c])) {
                        glb = c;
                    }
                }
                for (auto c : group) {
                    if (lub != none && leq_[a][c] && leq_[b][c] && !leq_[lub][c]) {
                        lub = none;
                    }
                    if (glb != none && leq_[c][a] && leq_[c][b] && !leq_[c][glb]) {
                        glb = none;
                    }
                }
                if (lub == none || glb == none) {
                    heyting_ = false;
                } else {
                    join_[a][b] = lub;
                    meet_[a][b] = glb;
                }
            }
        }
        if (!heyting_) {
            break;
        }
        auto lo = group.front();
        auto hi = group.front();
        for (auto g : group) {
            lo = meet_[lo][g];
            hi = join_[hi][g];
        }
        bottom_[ar] = lo;
        top_[ar] = hi;
        for (auto a : group) {
            for (auto b : group) {
                for (auto c : group) {
                    if (meet_[a][join_[b][c]] != join_[meet_[a][b]][meet_[a][c]]) {
                        heyting_ = false;
                    }
                }
            }
        }
    }
}

bool Signature::is_discrete() const {
    for (SymbolId a = 0; a < size(); ++a) {
        for (SymbolId b = 0; b < size(); ++b) {
            if (a != b && leq_[a][b]) {
                return false;
            }
        }
    }
    return true;
}

std::optional<SymbolId> Signature::find(const std::string& name) const {
    for (SymbolId s = 0; s < symbols_.size(); ++s) {
        if (symbols_[s].name == name) {
            return s;
        }
    }
    return std::nullopt;
}

SymbolId Signature::index_of(const std::string& name) const {
    if (auto s = find(name)) {
        return *s;
    }
    throw Error("signature: unknown symbol '" + name + "'");
}

std::vector<std::uint32_t> Signature::arities() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t a = 1; a < by_arity_.size(); ++a) {
        if (!by_arity_[a].empty()) {
            out.push_back(a);
        }
    }
    return out;
}

const std::vector<SymbolId>& Signature::symbols_of_arity(std::uint32_t n) const {
    static const std::vector<SymbolId> empty;
    return n < by_arity_.size() ? by_arity_[n] : empty;
}

SymbolId Signature::meet(SymbolId a, SymbolId b) const {
    if (!heyting_ || symbols_[a].arity != symbols_[b].arity) {
        throw Error("signature: meet requires a lattice-ordered signature");
    }
    return meet_[a][b];
}

SymbolId Signature::join(SymbolId a, SymbolId b) const {
    if (!heyting_ || symbols_[a].arity != symbols_[b].arity) {
        throw Error("signature: join requires a lattice-ordered signature");
    }
    return join_[a][b];
}

SymbolId Signature::bottom(std::uint32_t arity) const {
    if (!heyting_ || symbols_of_arity(arity).empty()) {
        throw Error("signature: no bottom symbol of arity " + std::to_string(arity));
    }
    return bottom_[arity];
}

SymbolId Signature::top(std::uint32_t arity) const {
    if (!heyting_ || symbols_of_arity(arity).empty()) {
        throw Error("signature: no top symbol of arity " + std::to_string(arity));
    }
    return top_[arity];
}

bool Signature::operator==(const Signature& other) const {
    return symbols_ == other.symbols_ && kind_ == other.kind_ && leq_ == other.leq_ && quantale_ == other.quantale_;
}

bool same_signature(const SignaturePtr& a, const SignaturePtr& b) { return a == b || (a && b && *a == *b); }

} // namespace relhorn
