#include "relhorn/structure.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "relhorn/error.hpp"

namespace relhorn {

namespace {

constexpr std::uint64_t kDenseLimit = 1u << 20;

// |X|^n, or nullopt on overflow.
std::optional<std::uint64_t> tuple_space(std::size_t n, std::uint32_t arity) {
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < arity; ++i) {
        if (n != 0 && total > std::numeric_limits<std::uint64_t>::max() / n) {
            return std::nullopt;
        }
        total *= n;
    }
    return total;
}

} // namespace

Relation::Relation(std::uint32_t arity, std::size_t carrier_size, std::vector<ElementId> flat_tuples)
    : arity_(arity), n_(carrier_size) {
    if (arity_ == 0 || flat_tuples.size() % arity_ != 0) {
        throw Error("relation: malformed tuple list");
    }
    for (auto e : flat_tuples) {
        if (e >= n_) {
            throw Error("relation: tuple element outside carrier");
        }
    }
    auto space = tuple_space(n_, arity_);
    if (!space) {
        throw Error("relation: tuple space exceeds 64-bit encoding");
    }
    // sort + dedupe tuples as fixed-width records
    const std::size_t count = flat_tuples.size() / arity_;
    std::vector<std::size_t> order(count);
    for (std::size_t i = 0; i < count; ++i) {
        order[i] = i;
    }
    auto less = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(flat_tuples.begin() + a * arity_, flat_tuples.begin() + (a + 1) * arity_,
                                            flat_tuples.begin() + b * arity_, flat_tuples.begin() + (b + 1) * arity_);
    };
    std::sort(order.begin(), order.end(), less);
    flat_.reserve(flat_tuples.size());
    for (std::size_t k = 0; k < count; ++k) {
        auto i = order[k];
        if (k > 0 && !less(order[k - 1], i)) {
            continue;
        }
        flat_.insert(flat_.end(), flat_tuples.begin() + i * arity_, flat_tuples.begin() + (i + 1) * arity_);
    }
    use_dense_ = *space <= kDenseLimit;
    if (use_dense_) {
        dense_.assign(*space, false);
    }
    for (std::size_t i = 0; i < size(); ++i) {
        auto code = encode(tuple(i));
        if (use_dense_) {
            dense_[code] = true;
        } else {
            sparse_.insert(code);
        }
    }
}

std::uint64_t Relation::encode(std::span<const ElementId> t) const {
    std::uint64_t code = 0;
    for (auto e : t) {
        code = code * n_ + e;
    }
    return code;
}

bool Relation::contains(std::span<const ElementId> t) const {
    if (t.size() != arity_) {
        return false;
    }
    for (auto e : t) {
        if (e >= n_) {
            return false;
        }
    }
    auto code = encode(t);
    return use_dense_ ? dense_[code] : sparse_.count(code) > 0;
}

Structure::Structure(SignaturePtr signature, std::vector<std::string> carrier, const std::vector<Edge>& edges) {
    if (!signature) {
        throw Error("structure: null signature");
    }
    std::vector<std::vector<ElementId>> flat(signature->size());
    for (const auto& e : edges) {
        if (e.symbol >= signature->size()) {
            throw Error("structure: edge symbol outside signature");
        }
        if (e.args.size() != signature->arity(e.symbol)) {
            throw Error("structure: edge arity mismatch for '" + signature->symbol(e.symbol).name + "'");
        }
        flat[e.symbol].insert(flat[e.symbol].end(), e.args.begin(), e.args.end());
    }
    init(std::move(signature), std::move(carrier), std::move(flat));
}

Structure::Structure(SignaturePtr signature, std::vector<std::string> carrier,
                     std::vector<std::vector<ElementId>> flat_per_symbol) {
    if (!signature) {
        throw Error("structure: null signature");
    }
    init(std::move(signature), std::move(carrier), std::move(flat_per_symbol));
}

void Structure::init(SignaturePtr signature, std::vector<std::string> carrier,
                     std::vector<std::vector<ElementId>> flat_per_symbol) {
    if (flat_per_symbol.size() != signature->size()) {
        throw Error("structure: relation count does not match signature");
    }
    {
        std::vector<std::string> sorted = carrier;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup != sorted.end()) {
            throw Error("structure: duplicate element id '" + *dup + "'");
        }
    }
    auto impl = std::make_shared<Impl>();
    impl->relations.reserve(signature->size());
    for (SymbolId s = 0; s < signature->size(); ++s) {
        impl->relations.emplace_back(signature->arity(s), carrier.size(), std::move(flat_per_symbol[s]));
    }
    impl->signature = std::move(signature);
    impl->carrier = std::move(carrier);
    impl_ = std::move(impl);
}

std::optional<ElementId> Structure::find(const std::string& name) const {
    const auto& c = impl_->carrier;
    auto it = std::find(c.begin(), c.end(), name);
    if (it == c.end()) {
        return std::nullopt;
    }
    return static_cast<ElementId>(it - c.begin());
}

ElementId Structure::index_of(const std::string& name) const {
    if (auto e = find(name)) {
        return *e;
    }
    throw Error("structure: unknown element '" + name + "'");
}

std::size_t Structure::edge_count() const {
    std::size_t total = 0;
    for (const auto& r : impl_->relations) {
        total += r.size();
    }
    return total;
}

std::vector<Edge> Structure::edges() const {
    std::vector<Edge> out;
    for (SymbolId s = 0; s < impl_->relations.size(); ++s) {
        const auto& r = impl_->relations[s];
        for (std::size_t i = 0; i < r.size(); ++i) {
            auto t = r.tuple(i);
            out.push_back({s, {t.begin(), t.end()}});
        }
    }
    return out;
}

bool Structure::operator==(const Structure& other) const {
    if (impl_ == other.impl_) {
        return true;
    }
    if (!same_signature(signature_ptr(), other.signature_ptr()) || carrier() != other.carrier()) {
        return false;
    }
    for (SymbolId s = 0; s < impl_->relations.size(); ++s) {
        if (impl_->relations[s].flat() != other.impl_->relations[s].flat()) {
            return false;
        }
    }
    return true;
}

bool preserves_edges(const Structure& source, const Structure& target, std::span<const ElementId> map) {
    std::vector<ElementId> image;
    for (SymbolId s = 0; s < source.signature().size(); ++s) {
        const auto& r = source.relation(s);
        const auto& rt = target.relation(s);
        image.resize(r.arity());
        for (std::size_t i = 0; i < r.size(); ++i) {
            auto t = r.tuple(i);
            for (std::size_t k = 0; k < t.size(); ++k) {
                image[k] = map[t[k]];
            }
            if (!rt.contains(image)) {
                return false;
            }
        }
    }
    return true;
}

bool validate_morphism(const Morphism& h) {
    if (!same_signature(h.source.signature_ptr(), h.target.signature_ptr())) {
        throw Error("morphism: source and target signatures differ");
    }
    if (h.map.size() != h.source.size()) {
        throw Error("morphism: map is not total on the source carrier");
    }
    for (auto e : h.map) {
        if (e >= h.target.size()) {
            throw Error("morphism: map leaves the target carrier");
        }
    }
    return preserves_edges(h.source, h.target, h.map);
}

Morphism identity_morphism(const Structure& x) {
    std::vector<ElementId> map(x.size());
    for (ElementId e = 0; e < map.size(); ++e) {
        map[e] = e;
    }
    return {x, x, std::move(map)};
}

Morphism compose(const Morphism& g, const Morphism& f) {
    if (!(f.target == g.source)) {
        throw Error("compose: morphisms are not composable");
    }
    std::vector<ElementId> map(f.map.size());
    for (std::size_t i = 0; i < map.size(); ++i) {
        map[i] = g.map[f.map[i]];
    }
    return {f.source, g.target, std::move(map)};
}

std::vector<std::string> numbered_carrier(std::size_t n, const std::string& prefix) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(prefix + std::to_string(i));
    }
    return out;
}

Structure induced_substructure(const Structure& x, std::span<const ElementId> elements) {
    std::vector<std::int64_t> position(x.size(), -1);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        position[elements[i]] = static_cast<std::int64_t>(i);
        names.push_back(x.name(elements[i]));
    }
    std::vector<std::vector<ElementId>> flat(x.signature().size());
    for (SymbolId s = 0; s < x.signature().size(); ++s) {
        const auto& r = x.relation(s);
        for (std::size_t i = 0; i < r.size(); ++i) {
            auto t = r.tuple(i);
            bool inside = std::all_of(t.begin(), t.end(), [&](ElementId e) { return position[e] >= 0; });
            if (!inside) {
                continue;
            }
            for (auto e : t) {
                flat[s].push_back(static_cast<ElementId>(position[e]));
            }
        }
    }
    return {x.signature_ptr(), std::move(names), std::move(flat)};
}

} // namespace relhorn
