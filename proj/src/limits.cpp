#include "relhorn/limits.hpp"

#include <algorithm>

#include "relhorn/error.hpp"
#include "relhorn/semantics.hpp"

namespace relhorn {

Structure terminal(const SignaturePtr& sig) {
    std::vector<std::vector<ElementId>> flat(sig->size());
    for (SymbolId s = 0; s < sig->size(); ++s) {
        flat[s].assign(sig->arity(s), 0);
    }
    return {sig, {"*"}, std::move(flat)};
}

Morphism to_terminal(const Structure& x) {
    return {x, terminal(x.signature_ptr()), std::vector<ElementId>(x.size(), 0)};
}

namespace {

std::string pair_name(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

ProductResult build_pairs(const Structure& a, const Structure& b,
                          const std::vector<std::pair<ElementId, ElementId>>& pairs) {
    const auto& sig = a.signature_ptr();
    // index lookup (a, b) -> position, or -1
    std::vector<std::int64_t> pos(a.size() * b.size(), -1);
    std::vector<std::string> names;
    std::vector<ElementId> m1, m2;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [p, q] = pairs[i];
        pos[p * b.size() + q] = static_cast<std::int64_t>(i);
        names.push_back(pair_name(a.name(p), b.name(q)));
        m1.push_back(p);
        m2.push_back(q);
    }
    std::vector<std::vector<ElementId>> flat(sig->size());
    for (SymbolId s = 0; s < sig->size(); ++s) {
        const auto& ra = a.relation(s);
        const auto& rb = b.relation(s);
        for (std::size_t i = 0; i < ra.size(); ++i) {
            auto t = ra.tuple(i);
            for (std::size_t j = 0; j < rb.size(); ++j) {
                auto u = rb.tuple(j);
                bool inside = true;
                for (std::size_t k = 0; k < t.size(); ++k) {
                    if (pos[t[k] * b.size() + u[k]] < 0) {
                        inside = false;
                        break;
                    }
                }
                if (!inside) {
                    continue;
                }
                for (std::size_t k = 0; k < t.size(); ++k) {
                    flat[s].push_back(static_cast<ElementId>(pos[t[k] * b.size() + u[k]]));
                }
            }
        }
    }
    Structure obj(sig, std::move(names), std::move(flat));
    return {obj, Morphism{obj, a, std::move(m1)}, Morphism{obj, b, std::move(m2)}, pairs};
}

} // namespace

ProductResult product(const Structure& x, const Structure& y) {
    if (!same_signature(x.signature_ptr(), y.signature_ptr())) {
        throw Error("product: signatures differ");
    }
    std::vector<std::pair<ElementId, ElementId>> pairs;
    for (ElementId a = 0; a < x.size(); ++a) {
        for (ElementId b = 0; b < y.size(); ++b) {
            pairs.emplace_back(a, b);
        }
    }
    return build_pairs(x, y, pairs);
}

ProductResult pullback(const Morphism& f, const Morphism& g) {
    if (!(f.target == g.target)) {
        throw Error("pullback: morphisms do not share a codomain");
    }
    if (!same_signature(f.source.signature_ptr(), g.source.signature_ptr())) {
        throw Error("pullback: signatures differ");
    }
    std::vector<std::pair<ElementId, ElementId>> pairs;
    for (ElementId a = 0; a < f.source.size(); ++a) {
        for (ElementId b = 0; b < g.source.size(); ++b) {
            if (f.map[a] == g.map[b]) {
                pairs.emplace_back(a, b);
            }
        }
    }
    return build_pairs(f.source, g.source, pairs);
}

std::vector<ElementId> fibre(const Morphism& f, ElementId z) {
    if (z >= f.target.size()) {
        throw Error("fibre: element outside the codomain");
    }
    std::vector<ElementId> out;
    for (ElementId x = 0; x < f.source.size(); ++x) {
        if (f.map[x] == z) {
            out.push_back(x);
        }
    }
    return out;
}

Structure fibre_structure(const Morphism& f, ElementId z) {
    auto elems = fibre(f, z);
    return induced_substructure(f.source, elems);
}

EqualizerResult equalizer(const Morphism& f, const Morphism& g) {
    if (!(f.source == g.source) || !(f.target == g.target)) {
        throw Error("equalizer: morphisms are not parallel");
    }
    std::vector<ElementId> keep;
    for (ElementId x = 0; x < f.source.size(); ++x) {
        if (f.map[x] == g.map[x]) {
            keep.push_back(x);
        }
    }
    auto obj = induced_substructure(f.source, keep);
    return {obj, Morphism{obj, f.source, keep}};
}

namespace {

// Edges of X grouped by the largest element they mention: those are the
// checks that become decidable once that element has an image.
struct MorphismPlan {
    const Structure& x;
    const Structure& y;
    std::vector<std::vector<ElementId>> candidates;
    std::vector<std::vector<std::pair<SymbolId, std::vector<ElementId>>>> checks;

    MorphismPlan(const Structure& src, const Structure& tgt, const ImageCandidates& cand) : x(src), y(tgt) {
        if (!same_signature(x.signature_ptr(), y.signature_ptr())) {
            throw Error("morphism enumeration: signatures differ");
        }
        candidates.resize(x.size());
        for (ElementId e = 0; e < x.size(); ++e) {
            if (e < cand.size() && !cand[e].empty()) {
                candidates[e] = cand[e];
            } else {
                candidates[e].resize(y.size());
                for (ElementId t = 0; t < y.size(); ++t) {
                    candidates[e][t] = t;
                }
            }
        }
        checks.resize(x.size());
        for (auto& e : x.edges()) {
            auto top = *std::max_element(e.args.begin(), e.args.end());
            checks[top].emplace_back(e.symbol, std::move(e.args));
        }
    }

    bool ok_at(std::size_t k, const std::vector<ElementId>& map, std::vector<ElementId>& scratch) const {
        for (const auto& [s, args] : checks[k]) {
            scratch.resize(args.size());
            for (std::size_t i = 0; i < args.size(); ++i) {
                scratch[i] = map[args[i]];
            }
            if (!y.holds(s, scratch)) {
                return false;
            }
        }
        return true;
    }

    bool run(std::size_t k, std::vector<ElementId>& map, std::vector<ElementId>& scratch,
             const std::function<bool(std::span<const ElementId>)>& fn) const {
        if (k == map.size()) {
            return fn(map);
        }
        for (auto t : candidates[k]) {
            map[k] = t;
            if (ok_at(k, map, scratch) && !run(k + 1, map, scratch, fn)) {
                return false;
            }
        }
        return true;
    }
};

void require_models(const Structure& x, const Structure& y, const Theory* t) {
    if (t == nullptr) {
        return;
    }
    if (!is_model(x, *t) || !is_model(y, *t)) {
        throw Error("enumerate_morphisms: structures must be models of the theory");
    }
}

std::vector<Morphism> wrap(const Structure& x, const Structure& y, std::vector<std::vector<ElementId>> maps) {
    std::vector<Morphism> out;
    out.reserve(maps.size());
    for (auto& m : maps) {
        out.push_back({x, y, std::move(m)});
    }
    return out;
}

} // namespace

bool for_each_morphism(const Structure& x, const Structure& y, const ImageCandidates& candidates,
                       const std::function<bool(std::span<const ElementId>)>& fn) {
    MorphismPlan plan(x, y, candidates);
    std::vector<ElementId> map(x.size());
    std::vector<ElementId> scratch;
    return plan.run(0, map, scratch, fn);
}

std::vector<std::vector<ElementId>> enumerate_maps(const Structure& x, const Structure& y,
                                                   const ImageCandidates& candidates) {
    std::vector<std::vector<ElementId>> out;
    for_each_morphism(x, y, candidates, [&](std::span<const ElementId> m) {
        out.emplace_back(m.begin(), m.end());
        return true;
    });
    return out;
}

std::vector<std::vector<ElementId>> enumerate_maps_parallel(const Structure& x, const Structure& y,
                                                            const ImageCandidates& candidates) {
    if (x.size() == 0) {
        return enumerate_maps(x, y, candidates);
    }
    MorphismPlan plan(x, y, candidates);
    const auto& first = plan.candidates[0];
    std::vector<std::vector<std::vector<ElementId>>> branches(first.size());
    const long count = static_cast<long>(first.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        std::vector<ElementId> map(x.size());
        std::vector<ElementId> scratch;
        map[0] = first[static_cast<std::size_t>(i)];
        if (!plan.ok_at(0, map, scratch)) {
            continue;
        }
        auto& local = branches[static_cast<std::size_t>(i)];
        std::function<bool(std::span<const ElementId>)> collect = [&](std::span<const ElementId> m) {
            local.emplace_back(m.begin(), m.end());
            return true;
        };
        plan.run(1, map, scratch, collect);
    }
    std::vector<std::vector<ElementId>> out;
    for (auto& b : branches) {
        for (auto& m : b) {
            out.push_back(std::move(m));
        }
    }
    return out;
}

std::size_t count_morphisms(const Structure& x, const Structure& y) {
    std::size_t n = 0;
    for_each_morphism(x, y, {}, [&](std::span<const ElementId>) {
        ++n;
        return true;
    });
    return n;
}

std::vector<Morphism> enumerate_morphisms(const Structure& x, const Structure& y, const Theory* in_theory) {
    require_models(x, y, in_theory);
    return wrap(x, y, enumerate_maps(x, y));
}

std::vector<Morphism> enumerate_morphisms_parallel(const Structure& x, const Structure& y,
                                                   const Theory* in_theory) {
    require_models(x, y, in_theory);
    return wrap(x, y, enumerate_maps_parallel(x, y));
}

} // namespace relhorn
