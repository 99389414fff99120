#include "relhorn/closure.hpp"

#include <algorithm>
#include <set>

#include "relhorn/error.hpp"

namespace relhorn {

namespace {

std::string describe_map(const Structure& src, const Structure& tgt, std::span<const ElementId> map) {
    std::string s = "{";
    for (std::size_t i = 0; i < map.size(); ++i) {
        s += (i ? ", " : "") + src.name(static_cast<ElementId>(i)) + "->" + tgt.name(map[i]);
    }
    return s + "}";
}

// Odometer over the cartesian product of `lists`; calls fn(choice).
template <typename Fn>
void for_each_choice(const std::vector<const std::vector<ElementId>*>& lists, Fn&& fn) {
    for (const auto* l : lists) {
        if (l->empty()) {
            return;
        }
    }
    std::vector<std::size_t> idx(lists.size(), 0);
    std::vector<ElementId> choice(lists.size());
    while (true) {
        for (std::size_t k = 0; k < lists.size(); ++k) {
            choice[k] = (*lists[k])[idx[k]];
        }
        fn(choice);
        std::size_t k = lists.size();
        while (k > 0) {
            --k;
            if (++idx[k] < lists[k]->size()) {
                break;
            }
            idx[k] = 0;
            if (k == 0) {
                return;
            }
        }
        if (lists.empty()) {
            return;
        }
    }
}

std::vector<std::vector<ElementId>> all_functions(std::size_t domain, std::size_t codomain) {
    std::vector<std::vector<ElementId>> out;
    if (domain > 0 && codomain == 0) {
        return out;
    }
    std::vector<ElementId> f(domain, 0);
    while (true) {
        out.push_back(f);
        std::size_t k = domain;
        while (k > 0) {
            --k;
            if (++f[k] < codomain) {
                break;
            }
            f[k] = 0;
            if (k == 0) {
                return out;
            }
        }
        if (domain == 0) {
            return out;
        }
    }
}

PartialProductResult build_partial_product(const Structure& y, const Morphism& f, PartialProductVariant variant) {
    const auto& x = f.source;
    const auto& z = f.target;
    if (!same_signature(x.signature_ptr(), y.signature_ptr())) {
        throw Error("partial product: signatures differ");
    }
    if (!validate_morphism(f)) {
        throw Error("partial product: f is not a morphism");
    }
    const auto& sigp = x.signature_ptr();
    const auto& sig = *sigp;
    if (variant == PartialProductVariant::Reflexive) {
        auto base = base_theory(sigp);
        if (!is_model(x, base) || !is_model(z, base) || !is_model(y, base)) {
            throw Error("partial product (reflexive variant): X, Z and Y must be models of the base theory");
        }
    }

    PartialProductResult r{variant, f, y, y, f, product(y, y), f, {}, {}};
    r.fibres.resize(z.size());
    std::vector<ElementId> fibre_pos(x.size());
    for (ElementId e = 0; e < x.size(); ++e) {
        fibre_pos[e] = static_cast<ElementId>(r.fibres[f.map[e]].size());
        r.fibres[f.map[e]].push_back(e);
    }

    std::vector<std::string> names;
    std::vector<ElementId> pmap;
    std::vector<std::vector<ElementId>> by_z(z.size());
    for (ElementId c = 0; c < z.size(); ++c) {
        std::vector<std::vector<ElementId>> js;
        if (variant == PartialProductVariant::Str) {
            js = all_functions(r.fibres[c].size(), y.size());
        } else {
            js = enumerate_maps(induced_substructure(x, r.fibres[c]), y);
        }
        for (auto& j : js) {
            std::string name = z.name(c) + "{";
            for (std::size_t i = 0; i < j.size(); ++i) {
                name += (i ? "," : "") + x.name(r.fibres[c][i]) + ":" + y.name(j[i]);
            }
            name += "}";
            by_z[c].push_back(static_cast<ElementId>(names.size()));
            names.push_back(std::move(name));
            pmap.push_back(c);
            r.tables.push_back(std::move(j));
        }
    }

    std::vector<std::vector<ElementId>> flat(sig.size());
    for (SymbolId rs = 0; rs < sig.size(); ++rs) {
        const auto& rz = z.relation(rs);
        std::vector<SymbolId> below;
        for (SymbolId s = 0; s < sig.size(); ++s) {
            bool take = variant == PartialProductVariant::Str ? s == rs : sig.leq(s, rs);
            if (take) {
                below.push_back(s);
            }
        }
        for (std::size_t i = 0; i < rz.size(); ++i) {
            auto zt = rz.tuple(i);
            // X-edges lying over this Z-edge, for every relevant symbol
            std::vector<std::pair<SymbolId, std::span<const ElementId>>> over;
            for (auto s : below) {
                const auto& rx = x.relation(s);
                for (std::size_t k = 0; k < rx.size(); ++k) {
                    auto xt = rx.tuple(k);
                    bool lies = true;
                    for (std::size_t m = 0; m < xt.size(); ++m) {
                        if (f.map[xt[m]] != zt[m]) {
                            lies = false;
                            break;
                        }
                    }
                    if (lies) {
                        over.emplace_back(s, xt);
                    }
                }
            }
            std::vector<const std::vector<ElementId>*> lists;
            for (auto c : zt) {
                lists.push_back(&by_z[c]);
            }
            std::vector<ElementId> image;
            for_each_choice(lists, [&](const std::vector<ElementId>& es) {
                for (const auto& [s, xt] : over) {
                    image.resize(xt.size());
                    for (std::size_t m = 0; m < xt.size(); ++m) {
                        image[m] = r.tables[es[m]][fibre_pos[xt[m]]];
                    }
                    if (!y.holds(s, image)) {
                        return;
                    }
                }
                flat[rs].insert(flat[rs].end(), es.begin(), es.end());
            });
        }
    }

    r.object = Structure(sigp, std::move(names), std::move(flat));
    r.p = Morphism{r.object, z, std::move(pmap)};
    r.pullback = pullback(r.p, f);
    std::vector<ElementId> ev;
    for (auto [e, xe] : r.pullback.pairs) {
        ev.push_back(r.tables[e][fibre_pos[xe]]);
    }
    r.eval = Morphism{r.pullback.object, y, std::move(ev)};
    return r;
}

} // namespace

PartialProductResult partial_product_str(const Structure& y, const Morphism& f) {
    return build_partial_product(y, f, PartialProductVariant::Str);
}

PartialProductResult partial_product_refl(const Structure& y, const Morphism& f) {
    return build_partial_product(y, f, PartialProductVariant::Reflexive);
}

PartialProductResult with_object(const PartialProductResult& c, const Structure& new_object) {
    if (new_object.carrier() != c.object.carrier()) {
        throw Error("with_object: carrier must stay the same");
    }
    PartialProductResult r = c;
    r.object = new_object;
    r.p = Morphism{new_object, c.p.target, c.p.map};
    r.pullback = pullback(r.p, c.f);
    r.eval = Morphism{r.pullback.object, c.y, c.eval.map};
    return r;
}

ExponentialResult exponential_object(const Structure& x, const Structure& y) {
    if (!same_signature(x.signature_ptr(), y.signature_ptr())) {
        throw Error("exponential: signatures differ");
    }
    const auto& sigp = x.signature_ptr();
    const auto& sig = *sigp;
    auto homs = enumerate_maps(x, y);
    std::vector<std::string> names;
    for (const auto& h : homs) {
        std::string name = "<";
        for (std::size_t i = 0; i < h.size(); ++i) {
            name += (i ? "," : "") + y.name(h[i]);
        }
        names.push_back(name + ">");
    }
    std::vector<std::vector<ElementId>> flat(sig.size());
    std::vector<ElementId> all(homs.size());
    for (ElementId i = 0; i < all.size(); ++i) {
        all[i] = i;
    }
    for (SymbolId s = 0; s < sig.size(); ++s) {
        const auto& rx = x.relation(s);
        std::vector<const std::vector<ElementId>*> lists(sig.arity(s), &all);
        std::vector<ElementId> image(sig.arity(s));
        for_each_choice(lists, [&](const std::vector<ElementId>& hs) {
            for (std::size_t k = 0; k < rx.size(); ++k) {
                auto xt = rx.tuple(k);
                for (std::size_t m = 0; m < xt.size(); ++m) {
                    image[m] = homs[hs[m]][xt[m]];
                }
                if (!y.holds(s, image)) {
                    return;
                }
            }
            flat[s].insert(flat[s].end(), hs.begin(), hs.end());
        });
    }
    Structure obj(sigp, std::move(names), std::move(flat));
    auto prod = product(obj, x);
    std::vector<ElementId> ev;
    for (auto [h, xe] : prod.pairs) {
        ev.push_back(homs[h][xe]);
    }
    Morphism eval{prod.object, y, std::move(ev)};
    return {x, y, obj, std::move(homs), prod, eval};
}

ExponentialResult with_object(const ExponentialResult& c, const Structure& new_object) {
    if (new_object.carrier() != c.object.carrier()) {
        throw Error("with_object: carrier must stay the same");
    }
    ExponentialResult r = c;
    r.object = new_object;
    r.product = product(new_object, c.x);
    r.eval = Morphism{r.product.object, c.y, c.eval.map};
    return r;
}

Structure internal_hom(const Theory& t, const Structure& x, const Structure& y) {
    if (!is_model(x, t) || !is_model(y, t)) {
        throw Error("internal_hom: inputs must be models of the theory");
    }
    const auto& sigp = t.signature_ptr();
    const auto& sig = *sigp;
    auto homs = enumerate_maps(x, y);
    std::vector<std::string> names;
    for (const auto& h : homs) {
        std::string name = "<";
        for (std::size_t i = 0; i < h.size(); ++i) {
            name += (i ? "," : "") + y.name(h[i]);
        }
        names.push_back(name + ">");
    }
    std::vector<ElementId> all(homs.size());
    for (ElementId i = 0; i < all.size(); ++i) {
        all[i] = i;
    }
    std::vector<std::vector<ElementId>> flat(sig.size());
    for (SymbolId s = 0; s < sig.size(); ++s) {
        std::vector<const std::vector<ElementId>*> lists(sig.arity(s), &all);
        std::vector<ElementId> image(sig.arity(s));
        for_each_choice(lists, [&](const std::vector<ElementId>& hs) {
            for (ElementId e = 0; e < x.size(); ++e) {
                for (std::size_t m = 0; m < hs.size(); ++m) {
                    image[m] = homs[hs[m]][e];
                }
                if (!y.holds(s, image)) {
                    return;
                }
            }
            flat[s].insert(flat[s].end(), hs.begin(), hs.end());
        });
    }
    return {sigp, std::move(names), std::move(flat)};
}

TensorResult tensor(const Theory& t, const Structure& x, const Structure& y) {
    if (!is_model(x, t) || !is_model(y, t)) {
        throw Error("tensor: inputs must be models of the theory");
    }
    const auto& sigp = t.signature_ptr();
    const auto& sig = *sigp;
    const auto ny = y.size();
    std::vector<std::string> names;
    for (ElementId a = 0; a < x.size(); ++a) {
        for (ElementId b = 0; b < ny; ++b) {
            names.push_back("(" + x.name(a) + "," + y.name(b) + ")");
        }
    }
    std::vector<std::vector<ElementId>> flat(sig.size());
    for (SymbolId s = 0; s < sig.size(); ++s) {
        const auto& ry = y.relation(s);
        for (ElementId a = 0; a < x.size(); ++a) {
            for (std::size_t i = 0; i < ry.size(); ++i) {
                for (auto b : ry.tuple(i)) {
                    flat[s].push_back(static_cast<ElementId>(a * ny + b));
                }
            }
        }
        const auto& rx = x.relation(s);
        for (ElementId b = 0; b < ny; ++b) {
            for (std::size_t i = 0; i < rx.size(); ++i) {
                for (auto a : rx.tuple(i)) {
                    flat[s].push_back(static_cast<ElementId>(a * ny + b));
                }
            }
        }
    }
    Structure axes(sigp, std::move(names), std::move(flat));
    return {axes, free_model(t, axes)};
}

namespace {

VerifyEntry verify_exponential_one(const ExponentialResult& c, const Structure& q, std::size_t qi) {
    VerifyEntry entry{qi, q.size(), 0, 0, true, {}};
    const auto nx = c.x.size();
    auto qx = product(q, c.x);
    auto targets = enumerate_maps(qx.object, c.y);
    entry.rhs = targets.size();
    std::set<std::vector<ElementId>> seen;
    for_each_morphism(q, c.object, {}, [&](std::span<const ElementId> h) {
        ++entry.lhs;
        std::vector<ElementId> g(qx.pairs.size());
        for (std::size_t i = 0; i < qx.pairs.size(); ++i) {
            auto [a, xe] = qx.pairs[i];
            g[i] = c.eval.map[h[a] * nx + xe];
        }
        if (!preserves_edges(qx.object, c.y, g)) {
            entry.ok = false;
            entry.detail = "h = " + describe_map(q, c.object, h) + " curries to a non-morphism";
            return false;
        }
        if (!seen.insert(std::move(g)).second) {
            entry.ok = false;
            entry.detail = "h = " + describe_map(q, c.object, h) + " curries to an already-hit map";
            return false;
        }
        return true;
    });
    if (entry.ok && seen.size() != targets.size()) {
        entry.ok = false;
        for (const auto& g : targets) {
            if (!seen.count(g)) {
                entry.detail = "g = " + describe_map(qx.object, c.y, g) + " has no transpose";
                break;
            }
        }
    }
    return entry;
}

VerifyEntry verify_partial_product_one(const PartialProductResult& c, const Structure& q, std::size_t qi) {
    VerifyEntry entry{qi, q.size(), 0, 0, true, {}};
    const auto& f = c.f;
    const auto& x = f.source;
    const auto& z = f.target;
    const auto np = c.object.size();
    std::vector<std::int64_t> lookup(np * x.size(), -1);
    for (std::size_t i = 0; i < c.pullback.pairs.size(); ++i) {
        auto [e, xe] = c.pullback.pairs[i];
        lookup[e * x.size() + xe] = static_cast<std::int64_t>(i);
    }
    std::vector<std::vector<ElementId>> p_fibres(z.size());
    for (ElementId e = 0; e < np; ++e) {
        p_fibres[c.p.map[e]].push_back(e);
    }
    for_each_morphism(q, z, {}, [&](std::span<const ElementId> qmap) {
        Morphism qm{q, z, {qmap.begin(), qmap.end()}};
        auto pb = pullback(qm, f);
        auto targets = enumerate_maps(pb.object, c.y);
        entry.rhs += targets.size();
        ImageCandidates cands(q.size());
        bool empty_fibre = false;
        for (ElementId a = 0; a < q.size(); ++a) {
            cands[a] = p_fibres[qmap[a]];
            empty_fibre = empty_fibre || cands[a].empty();
        }
        std::set<std::vector<ElementId>> seen;
        if (!empty_fibre) {
            for_each_morphism(q, c.object, cands, [&](std::span<const ElementId> h) {
                std::vector<ElementId> g(pb.pairs.size());
                for (std::size_t i = 0; i < pb.pairs.size(); ++i) {
                    auto [a, xe] = pb.pairs[i];
                    auto at = lookup[h[a] * x.size() + xe];
                    g[i] = c.eval.map[static_cast<std::size_t>(at)];
                }
                if (!preserves_edges(pb.object, c.y, g)) {
                    entry.ok = false;
                    entry.detail = "q = " + describe_map(q, z, qmap) + ", h = " + describe_map(q, c.object, h) +
                                   " yields a non-morphism";
                    return false;
                }
                if (!seen.insert(std::move(g)).second) {
                    entry.ok = false;
                    entry.detail = "q = " + describe_map(q, z, qmap) + ": two mediating maps for one g";
                    return false;
                }
                return true;
            });
        }
        entry.lhs += seen.size();
        if (entry.ok && seen.size() != targets.size()) {
            entry.ok = false;
            for (const auto& g : targets) {
                if (!seen.count(g)) {
                    entry.detail = "q = " + describe_map(q, z, qmap) + ", g = " + describe_map(pb.object, c.y, g) +
                                   " has no mediating map";
                    break;
                }
            }
        }
        return entry.ok;
    });
    return entry;
}

VerifyReport merge(std::vector<VerifyEntry> entries) {
    VerifyReport r;
    r.entries = std::move(entries);
    for (const auto& e : r.entries) {
        if (!e.ok && r.passed) {
            r.passed = false;
            r.witness_q = e.q_index;
            r.witness = e.detail;
        }
    }
    return r;
}

template <typename Candidate, typename One>
VerifyReport run_serial(const Candidate& c, const std::vector<Structure>& family, One one) {
    std::vector<VerifyEntry> entries;
    for (std::size_t i = 0; i < family.size(); ++i) {
        entries.push_back(one(c, family[i], i));
    }
    return merge(std::move(entries));
}

template <typename Candidate, typename One>
VerifyReport run_parallel(const Candidate& c, const std::vector<Structure>& family, One one) {
    std::vector<VerifyEntry> entries(family.size());
    const long n = static_cast<long>(family.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        auto k = static_cast<std::size_t>(i);
        entries[k] = one(c, family[k], k);
    }
    return merge(std::move(entries));
}

} // namespace

VerifyReport verify_exponential(const ExponentialResult& candidate, const std::vector<Structure>& family) {
    return run_serial(candidate, family, verify_exponential_one);
}

VerifyReport verify_exponential_parallel(const ExponentialResult& candidate, const std::vector<Structure>& family) {
    return run_parallel(candidate, family, verify_exponential_one);
}

VerifyReport verify_partial_product(const PartialProductResult& candidate, const std::vector<Structure>& family) {
    return run_serial(candidate, family, verify_partial_product_one);
}

VerifyReport verify_partial_product_parallel(const PartialProductResult& candidate,
                                             const std::vector<Structure>& family) {
    return run_parallel(candidate, family, verify_partial_product_one);
}

} // namespace relhorn
