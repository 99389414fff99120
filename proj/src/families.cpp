#include "relhorn/families.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "relhorn/error.hpp"
#include "relhorn/semantics.hpp"
#include "relhorn/vgraph.hpp"

namespace relhorn {

namespace {

constexpr std::size_t kMaxFreeSlots = 24;

struct Slot {
    SymbolId symbol;
    std::vector<ElementId> tuple;
};

std::vector<Slot> all_slots(const Signature& sig, std::size_t n) {
    std::vector<Slot> out;
    for (SymbolId s = 0; s < sig.size(); ++s) {
        const auto ar = sig.arity(s);
        std::size_t total = 1;
        for (std::uint32_t i = 0; i < ar; ++i) {
            total *= n;
        }
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<ElementId> t(ar);
            auto c = code;
            for (std::uint32_t i = ar; i-- > 0;) {
                t[i] = static_cast<ElementId>(c % n);
                c /= n;
            }
            out.push_back({s, std::move(t)});
        }
    }
    return out;
}

bool is_loop(const std::vector<ElementId>& t) {
    return std::all_of(t.begin(), t.end(), [&](ElementId e) { return e == t.front(); });
}

} // namespace

void for_each_structure(const SignaturePtr& sig, std::size_t n, bool force_loops,
                        const std::function<void(const Structure&)>& fn) {
    auto slots = all_slots(*sig, n);
    std::vector<Slot> forced;
    std::vector<Slot> free;
    for (auto& s : slots) {
        (force_loops && is_loop(s.tuple) ? forced : free).push_back(std::move(s));
    }
    if (free.size() > kMaxFreeSlots) {
        throw Error("structure enumeration: " + std::to_string(free.size()) + " free edge slots is too many");
    }
    const auto names = numbered_carrier(n);
    const std::uint64_t total = std::uint64_t{1} << free.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<std::vector<ElementId>> flat(sig->size());
        for (const auto& s : forced) {
            flat[s.symbol].insert(flat[s.symbol].end(), s.tuple.begin(), s.tuple.end());
        }
        for (std::size_t i = 0; i < free.size(); ++i) {
            if (mask >> i & 1U) {
                const auto& s = free[i];
                flat[s.symbol].insert(flat[s.symbol].end(), s.tuple.begin(), s.tuple.end());
            }
        }
        fn(Structure(sig, names, std::move(flat)));
    }
}

std::vector<Structure> all_structures(const SignaturePtr& sig, std::size_t n, bool force_loops) {
    std::vector<Structure> out;
    for_each_structure(sig, n, force_loops, [&](const Structure& x) { out.push_back(x); });
    return out;
}

std::vector<std::uint32_t> canonical_key(const Structure& x) {
    const auto n = x.size();
    const auto edges = x.edges();
    std::vector<ElementId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::uint32_t> best;
    std::vector<std::vector<std::uint32_t>> encoded(edges.size());
    do {
        for (std::size_t i = 0; i < edges.size(); ++i) {
            auto& enc = encoded[i];
            enc.clear();
            enc.push_back(edges[i].symbol);
            for (auto e : edges[i].args) {
                enc.push_back(perm[e]);
            }
        }
        std::sort(encoded.begin(), encoded.end());
        std::vector<std::uint32_t> key{static_cast<std::uint32_t>(n)};
        for (const auto& enc : encoded) {
            key.insert(key.end(), enc.begin(), enc.end());
        }
        if (best.empty() || key < best) {
            best = std::move(key);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

bool isomorphic(const Structure& a, const Structure& b) {
    return same_signature(a.signature_ptr(), b.signature_ptr()) && a.size() == b.size() &&
           a.edge_count() == b.edge_count() && canonical_key(a) == canonical_key(b);
}

std::vector<Structure> iso_representatives(const std::vector<Structure>& xs) {
    std::set<std::vector<std::uint32_t>> seen;
    std::vector<Structure> out;
    for (const auto& x : xs) {
        if (seen.insert(canonical_key(x)).second) {
            out.push_back(x);
        }
    }
    return out;
}

namespace {

bool entails_vgraph_axioms(const Theory& t) {
    const auto& sig = t.signature();
    if (sig.kind() != OrderKind::QuantaleInduced) {
        return false;
    }
    auto gph = theory_vgph(*sig.quantale());
    return std::all_of(gph.all_axioms().begin(), gph.all_axioms().end(),
                       [&](const HornFormula& ax) { return entails(t, ax); });
}

void for_each_vgraph_structure(const SignaturePtr& sig, std::size_t n, const std::function<void(const Structure&)>& fn) {
    const auto& v = *sig->quantale();
    const std::size_t cells = n * n;
    double total = 1;
    for (std::size_t i = 0; i < cells; ++i) {
        total *= static_cast<double>(v.size());
    }
    if (total > double(1U << kMaxFreeSlots)) {
        throw Error("distance-table enumeration is too large");
    }
    VGraph g{numbered_carrier(n), std::vector<std::vector<Quantale::Value>>(n, std::vector<Quantale::Value>(n, 0))};
    std::vector<Quantale::Value> digits(cells, 0);
    while (true) {
        for (std::size_t c = 0; c < cells; ++c) {
            g.d[c / n][c % n] = digits[c];
        }
        fn(vgraph_to_structure(g, sig));
        std::size_t pos = cells;
        while (pos > 0) {
            --pos;
            if (++digits[pos] < v.size()) {
                break;
            }
            digits[pos] = 0;
            if (pos == 0) {
                return;
            }
        }
        if (cells == 0) {
            return;
        }
    }
}

} // namespace

std::vector<Structure> models_up_to(const Theory& t, std::size_t max_n) {
    std::vector<Structure> out;
    const auto& sig = t.signature_ptr();
    const bool via_tables = entails_vgraph_axioms(t);
    const bool loops = !via_tables && is_reflexive_theory(t);
    auto keep = [&](const Structure& x) {
        if (is_model(x, t)) {
            out.push_back(x);
        }
    };
    for (std::size_t n = 0; n <= max_n; ++n) {
        if (via_tables) {
            for_each_vgraph_structure(sig, n, keep);
        } else {
            for_each_structure(sig, n, loops, keep);
        }
    }
    return out;
}

std::vector<Structure> sample_family(std::vector<Structure> xs, std::size_t cap, std::uint64_t seed) {
    if (cap == 0 || xs.size() <= cap) {
        return xs;
    }
    std::vector<std::size_t> idx(xs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::size_t> chosen;
    std::mt19937_64 rng(seed);
    std::sample(idx.begin(), idx.end(), std::back_inserter(chosen), cap, rng);
    std::vector<Structure> out;
    for (auto i : chosen) {
        out.push_back(xs[i]);
    }
    return out;
}

std::vector<Structure> model_family(const Theory& t, std::size_t max_n, const FamilyOptions& opts) {
    auto xs = models_up_to(t, max_n);
    if (opts.iso_reduce) {
        xs = iso_representatives(xs);
    }
    return sample_family(std::move(xs), opts.cap, opts.seed);
}

std::vector<Structure> structure_family(const SignaturePtr& sig, std::size_t max_n, const FamilyOptions& opts) {
    std::vector<Structure> xs;
    for (std::size_t n = 0; n <= max_n; ++n) {
        for_each_structure(sig, n, false, [&](const Structure& x) { xs.push_back(x); });
    }
    if (opts.iso_reduce) {
        xs = iso_representatives(xs);
    }
    return sample_family(std::move(xs), opts.cap, opts.seed);
}

} // namespace relhorn
