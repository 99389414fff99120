#pragma once

// Brute-force oracles shared by the unit tests and the acceptance binary.
// Nothing here calls the library's semantics, limits or convexity code.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "relhorn/formula.hpp"
#include "relhorn/quantale.hpp"
#include "relhorn/signature.hpp"
#include "relhorn/structure.hpp"
#include "relhorn/theory.hpp"
#include "relhorn/vgraph.hpp"

#ifndef RELHORN_DATA_DIR
#define RELHORN_DATA_DIR "data"
#endif

namespace testing {

using namespace relhorn;

inline std::string data(const std::string& file) { return std::string(RELHORN_DATA_DIR) + "/" + file; }

/// Binary structure on "0".."n-1" with the given edges of symbol s.
inline Structure binary(const SignaturePtr& sig, std::size_t n, const std::vector<std::pair<ElementId, ElementId>>& es,
                        SymbolId s = 0) {
    std::vector<Edge> edges;
    for (auto [a, b] : es) {
        edges.push_back({s, {a, b}});
    }
    return Structure(sig, numbered_carrier(n), edges);
}

inline Structure chain(const SignaturePtr& sig, std::size_t n) {
    std::vector<std::pair<ElementId, ElementId>> es;
    for (ElementId a = 0; a < n; ++a) {
        for (ElementId b = a; b < n; ++b) {
            es.emplace_back(a, b);
        }
    }
    return binary(sig, n, es);
}

/// Calls fn on every function {0..n-1} → {0..m-1}, first coordinate most significant.
template <typename Fn>
void for_each_function(std::size_t n, std::size_t m, Fn&& fn) {
    if (m == 0 && n > 0) {
        return;
    }
    std::vector<ElementId> f(n, 0);
    while (true) {
        fn(f);
        std::size_t i = n;
        while (i > 0 && ++f[i - 1] == m) {
            f[--i] = 0;
        }
        if (i == 0) {
            return;
        }
    }
}

inline bool brute_preserves(const Structure& x, const Structure& y, const std::vector<ElementId>& h) {
    for (const auto& e : x.edges()) {
        std::vector<ElementId> img;
        for (auto a : e.args) {
            img.push_back(h[a]);
        }
        if (!y.holds(e.symbol, std::span<const ElementId>(img))) {
            return false;
        }
    }
    return true;
}

inline std::vector<std::vector<ElementId>> brute_maps(const Structure& x, const Structure& y) {
    std::vector<std::vector<ElementId>> out;
    for_each_function(x.size(), y.size(), [&](const std::vector<ElementId>& h) {
        if (brute_preserves(x, y, h)) {
            out.push_back(h);
        }
    });
    return out;
}

inline bool brute_atom(const Structure& x, const Atom& a, const std::vector<ElementId>& val) {
    std::vector<ElementId> t;
    for (auto v : a.vars) {
        t.push_back(val[v]);
    }
    return x.holds(a.symbol, std::span<const ElementId>(t));
}

inline bool brute_satisfies(const Structure& x, const HornFormula& phi) {
    bool ok = true;
    for_each_function(phi.var_count(), x.size(), [&](const std::vector<ElementId>& val) {
        if (!ok) {
            return;
        }
        for (const auto& p : phi.premises()) {
            if (!brute_atom(x, p, val)) {
                return;
            }
        }
        if (phi.has_equality()) {
            const auto& eq = std::get<Equality>(phi.conclusion());
            ok = val[eq.left] == val[eq.right];
        } else {
            ok = brute_atom(x, phi.conclusion_atom(), val);
        }
    });
    return ok;
}

inline bool brute_is_model(const Structure& x, const Theory& t) {
    return std::all_of(t.all_axioms().begin(), t.all_axioms().end(),
                       [&](const HornFormula& ax) { return brute_satisfies(x, ax); });
}

/// Reflexive transitive relations on n labelled points, as structures over `sig`
/// (one binary symbol). With `antisymmetric` only partial orders.
inline std::vector<Structure> brute_preorders(const SignaturePtr& sig, std::size_t n, bool antisymmetric = false) {
    std::vector<std::pair<ElementId, ElementId>> slots;
    for (ElementId a = 0; a < n; ++a) {
        for (ElementId b = 0; b < n; ++b) {
            if (a != b) {
                slots.emplace_back(a, b);
            }
        }
    }
    std::vector<Structure> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
        std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
        for (ElementId a = 0; a < n; ++a) {
            r[a][a] = true;
        }
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (mask >> i & 1U) {
                r[slots[i].first][slots[i].second] = true;
            }
        }
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a) {
            for (std::size_t b = 0; b < n && ok; ++b) {
                for (std::size_t c = 0; c < n && ok; ++c) {
                    ok = !(r[a][b] && r[b][c]) || r[a][c];
                }
                ok = ok && (!antisymmetric || a == b || !(r[a][b] && r[b][a]));
            }
        }
        if (!ok) {
            continue;
        }
        std::vector<std::pair<ElementId, ElementId>> es;
        for (ElementId a = 0; a < n; ++a) {
            for (ElementId b = 0; b < n; ++b) {
                if (r[a][b]) {
                    es.emplace_back(a, b);
                }
            }
        }
        out.push_back(binary(sig, n, es));
    }
    return out;
}

/// Monotone f between preorders lifts interpolants: whenever x1 ≤ x3 and
/// f x1 ≤ z2 ≤ f x3 there is x2 over z2 with x1 ≤ x2 ≤ x3.
inline bool interpolation_lifting(const Morphism& f) {
    const auto& x = f.source;
    const auto& z = f.target;
    for (ElementId x1 = 0; x1 < x.size(); ++x1) {
        for (ElementId x3 = 0; x3 < x.size(); ++x3) {
            if (!x.holds(0, {x1, x3})) {
                continue;
            }
            for (ElementId z2 = 0; z2 < z.size(); ++z2) {
                if (!z.holds(0, {f(x1), z2}) || !z.holds(0, {z2, f(x3)})) {
                    continue;
                }
                bool found = false;
                for (ElementId x2 = 0; x2 < x.size() && !found; ++x2) {
                    found = f(x2) == z2 && x.holds(0, {x1, x2}) && x.holds(0, {x2, x3});
                }
                if (!found) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// All V-category distance tables on n points (d(x,x) ≥ k, d(x,z) ≥ d(x,y) ⊗ d(y,z)).
inline std::vector<VGraph> brute_vcats(const Quantale& v, std::size_t n) {
    std::vector<VGraph> out;
    for_each_function(n * n, v.size(), [&](const std::vector<ElementId>& flat) {
        VGraph g{numbered_carrier(n), std::vector<std::vector<Quantale::Value>>(n, std::vector<Quantale::Value>(n))};
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                g.d[a][b] = flat[a * n + b];
            }
        }
        for (std::size_t a = 0; a < n; ++a) {
            if (!v.leq(v.unit(), g.d[a][a])) {
                return;
            }
            for (std::size_t b = 0; b < n; ++b) {
                for (std::size_t c = 0; c < n; ++c) {
                    if (!v.leq(v.tensor(g.d[a][b], g.d[b][c]), g.d[a][c])) {
                        return;
                    }
                }
            }
        }
        out.push_back(g);
    });
    return out;
}

inline bool brute_vfunctor(const VGraph& x, const VGraph& y, const std::vector<ElementId>& h, const Quantale& v) {
    for (std::size_t a = 0; a < x.carrier.size(); ++a) {
        for (std::size_t b = 0; b < x.carrier.size(); ++b) {
            if (!v.leq(x.d[a][b], y.d[h[a]][h[b]])) {
                return false;
            }
        }
    }
    return true;
}

/// V-functor data between V-categories on 1..max_n points.
struct VFunctor {
    VGraph x;
    VGraph z;
    std::vector<ElementId> h;
};

inline std::vector<VFunctor> vfunctors(const Quantale& v, std::size_t max_n) {
    std::vector<VGraph> cats;
    for (std::size_t n = 1; n <= max_n; ++n) {
        for (auto& g : brute_vcats(v, n)) {
            cats.push_back(std::move(g));
        }
    }
    std::vector<VFunctor> out;
    for (const auto& x : cats) {
        for (const auto& z : cats) {
            for_each_function(x.carrier.size(), z.carrier.size(), [&](const std::vector<ElementId>& h) {
                if (brute_vfunctor(x, z, h, v)) {
                    out.push_back({x, z, h});
                }
            });
        }
    }
    return out;
}

} // namespace testing
