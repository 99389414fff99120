// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sys/wait.h>
#include <sstream>
#include <string>

#include "../cli_corpus.hpp"
#include "../support.hpp"
#include "relhorn/closure.hpp"
#include "relhorn/convexity.hpp"
#include "relhorn/families.hpp"
#include "relhorn/limits.hpp"
#include "relhorn/schema.hpp"
#include "relhorn/semantics.hpp"

#ifndef RELHORN_CLI
#define RELHORN_CLI "relhorn"
#endif

using namespace relhorn;
using namespace testing;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail << "first failure: " << what << "; ";
        }
    }
};

std::vector<Morphism> maps_between(const std::vector<Structure>& xs) {
    std::vector<Morphism> out;
    for (const auto& x : xs) {
        for (const auto& z : xs) {
            for (const auto& m : brute_maps(x, z)) {
                out.push_back({x, z, m});
            }
        }
    }
    return out;
}

void free_models(Outcome& o) {
    auto t = theories::pos();
    auto inputs = structure_family(t.signature_ptr(), 3, {true, 500, 1});
    auto targets = models_up_to(t, 2);
    std::size_t checks = 0;
    for (const auto& a : inputs) {
        auto fm = free_model(t, a);
        o.require(brute_is_model(fm.model, t), "free model is not a Pos-model");
        for (const auto& m : targets) {
            for (const auto& g : brute_maps(a, m)) {
                std::size_t n = 0;
                for (const auto& h : brute_maps(fm.model, m)) {
                    bool ok = true;
                    for (ElementId x = 0; x < a.size() && ok; ++x) {
                        ok = h[fm.unit_map(x)] == g[x];
                    }
                    n += ok ? 1 : 0;
                }
                o.require(n == 1, "unique factorisation");
                ++checks;
            }
        }
    }
    o.detail << inputs.size() << " inputs, " << checks << " factorisations unique";
}

void str_partial_products(Outcome& o) {
    auto sig = theories::empty_binary().signature_ptr();
    auto small = structure_family(sig, 2);
    std::size_t n = 0;
    for (const auto& f : maps_between(small)) {
        for (const auto& y : small) {
            auto r = verify_partial_product_parallel(partial_product_str(y, f), small);
            o.require(r.passed, "Str partial product verification");
            ++n;
        }
    }
    o.detail << n << " (f, Y) pairs verified against " << small.size() << " test objects";
}

void cartesian_closure(Outcome& o) {
    auto t = theories::preord();
    auto sig = t.signature_ptr();
    auto xs = model_family(t, 3);
    auto family = model_family(t, 2);
    std::size_t n = 0;
    for (const auto& x : xs) {
        for (const auto& y : xs) {
            auto e = exponential_object(x, y);
            o.require(brute_is_model(e.object, t), "exponential is a preorder");
            o.require(verify_exponential_parallel(e, family).passed, "exponential verification");
            ++n;
        }
    }
    auto two = chain(sig, 2);
    o.require(brute_maps(two, two).size() == 3, "|Hom(2,2)| = 3");
    o.require(isomorphic(exponential_object(two, two).object, chain(sig, 3)), "2^2 is the 3-chain");
    o.detail << n << " exponentials verified; |Hom(2,2)| = 3; 2^2 = 3-chain";
}

void convexity_oracle(Outcome& o, bool dual) {
    auto t = theories::pos();
    std::size_t n = 0;
    std::size_t convex = 0;
    for (const auto& f : maps_between(model_family(t, 3))) {
        bool direct = is_convex(f, t).convex;
        if (dual) {
            o.require(direct == is_convex_via_lifting(f, t).convex, "direct vs lifting");
        } else {
            o.require(direct == interpolation_lifting(f), "direct vs interpolation lifting");
        }
        convex += direct ? 1 : 0;
        ++n;
    }
    o.detail << n << " monotone maps, " << convex << " convex";
}

void safety(Outcome& o) {
    auto pre = theories::preord();
    auto trans = is_safe_axiom(pre.all_axioms()[1], pre);
    o.require(trans.safe, "transitivity safe");
    o.require(!trans.very_safe, "transitivity not very safe");
    o.require(trans.kappa.size() == 3 && trans.kappa[1] == 0, "κ(y) = x");
    auto rs = theories::refl_sym();
    o.require(is_safe_axiom(rs.all_axioms()[1], rs).very_safe, "symmetry very safe");
    o.detail << "transitivity safe with kappa(y) = x, not very safe; symmetry very safe";
}

void convex_exponentiable(Outcome& o) {
    auto t = theories::pos();
    auto family = model_family(t, 2);
    auto ys = model_family(t, 2);
    std::size_t convex = 0;
    std::size_t bad_model = 0;
    std::size_t bad_verify = 0;
    std::size_t fine = 0;
    for (const auto& f : maps_between(model_family(t, 3))) {
        bool c = is_convex(f, t).convex;
        for (const auto& y : ys) {
            auto pp = partial_product_refl(y, f);
            bool model = brute_is_model(pp.object, t);
            bool verified = model && verify_partial_product_parallel(pp, family).passed;
            if (c) {
                o.require(model && verified, "convex map partial product");
                ++convex;
            } else if (!model) {
                ++bad_model;
            } else if (!verified) {
                ++bad_verify;
            } else {
                ++fine;
            }
        }
    }
    o.detail << convex << " convex (f, Y) pairs verified; non-convex: " << bad_model << " not a model, "
             << bad_verify << " fail verification, " << fine << " pass";
}

void topology(Outcome& o) {
    auto t = theories::preord();
    auto maps = maps_between(model_family(t, 3));
    std::vector<Morphism> convex;
    std::size_t isos = 0;
    for (const auto& f : maps) {
        bool c = is_convex(f, t).convex;
        if (c) {
            convex.push_back(f);
        }
        bool bij = f.source.size() == f.target.size() &&
                   std::set<ElementId>(f.map.begin(), f.map.end()).size() == f.map.size();
        if (bij) {
            std::vector<ElementId> inv(f.map.size());
            for (ElementId a = 0; a < f.map.size(); ++a) {
                inv[f.map[a]] = a;
            }
            if (brute_preserves(f.target, f.source, inv)) {
                o.require(c, "isomorphism convex");
                ++isos;
            }
        }
    }
    std::mt19937_64 rng(2024);
    std::size_t composites = 0;
    std::size_t pullbacks = 0;
    for (std::size_t trial = 0; trial < 200000 && (composites < 250 || pullbacks < 250); ++trial) {
        const auto& f = convex[rng() % convex.size()];
        const auto& g = convex[rng() % convex.size()];
        if (g.source == f.target && composites < 250) {
            o.require(is_convex(compose(g, f), t).convex, "composite convex");
            ++composites;
        }
        const auto& h = maps[rng() % maps.size()];
        if (h.target == f.target && pullbacks < 250) {
            o.require(is_convex(pullback(f, h).second, t).convex, "pullback convex");
            ++pullbacks;
        }
    }
    o.require(composites >= 200 && pullbacks >= 200, "enough samples");
    o.detail << isos << " isomorphisms, " << composites << " composites, " << pullbacks << " pullbacks (seed 2024)";
}

void transitive_exponentiating(Outcome& o) {
    auto t = theories::reflexive_graph();
    auto family = model_family(t, 2);
    std::size_t n = 0;
    for (const auto& x : models_up_to(t, 2)) {
        for (const auto& y : models_up_to(t, 2)) {
            if (!is_transitive(y)) {
                continue;
            }
            auto e = exponential_object(x, y);
            o.require(brute_is_model(e.object, t), "exponential is reflexive");
            o.require(verify_exponential_parallel(e, family).passed, "exponential verification");
            ++n;
        }
    }
    o.detail << n << " (X, Y) pairs";
}

void boolean_bridge(Outcome& o) {
    auto v = builtin::boolean();
    auto t = theory_vcat(v);
    auto pre = theories::preord();
    for (std::size_t n = 0; n <= 3; ++n) {
        std::size_t models = 0;
        for (const auto& m : models_up_to(t, n)) {
            models += m.size() == n ? 1 : 0;
        }
        o.require(models == brute_preorders(pre.signature_ptr(), n).size(), "model count");
    }
    std::size_t n = 0;
    for (const auto& f : vfunctors(v, 2)) {
        auto as_preorder = [&](const VGraph& g) {
            std::vector<std::pair<ElementId, ElementId>> es;
            for (ElementId a = 0; a < g.carrier.size(); ++a) {
                for (ElementId b = 0; b < g.carrier.size(); ++b) {
                    if (g.d[a][b] == v.top()) {
                        es.emplace_back(a, b);
                    }
                }
            }
            return binary(pre.signature_ptr(), g.carrier.size(), es);
        };
        Morphism m{vgraph_to_structure(f.x, t.signature_ptr()), vgraph_to_structure(f.z, t.signature_ptr()), f.h};
        Morphism p{as_preorder(f.x), as_preorder(f.z), f.h};
        o.require(is_schema_convex(m, t).convex == is_convex(p, pre).convex, "schema vs discrete convexity");
        ++n;
    }
    o.detail << "model counts 1, 1, 4, 29 match preorders; " << n << " V-functors agree";
}

void ch_equivalence(Outcome& o) {
    std::size_t n = 0;
    for (const auto& v : {builtin::boolean(), builtin::chain_meet(3)}) {
        auto t = theory_vcat(v);
        for (const auto& f : vfunctors(v, 2)) {
            Morphism m{vgraph_to_structure(f.x, t.signature_ptr()), vgraph_to_structure(f.z, t.signature_ptr()), f.h};
            o.require(is_schema_convex(m, t).convex == ch_condition_oracle(f.x, f.z, f.h, v), "join-inequality agreement");
            ++n;
        }
    }
    o.detail << n << " V-functors over Boolean and 3-chain-meet";
}

void schema_safety(Outcome& o) {
    auto meet = is_schema_safe(schemas::generalized_transitivity(), theory_vcat(builtin::chain_meet(3)));
    o.require(meet.safe, "transitivity safe over the meet chain");
    auto luk = is_schema_safe(schemas::generalized_transitivity(), theory_vcat(builtin::chain3_lukasiewicz()));
    o.require(!luk.safe && luk.meet_counterexample.has_value(), "truncated addition not safe, with counterexample");
    for (const auto& v : {builtin::boolean(), builtin::chain_meet(3), builtin::chain3_lukasiewicz()}) {
        o.require(is_schema_safe(schemas::symmetry(), theory_pmet(v)).very_safe, "symmetry very safe");
    }
    o.detail << "meet chain safe; truncated addition unsafe with meet counterexample; symmetry very safe";
}

void quantale_laws(Outcome& o) {
    for (const auto& v : {builtin::boolean(), builtin::chain_meet(3), builtin::chain3_lukasiewicz()}) {
        o.require(check_quantale_laws(v).passed, "builtin passes");
    }
    auto m = builtin::chain_meet(3).with_tensor_cell(1, 2, 0);
    auto r = check_quantale_laws(m);
    o.require(!r.passed && !r.witness.empty(), "mutation caught with witness");
    o.detail << "builtins pass; mutated cell (1,2) fails " << r.failed_law << " at (";
    for (std::size_t i = 0; i < r.witness.size(); ++i) {
        o.detail << (i ? "," : "") << r.witness[i];
    }
    o.detail << ")";
}

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        out += c == '\'' ? std::string("'\\''") : std::string(1, c);
    }
    return out + "'";
}

std::pair<int, std::string> capture(const std::vector<std::string>& args) {
    std::string cmd = shell_quote(RELHORN_CLI);
    for (std::size_t i = 1; i < args.size(); ++i) {
        cmd += " " + shell_quote(args[i]);
    }
    cmd += " 2>&1";
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (p == nullptr) {
        return {-1, out};
    }
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) {
        out.append(buf.data(), got);
    }
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void determinism(Outcome& o) {
    std::size_t n = 0;
    for (const auto& c : corpus_commands()) {
        auto args = expand(c, RELHORN_DATA_DIR);
        auto a = capture(args);
        auto b = capture(args);
        o.require(a == b, "identical output for " + c.args[0]);
        o.require(a.first == c.exit_code, "exit code for " + c.args[0]);
        ++n;
    }
    o.detail << n << " commands run twice, byte-identical";
}

} // namespace

int main() {
    std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"free-model correctness (Pos)", free_models},
        {"Str partial products", str_partial_products},
        {"Preord cartesian closure", cartesian_closure},
        {"convexity = interpolation lifting", [](Outcome& o) { convexity_oracle(o, false); }},
        {"direct = lifting convexity", [](Outcome& o) { convexity_oracle(o, true); }},
        {"safety classification", safety},
        {"convex => exponentiable", convex_exponentiable},
        {"convex maps form a topology", topology},
        {"transitive models exponentiate", transitive_exponentiating},
        {"Boolean-quantale bridge", boolean_bridge},
        {"schema convexity = join-inequality oracle", ch_equivalence},
        {"schema safety", schema_safety},
        {"quantale law checker", quantale_laws},
        {"CLI determinism", determinism},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && o.pass;
        std::printf("%s %2zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.str().c_str(), secs);
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
