#include "relhorn/theory.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "relhorn/error.hpp"

namespace relhorn {

namespace {

std::size_t position_in(const std::vector<SymbolId>& group, SymbolId s) {
    auto it = std::find(group.begin(), group.end(), s);
    if (it == group.end()) {
        throw Error("schema: label has the wrong arity");
    }
    return static_cast<std::size_t>(it - group.begin());
}

std::vector<std::string> distinct_vars(std::uint32_t n) {
    std::vector<std::string> out;
    for (std::uint32_t i = 1; i <= n; ++i) {
        out.push_back("v" + std::to_string(i));
    }
    return out;
}

std::vector<VarId> iota_vars(std::uint32_t n) {
    std::vector<VarId> out(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        out[i] = i;
    }
    return out;
}

bool all_distinct(const std::vector<VarId>& vs) {
    std::set<VarId> s(vs.begin(), vs.end());
    return s.size() == vs.size();
}

} // namespace

SymbolId apply_sigma(const AxiomSchema& s, const Signature& sig, std::span<const SymbolId> labels) {
    if (labels.size() != s.premises.size()) {
        throw Error("schema '" + s.name + "': wrong number of labels");
    }
    return std::visit(
        [&](const auto& rule) -> SymbolId {
            using T = std::decay_t<decltype(rule)>;
            if constexpr (std::is_same_v<T, AxiomSchema::TensorComposite>) {
                const auto& q = sig.quantale();
                if (!q) {
                    throw Error("schema '" + s.name + "': tensor composite needs a quantale-induced signature");
                }
                Quantale::Value acc = q->unit();
                for (auto l : labels) {
                    acc = q->tensor(acc, l);
                }
                return acc;
            } else if constexpr (std::is_same_v<T, AxiomSchema::Projection>) {
                return labels[rule.premise];
            } else if constexpr (std::is_same_v<T, AxiomSchema::Constant>) {
                return rule.symbol;
            } else {
                const auto& group = sig.symbols_of_arity(s.arity);
                std::size_t index = 0;
                for (auto l : labels) {
                    index = index * group.size() + position_in(group, l);
                }
                return rule.values.at(index);
            }
        },
        s.sigma);
}

void for_each_label_tuple(const std::vector<SymbolId>& group, std::size_t k,
                          const std::function<void(const std::vector<SymbolId>&)>& fn) {
    std::vector<std::size_t> idx(k, 0);
    std::vector<SymbolId> labels(k);
    if (group.empty() && k > 0) {
        return;
    }
    while (true) {
        for (std::size_t i = 0; i < k; ++i) {
            labels[i] = group[idx[i]];
        }
        fn(labels);
        std::size_t pos = k;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < group.size()) {
                break;
            }
            idx[pos] = 0;
            if (pos == 0) {
                return;
            }
        }
        if (k == 0) {
            return;
        }
    }
}


bool sigma_is_monotone(const AxiomSchema& s, const Signature& sig) {
    const auto& group = sig.symbols_of_arity(s.arity);
    bool monotone = true;
    for_each_label_tuple(group, s.premises.size(), [&](const std::vector<SymbolId>& lo) {
        if (!monotone) {
            return;
        }
        auto base = apply_sigma(s, sig, lo);
        for (std::size_t i = 0; i < lo.size() && monotone; ++i) {
            for (auto up : group) {
                if (!sig.leq(lo[i], up)) {
                    continue;
                }
                auto hi = lo;
                hi[i] = up;
                if (!sig.leq(base, apply_sigma(s, sig, hi))) {
                    monotone = false;
                    break;
                }
            }
        }
    });
    return monotone;
}

std::vector<SchemaInstance> expand_instances(const AxiomSchema& s, const Signature& sig, std::size_t schema_index) {
    const auto& group = sig.symbols_of_arity(s.arity);
    if (group.empty()) {
        throw Error("schema '" + s.name + "': signature has no symbols of arity " + std::to_string(s.arity));
    }
    if (s.conclusion.size() != s.arity) {
        throw Error("schema '" + s.name + "': conclusion arity mismatch");
    }
    for (const auto& p : s.premises) {
        if (p.size() != s.arity) {
            throw Error("schema '" + s.name + "': premise arity mismatch");
        }
    }
    if (const auto* t = std::get_if<AxiomSchema::Table>(&s.sigma)) {
        std::size_t expected = 1;
        for (std::size_t i = 0; i < s.premises.size(); ++i) {
            expected *= group.size();
        }
        if (t->values.size() != expected) {
            throw Error("schema '" + s.name + "': sigma table is not total");
        }
        for (auto v : t->values) {
            if (v >= sig.size() || sig.arity(v) != s.arity) {
                throw Error("schema '" + s.name + "': sigma table value has the wrong arity");
            }
        }
    }
    std::vector<SchemaInstance> out;
    for_each_label_tuple(group, s.premises.size(), [&](const std::vector<SymbolId>& labels) {
        std::vector<Atom> premises;
        for (std::size_t i = 0; i < s.premises.size(); ++i) {
            premises.push_back({labels[i], s.premises[i]});
        }
        Atom conclusion{apply_sigma(s, sig, labels), s.conclusion};
        // Keep only the variables that occur, preserving schema order.
        std::vector<bool> used(s.var_names.size(), false);
        for (const auto& p : s.premises) {
            for (auto v : p) {
                used[v] = true;
            }
        }
        for (auto v : s.conclusion) {
            used[v] = true;
        }
        std::vector<VarId> remap(s.var_names.size(), 0);
        std::vector<std::string> names;
        for (VarId v = 0; v < s.var_names.size(); ++v) {
            if (used[v]) {
                remap[v] = static_cast<VarId>(names.size());
                names.push_back(s.var_names[v]);
            }
        }
        for (auto& p : premises) {
            for (auto& v : p.vars) {
                v = remap[v];
            }
        }
        for (auto& v : conclusion.vars) {
            v = remap[v];
        }
        out.push_back({schema_index, labels, HornFormula(std::move(names), std::move(premises), conclusion)});
    });
    return out;
}

namespace schemas {

AxiomSchema generalized_transitivity() {
    AxiomSchema s;
    s.name = "generalized_transitivity";
    s.arity = 2;
    s.var_names = {"x", "y", "z"};
    s.premises = {{0, 1}, {1, 2}};
    s.conclusion = {0, 2};
    s.sigma = AxiomSchema::TensorComposite{};
    s.monotone_declared = true;
    return s;
}

AxiomSchema symmetry() {
    AxiomSchema s;
    s.name = "symmetry";
    s.arity = 2;
    s.var_names = {"x", "y"};
    s.premises = {{0, 1}};
    s.conclusion = {1, 0};
    s.sigma = AxiomSchema::Projection{0};
    s.monotone_declared = true;
    return s;
}

} // namespace schemas

std::vector<HornFormula> base_axioms(const Signature& sig) {
    std::vector<HornFormula> out;
    for (SymbolId r = 0; r < sig.size(); ++r) {
        Atom loop{r, std::vector<VarId>(sig.arity(r), 0)};
        out.emplace_back(std::vector<std::string>{"v"}, std::vector<Atom>{}, loop);
    }
    for (SymbolId r = 0; r < sig.size(); ++r) {
        for (SymbolId s = 0; s < sig.size(); ++s) {
            if (r != s && sig.arity(r) == sig.arity(s) && sig.leq(s, r)) {
                auto n = sig.arity(r);
                out.emplace_back(distinct_vars(n), std::vector<Atom>{{r, iota_vars(n)}}, Atom{s, iota_vars(n)});
            }
        }
    }
    if (sig.is_complete_heyting()) {
        for (auto n : sig.arities()) {
            out.emplace_back(distinct_vars(n), std::vector<Atom>{}, Atom{sig.bottom(n), iota_vars(n)});
            const auto& group = sig.symbols_of_arity(n);
            for (std::size_t i = 0; i < group.size(); ++i) {
                for (std::size_t j = i + 1; j < group.size(); ++j) {
                    auto a = group[i];
                    auto b = group[j];
                    if (sig.leq(a, b) || sig.leq(b, a)) {
                        continue;
                    }
                    out.emplace_back(distinct_vars(n), std::vector<Atom>{{a, iota_vars(n)}, {b, iota_vars(n)}},
                                     Atom{sig.join(a, b), iota_vars(n)});
                }
            }
        }
    }
    return out;
}

bool is_base_axiom(const HornFormula& ax, const Signature& sig) {
    if (ax.has_equality()) {
        return false;
    }
    const auto& c = ax.conclusion_atom();
    const auto& ps = ax.premises();
    if (ps.empty()) {
        bool loop = std::all_of(c.vars.begin(), c.vars.end(), [&](VarId v) { return v == c.vars.front(); });
        if (loop) {
            return true;
        }
        // nullary join: ⇒ ⊥ v̄ with distinct variables
        return sig.is_complete_heyting() && all_distinct(c.vars) && c.symbol == sig.bottom(sig.arity(c.symbol));
    }
    if (!all_distinct(c.vars)) {
        return false;
    }
    for (const auto& p : ps) {
        if (p.vars != c.vars) {
            return false;
        }
    }
    if (ps.size() == 1) {
        return sig.leq(c.symbol, ps[0].symbol);
    }
    if (!sig.is_complete_heyting()) {
        return false;
    }
    SymbolId acc = ps[0].symbol;
    for (const auto& p : ps) {
        acc = sig.join(acc, p.symbol);
    }
    return acc == c.symbol;
}

Theory::Theory(SignaturePtr signature, std::vector<HornFormula> axioms, std::vector<AxiomSchema> schemas,
               bool include_base, std::string name)
    : signature_(std::move(signature)), axioms_(std::move(axioms)), schemas_(std::move(schemas)),
      include_base_(include_base), name_(std::move(name)) {
    if (!signature_) {
        throw Error("theory: null signature");
    }
    for (const auto& ax : axioms_) {
        for (const auto& p : ax.premises()) {
            if (p.symbol >= signature_->size() || p.vars.size() != signature_->arity(p.symbol)) {
                throw Error("theory: axiom uses a symbol outside the signature");
            }
        }
        if (!ax.has_equality()) {
            const auto& c = ax.conclusion_atom();
            if (c.symbol >= signature_->size() || c.vars.size() != signature_->arity(c.symbol)) {
                throw Error("theory: axiom uses a symbol outside the signature");
            }
        }
    }
    if (!schemas_.empty() && !signature_->is_complete_heyting()) {
        throw Error("theory: axiom schemas require a complete Heyting signature");
    }
    for (std::size_t i = 0; i < schemas_.size(); ++i) {
        auto inst = expand_instances(schemas_[i], *signature_, i);
        instances_.insert(instances_.end(), std::make_move_iterator(inst.begin()), std::make_move_iterator(inst.end()));
    }
    if (include_base_) {
        all_ = base_axioms(*signature_);
    }
    all_.insert(all_.end(), axioms_.begin(), axioms_.end());
    for (const auto& inst : instances_) {
        all_.push_back(inst.formula);
    }
    for (std::size_t i = 0; i < all_.size(); ++i) {
        if (!is_base_axiom(all_[i], *signature_)) {
            nonbase_.push_back(i);
        }
    }
}

bool Theory::has_equality_axiom() const {
    return std::any_of(all_.begin(), all_.end(), [](const HornFormula& f) { return f.has_equality(); });
}

Theory base_theory(const SignaturePtr& sig) { return Theory(sig, {}, {}, true, "T_Pi"); }

namespace theories {

namespace {
SignaturePtr one_binary(const std::string& name) { return make_signature(Signature::discrete({{name, 2}})); }
} // namespace

Theory preord() {
    auto sig = one_binary("le");
    std::vector<HornFormula> ax{HornFormula::parse(*sig, "=> le x x"),
                                HornFormula::parse(*sig, "le x y, le y z => le x z")};
    return Theory(sig, std::move(ax), {}, false, "preord");
}

Theory pos() {
    auto sig = one_binary("le");
    std::vector<HornFormula> ax{HornFormula::parse(*sig, "=> le x x"),
                                HornFormula::parse(*sig, "le x y, le y z => le x z"),
                                HornFormula::parse(*sig, "le x y, le y x => = x y")};
    return Theory(sig, std::move(ax), {}, false, "pos");
}

Theory refl_sym() {
    auto sig = one_binary("R");
    std::vector<HornFormula> ax{HornFormula::parse(*sig, "=> R x x"), HornFormula::parse(*sig, "R x y => R y x")};
    return Theory(sig, std::move(ax), {}, false, "refl-sym");
}

Theory reflexive_graph() {
    auto sig = one_binary("R");
    return Theory(sig, {HornFormula::parse(*sig, "=> R x x")}, {}, false, "refl-graph");
}

Theory empty_binary() { return Theory(one_binary("R"), {}, {}, false, "binary-graph"); }

} // namespace theories
} // namespace relhorn
