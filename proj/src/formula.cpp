#include "relhorn/formula.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "relhorn/error.hpp"

namespace relhorn {

namespace {

VarId intern(std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) {
        return static_cast<VarId>(it - names.begin());
    }
    names.push_back(name);
    return static_cast<VarId>(names.size() - 1);
}

Atom make_atom(const Signature& sig, std::vector<std::string>& names, const std::vector<std::string>& parts) {
    if (parts.empty()) {
        throw Error("formula: empty atom");
    }
    auto symbol = sig.index_of(parts[0]);
    if (parts.size() - 1 != sig.arity(symbol)) {
        throw Error("formula: atom '" + parts[0] + "' expects " + std::to_string(sig.arity(symbol)) + " variables");
    }
    Atom a{symbol, {}};
    for (std::size_t i = 1; i < parts.size(); ++i) {
        a.vars.push_back(intern(names, parts[i]));
    }
    return a;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) {
        out.push_back(tok);
    }
    return out;
}

} // namespace

HornFormula::HornFormula(std::vector<std::string> var_names, std::vector<Atom> premises, Conclusion conclusion)
    : var_names_(std::move(var_names)), premises_(std::move(premises)), conclusion_(std::move(conclusion)) {
    std::sort(premises_.begin(), premises_.end());
    premises_.erase(std::unique(premises_.begin(), premises_.end()), premises_.end());
    auto check = [this](VarId v) {
        if (v >= var_names_.size()) {
            throw Error("formula: variable index out of range");
        }
    };
    std::vector<bool> used(var_names_.size(), false);
    for (const auto& a : premises_) {
        for (auto v : a.vars) {
            check(v);
            used[v] = true;
        }
    }
    if (const auto* eq = std::get_if<Equality>(&conclusion_)) {
        check(eq->left);
        check(eq->right);
        used[eq->left] = used[eq->right] = true;
        auto pv = premise_vars();
        std::vector<VarId> expected{eq->left, eq->right};
        std::sort(expected.begin(), expected.end());
        expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
        if (pv != expected) {
            throw Error("formula: an equality axiom needs Var(premises) = {" + var_names_[eq->left] + ", " +
                        var_names_[eq->right] + "}");
        }
    } else {
        for (auto v : std::get<Atom>(conclusion_).vars) {
            check(v);
            used[v] = true;
        }
    }
    if (std::find(used.begin(), used.end(), false) != used.end()) {
        throw Error("formula: variable table lists a variable that does not occur");
    }
}

HornFormula HornFormula::compacted(const std::vector<std::string>& var_names, std::vector<Atom> premises,
                                   Conclusion conclusion) {
    std::vector<bool> used(var_names.size(), false);
    for (const auto& a : premises) {
        for (auto v : a.vars) {
            used.at(v) = true;
        }
    }
    if (const auto* eq = std::get_if<Equality>(&conclusion)) {
        used.at(eq->left) = used.at(eq->right) = true;
    } else {
        for (auto v : std::get<Atom>(conclusion).vars) {
            used.at(v) = true;
        }
    }
    std::vector<VarId> remap(var_names.size(), 0);
    std::vector<std::string> names;
    for (std::size_t v = 0; v < var_names.size(); ++v) {
        if (used[v]) {
            remap[v] = static_cast<VarId>(names.size());
            names.push_back(var_names[v]);
        }
    }
    for (auto& a : premises) {
        for (auto& v : a.vars) {
            v = remap[v];
        }
    }
    if (auto* eq = std::get_if<Equality>(&conclusion)) {
        eq->left = remap[eq->left];
        eq->right = remap[eq->right];
    } else {
        for (auto& v : std::get<Atom>(conclusion).vars) {
            v = remap[v];
        }
    }
    return {std::move(names), std::move(premises), std::move(conclusion)};
}

HornFormula HornFormula::make(const Signature& sig, const std::vector<std::vector<std::string>>& premises,
                              const std::vector<std::string>& conclusion) {
    std::vector<std::string> names;
    std::vector<Atom> atoms;
    for (const auto& p : premises) {
        atoms.push_back(make_atom(sig, names, p));
    }
    if (conclusion.empty()) {
        throw Error("formula: missing conclusion");
    }
    if (conclusion[0] == "=") {
        if (conclusion.size() != 3) {
            throw Error("formula: equality conclusion needs two variables");
        }
        Equality eq{intern(names, conclusion[1]), intern(names, conclusion[2])};
        return {std::move(names), std::move(atoms), eq};
    }
    auto c = make_atom(sig, names, conclusion);
    return {std::move(names), std::move(atoms), c};
}

HornFormula HornFormula::parse(const Signature& sig, const std::string& text) {
    auto arrow = text.find("=>");
    if (arrow == std::string::npos) {
        throw Error("formula: missing '=>' in '" + text + "'");
    }
    std::vector<std::vector<std::string>> premises;
    std::string lhs = text.substr(0, arrow);
    std::size_t start = 0;
    while (start <= lhs.size()) {
        auto comma = lhs.find(',', start);
        auto piece = lhs.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        auto toks = split_ws(piece);
        if (!toks.empty()) {
            premises.push_back(std::move(toks));
        } else if (comma != std::string::npos) {
            throw Error("formula: empty premise in '" + text + "'");
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return make(sig, premises, split_ws(text.substr(arrow + 2)));
}

std::vector<VarId> HornFormula::premise_vars() const { return var_set(premises_); }

std::optional<VarId> HornFormula::find_var(const std::string& name) const {
    auto it = std::find(var_names_.begin(), var_names_.end(), name);
    if (it == var_names_.end()) {
        return std::nullopt;
    }
    return static_cast<VarId>(it - var_names_.begin());
}

std::string HornFormula::to_string(const Signature& sig) const {
    std::string out;
    auto atom_text = [&](const Atom& a) {
        std::string s = sig.symbol(a.symbol).name;
        for (auto v : a.vars) {
            s += " " + var_names_[v];
        }
        return s;
    };
    for (std::size_t i = 0; i < premises_.size(); ++i) {
        out += (i ? ", " : "") + atom_text(premises_[i]);
    }
    out += premises_.empty() ? "=> " : " => ";
    if (const auto* eq = std::get_if<Equality>(&conclusion_)) {
        out += "= " + var_names_[eq->left] + " " + var_names_[eq->right];
    } else {
        out += atom_text(std::get<Atom>(conclusion_));
    }
    return out;
}

std::vector<VarId> var_set(const std::vector<Atom>& atoms) {
    std::set<VarId> vs;
    for (const auto& a : atoms) {
        vs.insert(a.vars.begin(), a.vars.end());
    }
    return {vs.begin(), vs.end()};
}

std::string fresh_var(const std::vector<std::string>& taken, const std::string& base) {
    auto free = [&](const std::string& s) { return std::find(taken.begin(), taken.end(), s) == taken.end(); };
    if (free(base)) {
        return base;
    }
    for (std::size_t i = 1;; ++i) {
        auto candidate = base + std::to_string(i);
        if (free(candidate)) {
            return candidate;
        }
    }
}

} // namespace relhorn
