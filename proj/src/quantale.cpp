#include "relhorn/quantale.hpp"

#include <algorithm>

#include "relhorn/error.hpp"

namespace relhorn {

Quantale::Quantale(std::vector<std::string> elements, const std::vector<std::pair<std::string, std::string>>& leq_pairs,
                   const std::vector<std::vector<std::string>>& tensor_table, std::string unit)
    : names_(std::move(elements)) {
    const auto n = names_.size();
    if (n == 0) {
        throw Error("quantale: empty carrier");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (names_[i] == names_[j]) {
                throw Error("quantale: duplicate element '" + names_[i] + "'");
            }
        }
    }
    leq_.assign(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : leq_pairs) {
        leq_[index_of(a)][index_of(b)] = true;
    }
    if (tensor_table.size() != n) {
        throw Error("quantale: tensor table has wrong row count");
    }
    tensor_.assign(n, std::vector<Value>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        if (tensor_table[i].size() != n) {
            throw Error("quantale: tensor table row " + names_[i] + " has wrong length");
        }
        for (std::size_t j = 0; j < n; ++j) {
            tensor_[i][j] = index_of(tensor_table[i][j]);
        }
    }
    unit_ = index_of(unit);
    close_order();
    compute_lattice();
}

Quantale::Quantale(std::vector<std::string> elements, std::vector<std::vector<bool>> leq,
                   std::vector<std::vector<Value>> tensor, Value unit)
    : names_(std::move(elements)), leq_(std::move(leq)), tensor_(std::move(tensor)), unit_(unit) {
    const auto n = names_.size();
    if (n == 0 || leq_.size() != n || tensor_.size() != n || unit_ >= n) {
        throw Error("quantale: inconsistent table sizes");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (leq_[i].size() != n || tensor_[i].size() != n) {
            throw Error("quantale: inconsistent table sizes");
        }
        for (auto c : tensor_[i]) {
            if (c >= n) {
                throw Error("quantale: tensor value out of range");
            }
        }
    }
    close_order();
    compute_lattice();
}

std::optional<Quantale::Value> Quantale::find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        return std::nullopt;
    }
    return static_cast<Value>(it - names_.begin());
}

Quantale::Value Quantale::index_of(const std::string& name) const {
    if (auto v = find(name)) {
        return *v;
    }
    throw Error("quantale: unknown element '" + name + "'");
}

void Quantale::close_order() {
    const auto n = names_.size();
    for (std::size_t i = 0; i < n; ++i) {
        leq_[i][i] = true;
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
}

void Quantale::compute_lattice() {
    const auto n = static_cast<Value>(names_.size());
    lattice_ = true;
    for (Value i = 0; i < n && lattice_; ++i) {
        for (Value j = 0; j < n; ++j) {
            if (i != j && leq_[i][j] && leq_[j][i]) {
                lattice_ = false;
                break;
            }
        }
    }
    if (!lattice_) {
        return;
    }
    join_.assign(n, std::vector<Value>(n, 0));
    meet_.assign(n, std::vector<Value>(n, 0));
    for (Value a = 0; a < n && lattice_; ++a) {
        for (Value b = 0; b < n; ++b) {
            std::optional<Value> lub;
            std::optional<Value> glb;
            for (Value c = 0; c < n; ++c) {
                if (leq_[a][c] && leq_[b][c] && (!lub || leq_[c][*lub])) {
                    lub = c;
                }
                if (leq_[c][a] && leq_[c][b] && (!glb || leq_[*glb][c])) {
                    glb = c;
                }
            }
            // a candidate found by the scan must still be below every other upper bound
            for (Value c = 0; c < n && lub; ++c) {
                if (leq_[a][c] && leq_[b][c] && !leq_[*lub][c]) {
                    lub.reset();
                }
            }
            for (Value c = 0; c < n && glb; ++c) {
                if (leq_[c][a] && leq_[c][b] && !leq_[c][*glb]) {
                    glb.reset();
                }
            }
            if (!lub || !glb) {
                lattice_ = false;
                break;
            }
            join_[a][b] = *lub;
            meet_[a][b] = *glb;
        }
    }
    if (!lattice_) {
        join_.clear();
        meet_.clear();
        return;
    }
    bottom_ = 0;
    top_ = 0;
    for (Value a = 1; a < n; ++a) {
        bottom_ = meet_[bottom_][a];
        top_ = join_[top_][a];
    }
}

Quantale::Value Quantale::join_all(const std::vector<Value>& vs) const {
    Value acc = bottom_;
    for (auto v : vs) {
        acc = join_[acc][v];
    }
    return acc;
}

Quantale Quantale::with_tensor_cell(Value a, Value b, Value c) const {
    auto copy = *this;
    copy.tensor_.at(a).at(b) = c;
    return copy;
}

QuantaleLawReport check_quantale_laws(const Quantale& v) {
    QuantaleLawReport r;
    const auto n = static_cast<Quantale::Value>(v.size());
    auto fail = [&r](bool QuantaleLawReport::*flag, const std::string& law, std::vector<std::string> witness) {
        r.*flag = false;
        if (r.passed) {
            r.passed = false;
            r.failed_law = law;
            r.witness = std::move(witness);
        }
    };
    for (Quantale::Value a = 0; a < n && r.partial_order; ++a) {
        for (Quantale::Value b = 0; b < n; ++b) {
            if (a != b && v.leq(a, b) && v.leq(b, a)) {
                fail(&QuantaleLawReport::partial_order, "antisymmetry", {v.name(a), v.name(b)});
                break;
            }
        }
    }
    if (!v.is_lattice()) {
        fail(&QuantaleLawReport::lattice, "lattice", {});
        return r;
    }
    for (Quantale::Value a = 0; a < n; ++a) {
        for (Quantale::Value b = 0; b < n; ++b) {
            if (r.commutative && v.tensor(a, b) != v.tensor(b, a)) {
                fail(&QuantaleLawReport::commutative, "commutativity", {v.name(a), v.name(b)});
            }
        }
        if (r.unital && (v.tensor(a, v.unit()) != a || v.tensor(v.unit(), a) != a)) {
            fail(&QuantaleLawReport::unital, "unit", {v.name(a)});
        }
        // empty join: a ⊗ ⊥ = ⊥
        if (r.join_preserving && (v.tensor(a, v.bottom()) != v.bottom() || v.tensor(v.bottom(), a) != v.bottom())) {
            fail(&QuantaleLawReport::join_preserving, "join-preservation", {v.name(a), v.name(v.bottom())});
        }
    }
    for (Quantale::Value a = 0; a < n; ++a) {
        for (Quantale::Value b = 0; b < n; ++b) {
            for (Quantale::Value c = 0; c < n; ++c) {
                if (r.associative && v.tensor(v.tensor(a, b), c) != v.tensor(a, v.tensor(b, c))) {
                    fail(&QuantaleLawReport::associative, "associativity", {v.name(a), v.name(b), v.name(c)});
                }
                const auto bc = v.join(b, c);
                if (r.join_preserving && (v.tensor(a, bc) != v.join(v.tensor(a, b), v.tensor(a, c)) ||
                                          v.tensor(bc, a) != v.join(v.tensor(b, a), v.tensor(c, a)))) {
                    fail(&QuantaleLawReport::join_preserving, "join-preservation", {v.name(a), v.name(b), v.name(c)});
                }
            }
        }
    }
    // Every subset's least upper bound equals the fold of binary joins from ⊥,
    // so nullary + binary join axioms generate closure under all joins.
    if (n <= 16) {
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<Quantale::Value> subset;
            for (Quantale::Value a = 0; a < n; ++a) {
                if (mask & (1u << a)) {
                    subset.push_back(a);
                }
            }
            const auto folded = v.join_all(subset);
            bool least = true;
            for (Quantale::Value u = 0; u < n && least; ++u) {
                bool upper = std::all_of(subset.begin(), subset.end(), [&](auto s) { return v.leq(s, u); });
                if (upper && !v.leq(folded, u)) {
                    least = false;
                }
            }
            bool upper = std::all_of(subset.begin(), subset.end(), [&](auto s) { return v.leq(s, folded); });
            if (!least || !upper) {
                std::vector<std::string> w;
                for (auto s : subset) {
                    w.push_back(v.name(s));
                }
                fail(&QuantaleLawReport::join_closure_obligation, "join-closure", w);
                break;
            }
        }
    }
    return r;
}

bool is_heyting(const Quantale& v) {
    if (!v.is_lattice()) {
        return false;
    }
    const auto n = static_cast<Quantale::Value>(v.size());
    for (Quantale::Value a = 0; a < n; ++a) {
        for (Quantale::Value b = 0; b < n; ++b) {
            for (Quantale::Value c = 0; c < n; ++c) {
                if (v.meet(a, v.join(b, c)) != v.join(v.meet(a, b), v.meet(a, c))) {
                    return false;
                }
            }
        }
    }
    if (n <= 16) {
        for (Quantale::Value a = 0; a < n; ++a) {
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                std::vector<Quantale::Value> subset;
                std::vector<Quantale::Value> met;
                for (Quantale::Value s = 0; s < n; ++s) {
                    if (mask & (1u << s)) {
                        subset.push_back(s);
                        met.push_back(v.meet(a, s));
                    }
                }
                if (v.meet(a, v.join_all(subset)) != v.join_all(met)) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool is_total_order(const Quantale& v) {
    const auto n = static_cast<Quantale::Value>(v.size());
    for (Quantale::Value a = 0; a < n; ++a) {
        for (Quantale::Value b = 0; b < n; ++b) {
            if (!v.leq(a, b) && !v.leq(b, a)) {
                return false;
            }
        }
    }
    return true;
}

namespace builtin {

Quantale boolean() {
    return Quantale({"bot", "top"}, {{"bot", "top"}}, {{"bot", "bot"}, {"bot", "top"}}, "top");
}

Quantale chain_meet(std::size_t length) {
    if (length == 0) {
        throw Error("chain quantale needs at least one element");
    }
    std::vector<std::string> names;
    std::vector<std::vector<bool>> leq(length, std::vector<bool>(length, false));
    std::vector<std::vector<Quantale::Value>> tensor(length, std::vector<Quantale::Value>(length, 0));
    for (std::size_t i = 0; i < length; ++i) {
        names.push_back(std::to_string(i));
        for (std::size_t j = 0; j < length; ++j) {
            leq[i][j] = i <= j;
            tensor[i][j] = static_cast<Quantale::Value>(std::min(i, j));
        }
    }
    return Quantale(std::move(names), std::move(leq), std::move(tensor), static_cast<Quantale::Value>(length - 1));
}

Quantale chain3_lukasiewicz() {
    std::vector<std::vector<bool>> leq(3, std::vector<bool>(3, false));
    std::vector<std::vector<Quantale::Value>> tensor(3, std::vector<Quantale::Value>(3, 0));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            leq[i][j] = i <= j;
            tensor[i][j] = static_cast<Quantale::Value>(std::max(0, i + j - 2));
        }
    }
    return Quantale({"0", "1", "2"}, std::move(leq), std::move(tensor), 2);
}

std::optional<Quantale> by_name(const std::string& name) {
    if (name == "boolean") {
        return boolean();
    }
    if (name == "chain3-meet") {
        return chain_meet(3);
    }
    if (name == "chain3-lukasiewicz") {
        return chain3_lukasiewicz();
    }
    return std::nullopt;
}

} // namespace builtin
} // namespace relhorn
