#include "relhorn/json_io.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "relhorn/error.hpp"
#include "relhorn/semantics.hpp"
#include "relhorn/vgraph.hpp"

namespace relhorn::json {

namespace {

constexpr SymbolId kNoSymbol = std::numeric_limits<SymbolId>::max();

const Json& field(const Json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) {
        throw ParseError(where, "expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(where, "missing field '" + key + "'");
    }
    return *it;
}

std::string str(const Json& j, const std::string& where) {
    if (!j.is_string()) {
        throw ParseError(where, "expected a string");
    }
    return j.get<std::string>();
}

const Json& arr(const Json& j, const std::string& where) {
    if (!j.is_array()) {
        throw ParseError(where, "expected an array");
    }
    return j;
}

std::size_t uint_of(const Json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        throw ParseError(where, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

void check_format(const Json& j, const std::string& where) {
    if (j.is_object() && j.contains("format") && j["format"] != kFormat) {
        throw ParseError(where + "/format", "unsupported format version");
    }
}

// Wraps library errors raised while building an object from valid JSON.
template <typename Fn>
auto at(const std::string& where, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(where, e.what());
    }
}

Json with_header(const char* kind) {
    Json j;
    j["format"] = kFormat;
    j["kind"] = kind;
    return j;
}

} // namespace

Json parse_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // byte offset → line:column
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string where = (source.empty() ? "" : source + ":") + std::to_string(line) + ":" + std::to_string(col);
        throw ParseError(where, "malformed JSON");
    }
}

Json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path, "cannot open file");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Quantale parse_quantale(const Json& j) {
    const std::string w = "/quantale";
    check_format(j, w);
    if (j.is_object() && j.contains("builtin")) {
        auto name = str(j["builtin"], w + "/builtin");
        if (auto q = builtin::by_name(name)) {
            return *q;
        }
        std::smatch m;
        static const std::regex chain(R"(chain(\d+)-meet)");
        if (std::regex_match(name, m, chain)) {
            auto n = std::stoul(m[1]);
            if (n >= 1 && n <= 64) {
                return builtin::chain_meet(n);
            }
        }
        throw ParseError(w + "/builtin", "unknown builtin quantale '" + name + "'");
    }
    std::vector<std::string> elements;
    const auto& je = arr(field(j, "elements", w), w + "/elements");
    for (std::size_t i = 0; i < je.size(); ++i) {
        auto name = str(je[i], w + "/elements/" + std::to_string(i));
        if (name.find(',') != std::string::npos) {
            throw ParseError(w + "/elements/" + std::to_string(i), "element names may not contain ','");
        }
        elements.push_back(name);
    }
    std::vector<std::pair<std::string, std::string>> leq;
    const auto& jl = arr(field(j, "leq", w), w + "/leq");
    for (std::size_t i = 0; i < jl.size(); ++i) {
        const auto wi = w + "/leq/" + std::to_string(i);
        if (!jl[i].is_array() || jl[i].size() != 2) {
            throw ParseError(wi, "expected a pair [a, b]");
        }
        leq.emplace_back(str(jl[i][0], wi), str(jl[i][1], wi));
    }
    const auto& jt = field(j, "tensor", w);
    if (!jt.is_object()) {
        throw ParseError(w + "/tensor", "expected an object keyed by \"a,b\"");
    }
    std::vector<std::vector<std::string>> table(elements.size(), std::vector<std::string>(elements.size()));
    auto index = [&](const std::string& name, const std::string& where) {
        auto it = std::find(elements.begin(), elements.end(), name);
        if (it == elements.end()) {
            throw ParseError(where, "unknown element '" + name + "'");
        }
        return static_cast<std::size_t>(it - elements.begin());
    };
    for (auto it = jt.begin(); it != jt.end(); ++it) {
        const auto wi = w + "/tensor/" + it.key();
        auto comma = it.key().find(',');
        if (comma == std::string::npos) {
            throw ParseError(wi, "key must be \"a,b\"");
        }
        auto a = index(it.key().substr(0, comma), wi);
        auto b = index(it.key().substr(comma + 1), wi);
        table[a][b] = str(it.value(), wi);
    }
    for (std::size_t a = 0; a < elements.size(); ++a) {
        for (std::size_t b = 0; b < elements.size(); ++b) {
            if (table[a][b].empty()) {
                throw ParseError(w + "/tensor", "missing cell \"" + elements[a] + "," + elements[b] + "\"");
            }
        }
    }
    auto unit = str(field(j, "unit", w), w + "/unit");
    return at(w, [&] { return Quantale(elements, leq, table, unit); });
}

Json to_json(const Quantale& v) {
    Json j = with_header("quantale");
    j["elements"] = v.names();
    Json leq = Json::array();
    for (Quantale::Value a = 0; a < v.size(); ++a) {
        for (Quantale::Value b = 0; b < v.size(); ++b) {
            if (a != b && v.leq(a, b)) {
                leq.push_back({v.name(a), v.name(b)});
            }
        }
    }
    j["leq"] = leq;
    Json t = Json::object();
    for (Quantale::Value a = 0; a < v.size(); ++a) {
        for (Quantale::Value b = 0; b < v.size(); ++b) {
            t[v.name(a) + "," + v.name(b)] = v.name(v.tensor(a, b));
        }
    }
    j["tensor"] = t;
    j["unit"] = v.name(v.unit());
    return j;
}

SignaturePtr parse_signature(const Json& j) {
    const std::string w = "/signature";
    check_format(j, w);
    auto order = j.is_object() && j.contains("order") ? str(j["order"], w + "/order") : std::string("discrete");
    if (order == "quantale") {
        auto v = parse_quantale(field(j, "quantale", w));
        return at(w + "/quantale", [&] { return signature_of(v); });
    }
    std::vector<RelationSymbol> symbols;
    const auto& js = arr(field(j, "symbols", w), w + "/symbols");
    for (std::size_t i = 0; i < js.size(); ++i) {
        const auto wi = w + "/symbols/" + std::to_string(i);
        symbols.push_back({str(field(js[i], "name", wi), wi + "/name"),
                           static_cast<std::uint32_t>(uint_of(field(js[i], "arity", wi), wi + "/arity"))});
    }
    if (order == "discrete") {
        return at(w, [&] { return make_signature(Signature::discrete(symbols)); });
    }
    if (order == "explicit") {
        std::vector<std::pair<std::string, std::string>> pairs;
        if (j.contains("leq")) {
            const auto& jl = arr(j["leq"], w + "/leq");
            for (std::size_t i = 0; i < jl.size(); ++i) {
                const auto wi = w + "/leq/" + std::to_string(i);
                if (!jl[i].is_array() || jl[i].size() != 2) {
                    throw ParseError(wi, "expected a pair [lower, upper]");
                }
                pairs.emplace_back(str(jl[i][0], wi), str(jl[i][1], wi));
            }
        }
        return at(w, [&] { return make_signature(Signature::explicit_order(symbols, pairs)); });
    }
    throw ParseError(w + "/order", "unknown order '" + order + "'");
}

Json to_json(const Signature& sig) {
    Json j;
    switch (sig.kind()) {
    case OrderKind::QuantaleInduced:
        j["order"] = "quantale";
        j["quantale"] = to_json(*sig.quantale());
        j["quantale"].erase("format");
        j["quantale"].erase("kind");
        return j;
    case OrderKind::Discrete:
        j["order"] = "discrete";
        break;
    case OrderKind::Explicit:
        j["order"] = "explicit";
        break;
    }
    Json syms = Json::array();
    for (const auto& s : sig.symbols()) {
        syms.push_back({{"name", s.name}, {"arity", s.arity}});
    }
    j["symbols"] = syms;
    if (sig.kind() == OrderKind::Explicit) {
        Json leq = Json::array();
        for (auto [a, b] : sig.declared_pairs()) {
            leq.push_back({sig.symbol(a).name, sig.symbol(b).name});
        }
        j["leq"] = leq;
    }
    return j;
}

Structure parse_structure(const Json& j, const SignaturePtr& fallback) {
    const std::string w = "/structure";
    check_format(j, w);
    SignaturePtr sig = j.is_object() && j.contains("signature") ? parse_signature(j["signature"]) : fallback;
    if (!sig) {
        throw ParseError(w, "missing field 'signature'");
    }
    std::vector<std::string> carrier;
    const auto& jc = arr(field(j, "carrier", w), w + "/carrier");
    for (std::size_t i = 0; i < jc.size(); ++i) {
        carrier.push_back(str(jc[i], w + "/carrier/" + std::to_string(i)));
    }
    auto index = [&](const std::string& name, const std::string& where) {
        auto it = std::find(carrier.begin(), carrier.end(), name);
        if (it == carrier.end()) {
            throw ParseError(where, "unknown element '" + name + "'");
        }
        return static_cast<ElementId>(it - carrier.begin());
    };
    std::vector<Edge> edges;
    if (j.contains("edges")) {
        const auto& je = arr(j["edges"], w + "/edges");
        for (std::size_t i = 0; i < je.size(); ++i) {
            const auto wi = w + "/edges/" + std::to_string(i);
            const auto& e = arr(je[i], wi);
            if (e.empty()) {
                throw ParseError(wi, "edge needs a symbol");
            }
            auto name = str(e[0], wi + "/0");
            auto s = sig->find(name);
            if (!s) {
                throw ParseError(wi + "/0", "unknown symbol '" + name + "'");
            }
            if (e.size() != sig->arity(*s) + 1) {
                throw ParseError(wi, "symbol '" + name + "' has arity " + std::to_string(sig->arity(*s)));
            }
            Edge edge{*s, {}};
            for (std::size_t k = 1; k < e.size(); ++k) {
                edge.args.push_back(index(str(e[k], wi + "/" + std::to_string(k)), wi + "/" + std::to_string(k)));
            }
            edges.push_back(std::move(edge));
        }
    }
    return at(w, [&] { return Structure(sig, carrier, edges); });
}

Json to_json(const Structure& x) {
    Json j = with_header("structure");
    j["signature"] = to_json(x.signature());
    j["carrier"] = x.carrier();
    Json edges = Json::array();
    for (const auto& e : x.edges()) {
        Json row = Json::array({x.signature().symbol(e.symbol).name});
        for (auto a : e.args) {
            row.push_back(x.name(a));
        }
        edges.push_back(row);
    }
    j["edges"] = edges;
    return j;
}

Morphism parse_morphism(const Json& j, const SignaturePtr& fallback) {
    const std::string w = "/morphism";
    check_format(j, w);
    auto source = parse_structure(field(j, "source", w), fallback);
    auto target = parse_structure(field(j, "target", w), fallback);
    const auto& jm = field(j, "map", w);
    if (!jm.is_object()) {
        throw ParseError(w + "/map", "expected an object from source to target names");
    }
    std::vector<ElementId> map(source.size(), kUnbound);
    for (auto it = jm.begin(); it != jm.end(); ++it) {
        const auto wi = w + "/map/" + it.key();
        auto a = source.find(it.key());
        if (!a) {
            throw ParseError(wi, "unknown source element");
        }
        auto b = target.find(str(it.value(), wi));
        if (!b) {
            throw ParseError(wi, "unknown target element '" + it.value().get<std::string>() + "'");
        }
        map[*a] = *b;
    }
    for (ElementId a = 0; a < source.size(); ++a) {
        if (map[a] == kUnbound) {
            throw ParseError(w + "/map", "no image for '" + source.name(a) + "'");
        }
    }
    return {source, target, map};
}

Json to_json(const Morphism& f) {
    Json j = with_header("morphism");
    j["source"] = to_json(f.source);
    j["target"] = to_json(f.target);
    Json m = Json::object();
    for (ElementId a = 0; a < f.source.size(); ++a) {
        m[f.source.name(a)] = f.target.name(f.map[a]);
    }
    j["map"] = m;
    return j;
}

HornFormula parse_formula(const Json& j, const Signature& sig) {
    const std::string w = "/formula";
    if (j.is_string()) {
        return at(w, [&] { return HornFormula::parse(sig, j.get<std::string>()); });
    }
    std::vector<std::vector<std::string>> premises;
    if (j.contains("premises")) {
        const auto& jp = arr(j["premises"], w + "/premises");
        for (std::size_t i = 0; i < jp.size(); ++i) {
            const auto wi = w + "/premises/" + std::to_string(i);
            std::vector<std::string> atom;
            for (const auto& s : arr(jp[i], wi)) {
                atom.push_back(str(s, wi));
            }
            premises.push_back(std::move(atom));
        }
    }
    std::vector<std::string> conclusion;
    for (const auto& s : arr(field(j, "conclusion", w), w + "/conclusion")) {
        conclusion.push_back(str(s, w + "/conclusion"));
    }
    return at(w, [&] { return HornFormula::make(sig, premises, conclusion); });
}

Json to_json(const HornFormula& phi, const Signature& sig) { return phi.to_string(sig); }

AxiomSchema parse_schema(const Json& j, const Signature& sig) {
    const std::string w = "/schema";
    const Json& body = j.is_object() && j.contains("schema") ? j["schema"] : j;
    if (body.is_string()) {
        auto name = body.get<std::string>();
        if (name == "generalized_transitivity") {
            return schemas::generalized_transitivity();
        }
        if (name == "symmetry") {
            return schemas::symmetry();
        }
        throw ParseError(w, "unknown schema '" + name + "'");
    }
    AxiomSchema s;
    s.name = body.contains("name") ? str(body["name"], w + "/name") : std::string("custom");
    s.arity = static_cast<std::uint32_t>(uint_of(field(body, "arity", w), w + "/arity"));
    for (const auto& v : arr(field(body, "vars", w), w + "/vars")) {
        s.var_names.push_back(str(v, w + "/vars"));
    }
    auto var = [&](const Json& v, const std::string& where) {
        auto name = str(v, where);
        auto it = std::find(s.var_names.begin(), s.var_names.end(), name);
        if (it == s.var_names.end()) {
            throw ParseError(where, "unknown variable '" + name + "'");
        }
        return static_cast<VarId>(it - s.var_names.begin());
    };
    const auto& jp = arr(field(body, "premises", w), w + "/premises");
    for (std::size_t i = 0; i < jp.size(); ++i) {
        std::vector<VarId> p;
        for (const auto& v : arr(jp[i], w + "/premises/" + std::to_string(i))) {
            p.push_back(var(v, w + "/premises/" + std::to_string(i)));
        }
        s.premises.push_back(std::move(p));
    }
    for (const auto& v : arr(field(body, "conclusion", w), w + "/conclusion")) {
        s.conclusion.push_back(var(v, w + "/conclusion"));
    }
    auto symbol = [&](const Json& v, const std::string& where) {
        auto name = str(v, where);
        auto id = sig.find(name);
        if (!id) {
            throw ParseError(where, "unknown symbol '" + name + "'");
        }
        return *id;
    };
    if (body.contains("table")) {
        const auto& group = sig.symbols_of_arity(s.arity);
        const auto& jt = body["table"];
        if (!jt.is_object()) {
            throw ParseError(w + "/table", "expected an object keyed by comma-separated labels");
        }
        std::size_t cells = 1;
        for (std::size_t i = 0; i < s.premises.size(); ++i) {
            cells *= group.size();
        }
        std::vector<SymbolId> values(cells, kNoSymbol);
        for (auto it = jt.begin(); it != jt.end(); ++it) {
            const auto wi = w + "/table/" + it.key();
            std::size_t index = 0;
            std::size_t count = 0;
            std::stringstream ss(it.key());
            std::string label;
            while (std::getline(ss, label, ',')) {
                auto id = symbol(Json(label), wi);
                auto pos = std::find(group.begin(), group.end(), id);
                if (pos == group.end()) {
                    throw ParseError(wi, "label '" + label + "' has the wrong arity");
                }
                index = index * group.size() + static_cast<std::size_t>(pos - group.begin());
                ++count;
            }
            if (count != s.premises.size()) {
                throw ParseError(wi, "expected one label per premise");
            }
            values[index] = symbol(it.value(), wi);
        }
        if (std::find(values.begin(), values.end(), kNoSymbol) != values.end()) {
            throw ParseError(w + "/table", "table is not total");
        }
        s.sigma = AxiomSchema::Table{values};
    } else if (body.contains("projection")) {
        s.sigma = AxiomSchema::Projection{uint_of(body["projection"], w + "/projection")};
    } else if (body.contains("constant")) {
        s.sigma = AxiomSchema::Constant{symbol(body["constant"], w + "/constant")};
    } else if (body.contains("tensor")) {
        s.sigma = AxiomSchema::TensorComposite{};
    } else {
        throw ParseError(w, "schema needs one of 'table', 'projection', 'constant', 'tensor'");
    }
    s.monotone_declared = body.contains("monotone") && body["monotone"].is_boolean() && body["monotone"].get<bool>();
    if (s.monotone_declared && !at(w, [&] { return sigma_is_monotone(s, sig); })) {
        throw ParseError(w + "/monotone", "sigma is declared monotone but is not");
    }
    return s;
}

Json to_json(const AxiomSchema& s, const Signature& sig) {
    if (s == schemas::generalized_transitivity()) {
        return {{"schema", "generalized_transitivity"}};
    }
    if (s == schemas::symmetry()) {
        return {{"schema", "symmetry"}};
    }
    Json b;
    b["name"] = s.name;
    b["arity"] = s.arity;
    b["vars"] = s.var_names;
    Json ps = Json::array();
    for (const auto& p : s.premises) {
        Json row = Json::array();
        for (auto v : p) {
            row.push_back(s.var_names[v]);
        }
        ps.push_back(row);
    }
    b["premises"] = ps;
    Json c = Json::array();
    for (auto v : s.conclusion) {
        c.push_back(s.var_names[v]);
    }
    b["conclusion"] = c;
    std::visit(
        [&](const auto& rule) {
            using T = std::decay_t<decltype(rule)>;
            if constexpr (std::is_same_v<T, AxiomSchema::TensorComposite>) {
                b["tensor"] = true;
            } else if constexpr (std::is_same_v<T, AxiomSchema::Projection>) {
                b["projection"] = rule.premise;
            } else if constexpr (std::is_same_v<T, AxiomSchema::Constant>) {
                b["constant"] = sig.symbol(rule.symbol).name;
            } else {
                const auto& group = sig.symbols_of_arity(s.arity);
                Json t = Json::object();
                for_each_label_tuple(group, s.premises.size(), [&](const std::vector<SymbolId>& labels) {
                    std::string key;
                    for (auto l : labels) {
                        key += (key.empty() ? "" : ",") + sig.symbol(l).name;
                    }
                    t[key] = sig.symbol(apply_sigma(s, sig, labels)).name;
                });
                b["table"] = t;
            }
        },
        s.sigma);
    b["monotone"] = s.monotone_declared;
    return {{"schema", b}};
}

Theory parse_theory(const Json& j) {
    const std::string w = "/theory";
    check_format(j, w);
    if (j.is_object() && j.contains("generated")) {
        const auto& g = j["generated"];
        auto v = parse_quantale(field(g, "quantale", w + "/generated"));
        auto kind = str(field(g, "theory", w + "/generated"), w + "/generated/theory");
        return at(w + "/generated", [&] {
            if (kind == "vgph") {
                return theory_vgph(v);
            }
            if (kind == "vrgph") {
                return theory_vrgph(v);
            }
            if (kind == "vcat") {
                return theory_vcat(v);
            }
            if (kind == "pmet") {
                return theory_pmet(v);
            }
            if (kind == "met") {
                return theory_met(v);
            }
            throw ParseError(w + "/generated/theory", "unknown generator '" + kind + "'");
        });
    }
    auto sig = parse_signature(field(j, "signature", w));
    std::vector<HornFormula> axioms;
    if (j.contains("axioms")) {
        const auto& ja = arr(j["axioms"], w + "/axioms");
        for (std::size_t i = 0; i < ja.size(); ++i) {
            try {
                axioms.push_back(parse_formula(ja[i], *sig));
            } catch (const ParseError& e) {
                throw ParseError(w + "/axioms/" + std::to_string(i), e.what());
            }
        }
    }
    std::vector<AxiomSchema> schemas;
    if (j.contains("schemas")) {
        const auto& js = arr(j["schemas"], w + "/schemas");
        for (std::size_t i = 0; i < js.size(); ++i) {
            try {
                schemas.push_back(parse_schema(js[i], *sig));
            } catch (const ParseError& e) {
                throw ParseError(w + "/schemas/" + std::to_string(i), e.what());
            }
        }
    }
    bool include_base = j.contains("include_base") && j["include_base"].is_boolean() && j["include_base"].get<bool>();
    auto name = j.contains("name") ? str(j["name"], w + "/name") : std::string();
    return at(w, [&] { return Theory(sig, std::move(axioms), std::move(schemas), include_base, name); });
}

Json to_json(const Theory& t) {
    Json j = with_header("theory");
    j["name"] = t.name();
    j["signature"] = to_json(t.signature());
    j["include_base"] = t.includes_base();
    Json ax = Json::array();
    for (const auto& a : t.axioms()) {
        ax.push_back(to_json(a, t.signature()));
    }
    j["axioms"] = ax;
    Json sc = Json::array();
    for (const auto& s : t.schemas()) {
        sc.push_back(to_json(s, t.signature()));
    }
    j["schemas"] = sc;
    return j;
}

Json to_json(const VerifyReport& r) {
    Json j;
    j["passed"] = r.passed;
    j["test_objects"] = r.entries.size();
    Json counts = Json::array();
    for (const auto& e : r.entries) {
        Json c;
        c["q"] = e.q_index;
        c["size"] = e.q_size;
        c["lhs"] = e.lhs;
        c["rhs"] = e.rhs;
        c["ok"] = e.ok;
        counts.push_back(c);
    }
    j["counts"] = counts;
    if (r.witness_q) {
        j["witness"] = {{"q", *r.witness_q}, {"detail", r.witness}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

} // namespace relhorn::json
