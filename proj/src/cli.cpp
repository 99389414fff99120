#include "relhorn/cli.hpp"

#include <CLI11.hpp>

#include "relhorn/closure.hpp"
#include "relhorn/convexity.hpp"
#include "relhorn/error.hpp"
#include "relhorn/families.hpp"
#include "relhorn/json_io.hpp"
#include "relhorn/limits.hpp"
#include "relhorn/schema.hpp"
#include "relhorn/semantics.hpp"

namespace relhorn::cli {

namespace {

using json::Json;

struct Options {
    std::string theory;
    std::string structure;
    std::string base;
    std::string target;
    std::string morphism;
    std::string left;
    std::string right;
    std::string f;
    std::string g;
    std::string quantale;
    std::string formula;
    std::string method = "direct";
    std::string variant; ///< empty: refl for reflexive theories, else str
    std::string limit_kind;
    bool verify = false;
    std::size_t max_q = 2;
    std::optional<std::size_t> axiom_index;
    std::uint64_t seed = 0;
    std::size_t cap = 0;
};

class Context {
  public:
    explicit Context(const Options& o) : o_(o) {}

    Theory theory() const {
        return in_file(o_.theory, [&] { return json::parse_theory(json::read_file(o_.theory)); });
    }

    Structure structure(const std::string& path, const Theory& t) const {
        auto x = in_file(path, [&] { return json::parse_structure(json::read_file(path), t.signature_ptr()); });
        require_signature(x, t, path);
        return x;
    }

    Morphism morphism(const std::string& path, const Theory& t) const {
        auto f = in_file(path, [&] { return json::parse_morphism(json::read_file(path), t.signature_ptr()); });
        require_signature(f.source, t, path);
        require_signature(f.target, t, path);
        if (!validate_morphism(f)) {
            throw ParseError(path, "map does not preserve edges");
        }
        return f;
    }

    std::vector<Structure> family(const Theory& t) const {
        return model_family(t, o_.max_q, FamilyOptions{true, o_.cap, o_.seed});
    }

    template <typename Fn>
    static auto in_file(const std::string& path, Fn&& fn) -> decltype(fn()) {
        try {
            return fn();
        } catch (const ParseError& e) {
            if (e.where().rfind(path, 0) == 0) {
                throw;
            }
            std::string msg = e.what();
            if (!e.where().empty()) {
                msg = msg.substr(e.where().size() + 2);
            }
            throw ParseError(path + "#" + e.where(), msg);
        }
    }

  private:
    static void require_signature(const Structure& x, const Theory& t, const std::string& path) {
        if (!same_signature(x.signature_ptr(), t.signature_ptr())) {
            throw ParseError(path, "signature differs from the theory's");
        }
    }

    const Options& o_;
};

Json names_of(const Structure& x, const std::vector<ElementId>& elems) {
    Json a = Json::array();
    for (auto e : elems) {
        a.push_back(e == kUnbound ? Json(nullptr) : Json(x.name(e)));
    }
    return a;
}

Json valuation(const HornFormula& phi, const Structure& x, const std::vector<ElementId>& val) {
    Json v = Json::object();
    for (std::size_t i = 0; i < phi.var_count() && i < val.size(); ++i) {
        v[phi.var_names()[i]] = val[i] == kUnbound ? Json(nullptr) : Json(x.name(val[i]));
    }
    return v;
}

Json element_map(const Morphism& m) {
    Json j = Json::object();
    for (ElementId a = 0; a < m.source.size(); ++a) {
        j[m.source.name(a)] = m.target.name(m.map[a]);
    }
    return j;
}

Json kappa_json(const std::vector<std::string>& names, const std::vector<VarId>& kappa) {
    if (kappa.empty()) {
        return nullptr;
    }
    Json k = Json::object();
    for (std::size_t i = 0; i < kappa.size(); ++i) {
        k[names[i]] = names[kappa[i]];
    }
    return k;
}

Json header(const std::string& command) {
    Json j;
    j["format"] = json::kFormat;
    j["command"] = command;
    return j;
}

int emit(std::ostream& out, const Json& j, bool affirmative) {
    out << json::dump(j);
    return affirmative ? kAffirmative : kNegative;
}

int check_model(const Context& c, const Options& o, std::ostream& out) {
    auto t = c.theory();
    auto x = c.structure(o.structure, t);
    auto r = is_model(x, t);
    Json j = header("check-model");
    j["model"] = r.ok;
    if (!r.ok) {
        const auto& ax = t.all_axioms()[r.axiom];
        j["witness"] = {{"axiom", r.axiom},
                        {"formula", ax.to_string(t.signature())},
                        {"valuation", valuation(ax, x, r.valuation)}};
    } else {
        j["witness"] = nullptr;
    }
    return emit(out, j, r.ok);
}

int free_model_cmd(const Context& c, const Options& o, std::ostream& out) {
    auto t = c.theory();
    auto x = c.structure(o.structure, t);
    auto r = free_model(t, x);
    Json j = header("free-model");
    j["model"] = json::to_json(r.model);
    j["unit_map"] = element_map(r.unit_map);
    return emit(out, j, true);
}

Json product_json(const ProductResult& p) {
    Json j;
    j["object"] = json::to_json(p.object);
    j["first"] = element_map(p.first);
    j["second"] = element_map(p.second);
    return j;
}

int limit_cmd(const Context& c, const Options& o, std::ostream& out) {
    auto t = c.theory();
    Json j = header("limit");
    j["limit"] = o.limit_kind;
    Structure result = terminal(t.signature_ptr());
    if (o.limit_kind == "terminal") {
        j["object"] = json::to_json(result);
    } else if (o.limit_kind == "product") {
        auto p = product(c.structure(o.left, t), c.structure(o.right, t));
        result = p.object;
        j.update(product_json(p));
    } else if (o.limit_kind == "pullback") {
        auto p = pullback(c.morphism(o.f, t), c.morphism(o.g, t));
        result = p.object;
        j.update(product_json(p));
    } else {
        auto e = equalizer(c.morphism(o.f, t), c.morphism(o.g, t));
        result = e.object;
        j["object"] = json::to_json(e.object);
        j["inclusion"] = element_map(e.inclusion);
    }
    j["is_model"] = is_model(result, t).ok;
    return emit(out, j, true);
}

Json report_json(const VerifyReport& r) {
    Json j = json::to_json(r);
    j["summary"] = r.passed ? "bijection verified for " + std::to_string(r.entries.size()) + " test objects"
                            : "verification failed";
    return j;
}

Json homs_json(const ExponentialResult& e) {
    Json j = Json::object();
    for (ElementId h = 0; h < e.object.size(); ++h) {
        j[e.object.name(h)] = names_of(e.y, e.homs[h]);
    }
    return j;
}

int exponential_cmd(const Context& c, const Options& o, std::ostream& out) {
    auto t = c.theory();
    auto x = c.structure(o.base, t);
    auto y = c.structure(o.target, t);
    Json j = header("exponential");
    bool ok = true;
    if (t.signature().is_discrete()) {
        auto e = exponential_object(x, y);
        bool model = is_model(e.object, t).ok;
        ok = model;
        j["construction"] = "function-space";
        j["object"] = json::to_json(e.object);
        j["homs"] = homs_json(e);
        j["is_model"] = model;
        if (o.verify) {
            auto r = verify_exponential_parallel(e, c.family(t));
            ok = ok && r.passed;
            j["verification"] = report_json(r);
        }
    } else {
        // Y^X as the partial product of Y along X → 1.
        auto f = to_terminal(x);
        auto pp = partial_product_refl(y, f);
        bool model = is_model(pp.object, t).ok;
        ok = model;
        j["construction"] = "partial-product-refl";
        j["object"] = json::to_json(pp.object);
        j["is_model"] = model;
        if (o.verify) {
            auto r = verify_partial_product_parallel(pp, c.family(t));
            ok = ok && r.passed;
            j["verification"] = report_json(r);
        }
    }
    return emit(out, j, ok);
}

int partial_product_cmd(const Context& c, const Options& o, std::ostream& out) {
    auto t = c.theory();
    auto f = c.morphism(o.morphism, t);
    auto y = c.structure(o.target, t);
    auto variant = o.variant.empty() ? (is_reflexive_theory(t) ? "refl" : "str") : o.variant;
    auto pp = variant == "refl" ? partial_product_refl(y, f) : partial_product_str(y, f);
    bool model = is_model(pp.object, t).ok;
    Json j = header("partial-product");
    j["variant"] = variant;
    j["object"] = json::to_json(pp.object);
    j["projection"] = element_map(pp.p);
    j["is_model"] = model;
    bool ok = model;
    if (o.verify) {
        auto r = verify_partial_product_parallel(pp, c.family(t));
        ok = ok && r.passed;
        j["verification"] = report_json(r);
    }
    return emit(out, j, ok);
}

Json convexity_json(const ConvexityResult& r, const Morphism& f, const Theory& t) {
    Json j;
    j["convex"] = r.convex;
    if (r.counterexample) {
        const auto& ce = *r.counterexample;
        const auto& ax = t.all_axioms()[ce.axiom];
        j["counterexample"] = {{"axiom", ce.axiom},
                               {"formula", ax.to_string(t.signature())},
                               {"kappa_z", valuation(ax, f.target, ce.kappa_z)},
                               {"x", names_of(f.source, ce.x)}};
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

int convexity_cmd(const Context& c, const Options& o, std::ostream& out) {
    auto t = c.theory();
    auto f = c.morphism(o.morphism, t);
    Json j = header("convexity");
    j["method"] = o.method;
    if (o.method == "both") {
        auto d = is_convex(f, t);
        auto l = is_convex_via_lifting(f, t);
        j["direct"] = convexity_json(d, f, t);
        j["lifting"] = convexity_json(l, f, t);
        j["agree"] = d.convex == l.convex;
        j["convex"] = d.convex && l.convex;
        return emit(out, j, d.convex && l.convex);
    }
    auto r = o.method == "lifting" ? is_convex_via_lifting(f, t) : is_convex(f, t);
    j.update(convexity_json(r, f, t));
    return emit(out, j, r.convex);
}

Json safety_json(std::size_t index, const HornFormula& ax, const SafetyResult& r, const Theory& t) {
    Json j;
    j["axiom"] = index;
    j["formula"] = ax.to_string(t.signature());
    j["safe"] = r.safe;
    j["very_safe"] = r.very_safe;
    j["kappa"] = kappa_json(ax.var_names(), r.kappa);
    return j;
}

int safety_cmd(const Context& c, const Options& o, std::ostream& out) {
    auto t = c.theory();
    if (!t.signature().is_discrete()) {
        throw ParseError(o.theory, "safety needs a discrete signature; use schema-safety");
    }
    std::vector<std::size_t> indices;
    for (auto i : t.nonbase_indices()) {
        if (!t.all_axioms()[i].has_equality()) {
            indices.push_back(i);
        }
    }
    if (o.axiom_index) {
        if (*o.axiom_index >= t.all_axioms().size()) {
            throw ParseError("--axiom-index", "no axiom with index " + std::to_string(*o.axiom_index));
        }
        if (t.all_axioms()[*o.axiom_index].has_equality()) {
            throw ParseError("--axiom-index", "axiom has an equality conclusion");
        }
        indices = {*o.axiom_index};
    }
    Json j = header("safety");
    Json list = Json::array();
    bool all_safe = true;
    for (auto i : indices) {
        const auto& ax = t.all_axioms()[i];
        auto r = is_safe_axiom(ax, t);
        all_safe = all_safe && r.safe;
        list.push_back(safety_json(i, ax, r, t));
    }
    j["axioms"] = list;
    j["all_safe"] = all_safe;
    return emit(out, j, all_safe);
}

int schema_convexity_cmd(const Context& c, const Options& o, std::ostream& out) {
    auto t = c.theory();
    auto f = c.morphism(o.morphism, t);
    auto r = is_schema_convex(f, t);
    const auto& sig = t.signature();
    Json j = header("schema-convexity");
    j["convex"] = r.convex;
    if (r.counterexample) {
        const auto& ce = *r.counterexample;
        const auto& s = t.schemas()[ce.schema];
        Json labels = Json::array();
        for (auto l : ce.labels) {
            labels.push_back(sig.symbol(l).name);
        }
        Json kz = Json::object();
        for (std::size_t i = 0; i < ce.kappa_z.size() && i < s.var_names.size(); ++i) {
            kz[s.var_names[i]] = ce.kappa_z[i] == kUnbound ? Json(nullptr) : Json(f.target.name(ce.kappa_z[i]));
        }
        j["counterexample"] = {{"schema", ce.schema},
                               {"labels", labels},
                               {"kappa_z", kz},
                               {"x", names_of(f.source, ce.x)},
                               {"t", sig.symbol(ce.t).name},
                               {"bound", sig.symbol(ce.bound).name}};
    } else {
        j["counterexample"] = nullptr;
    }
    return emit(out, j, r.convex);
}

Json schema_safety_json(std::size_t index, const AxiomSchema& s, const SchemaSafetyResult& r, const Signature& sig) {
    Json j;
    j["schema"] = index;
    j["name"] = s.name;
    j["meet_equation"] = r.meet_equation;
    if (r.meet_counterexample) {
        const auto& m = *r.meet_counterexample;
        Json labels = Json::array();
        for (auto l : m.labels) {
            labels.push_back(sig.symbol(l).name);
        }
        j["meet_counterexample"] = {{"labels", labels},
                                    {"s", sig.symbol(m.s).name},
                                    {"sigma_of_meet", sig.symbol(m.lhs).name},
                                    {"meet_of_sigma", sig.symbol(m.rhs).name}};
    } else {
        j["meet_counterexample"] = nullptr;
    }
    j["safe"] = r.safe;
    j["very_safe"] = r.very_safe;
    j["uniform_kappa"] = r.uniform ? kappa_json(s.var_names, r.kappa) : Json(nullptr);
    Json per = Json::array();
    if (!r.kappas.empty()) {
        std::size_t l = 0;
        for_each_label_tuple(sig.symbols_of_arity(s.arity), s.premises.size(), [&](const std::vector<SymbolId>& labels) {
            Json names = Json::array();
            for (auto x : labels) {
                names.push_back(sig.symbol(x).name);
            }
            per.push_back({{"labels", names}, {"kappa", kappa_json(s.var_names, r.kappas[l++])}});
        });
    }
    j["kappas"] = per;
    return j;
}

int schema_safety_cmd(const Context& c, const Options&, std::ostream& out) {
    auto t = c.theory();
    Json j = header("schema-safety");
    Json list = Json::array();
    bool all_safe = true;
    for (std::size_t i = 0; i < t.schemas().size(); ++i) {
        auto r = is_schema_safe(t.schemas()[i], t);
        all_safe = all_safe && r.safe;
        list.push_back(schema_safety_json(i, t.schemas()[i], r, t.signature()));
    }
    j["schemas"] = list;
    j["all_safe"] = all_safe;
    return emit(out, j, all_safe);
}

int classify_cmd(const Context& c, const Options&, std::ostream& out) {
    auto t = c.theory();
    Json j = header("classify");
    j["theory"] = t.name();
    if (t.signature().is_discrete()) {
        auto r = classify_theory(t);
        j["kind"] = "discrete";
        j["safety"] = to_string(r.safety);
        Json list = Json::array();
        for (const auto& a : r.axioms) {
            list.push_back(safety_json(a.axiom, t.all_axioms()[a.axiom], a.result, t));
        }
        j["axioms"] = list;
        j["reflexive"] = r.reflexive;
        j["transitive"] = r.transitive;
        j["has_equality"] = r.has_equality;
        j["cartesian_closed"] = r.cartesian_closed;
        j["locally_cartesian_closed"] = r.locally_cartesian_closed;
        j["quasitopos"] = r.quasitopos;
        j["advisories"] = r.advisories;
    } else {
        auto r = classify_schematic_theory(t);
        j["kind"] = "schematic";
        Json list = Json::array();
        for (std::size_t i = 0; i < r.schemas.size(); ++i) {
            list.push_back(schema_safety_json(i, t.schemas()[i], r.schemas[i], t.signature()));
        }
        j["schemas"] = list;
        j["has_equality"] = r.has_equality;
        j["cartesian_closed"] = r.cartesian_closed;
        j["locally_cartesian_closed"] = r.locally_cartesian_closed;
        j["quasitopos"] = r.quasitopos;
        j["advisories"] = r.advisories;
    }
    return emit(out, j, true);
}

int quantale_check_cmd(const Context&, const Options& o, std::ostream& out) {
    auto v = Context::in_file(o.quantale, [&] { return json::parse_quantale(json::read_file(o.quantale)); });
    auto r = check_quantale_laws(v);
    Json j = header("quantale-check");
    j["passed"] = r.passed;
    j["laws"] = {{"partial_order", r.partial_order},   {"lattice", r.lattice},
                 {"commutative", r.commutative},       {"associative", r.associative},
                 {"unital", r.unital},                 {"join_preserving", r.join_preserving},
                 {"join_closure_obligation", r.join_closure_obligation}};
    if (r.passed) {
        j["witness"] = nullptr;
        j["heyting"] = is_heyting(v);
        j["total_order"] = is_total_order(v);
    } else {
        j["witness"] = {{"law", r.failed_law}, {"elements", r.witness}};
    }
    return emit(out, j, r.passed);
}

int entails_cmd(const Context& c, const Options& o, std::ostream& out) {
    auto t = c.theory();
    auto phi = [&] {
        try {
            return HornFormula::parse(t.signature(), o.formula);
        } catch (const ParseError& e) {
            throw ParseError("--formula", e.what());
        } catch (const Error& e) {
            throw ParseError("--formula", e.what());
        }
    }();
    bool r = entails(t, phi);
    Json j = header("entails");
    j["formula"] = phi.to_string(t.signature());
    j["entails"] = r;
    return emit(out, j, r);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Finite-model engine for relational Horn theories", args.empty() ? "relhorn" : args[0]};
    app.require_subcommand(1);
    app.add_option("--seed", o.seed, "seed for the test-family sampler");
    app.add_option("--cap", o.cap, "largest test family before sampling (0 = no cap)");

    auto theory_opt = [&](CLI::App* sub) {
        sub->add_option("--theory", o.theory, "theory JSON")->required()->check(CLI::ExistingFile);
    };
    auto file_opt = [&](CLI::App* sub, const std::string& name, std::string& dst, const std::string& help) {
        sub->add_option(name, dst, help)->required()->check(CLI::ExistingFile);
    };
    auto verify_opts = [&](CLI::App* sub) {
        sub->add_flag("--verify", o.verify, "check the universal property on a test family");
        sub->add_option("--max-q", o.max_q, "largest test object")->check(CLI::Range(0, 4));
    };

    std::vector<std::pair<CLI::App*, int (*)(const Context&, const Options&, std::ostream&)>> commands;

    auto* cm = app.add_subcommand("check-model", "is the structure a model of the theory");
    theory_opt(cm);
    file_opt(cm, "--structure", o.structure, "structure JSON");
    commands.emplace_back(cm, check_model);

    auto* fm = app.add_subcommand("free-model", "free model generated by a structure");
    theory_opt(fm);
    file_opt(fm, "--structure", o.structure, "structure JSON");
    commands.emplace_back(fm, free_model_cmd);

    auto* lim = app.add_subcommand("limit", "terminal object, product, pullback or equalizer");
    lim->add_option("kind", o.limit_kind, "terminal|product|pullback|equalizer")
        ->required()
        ->check(CLI::IsMember({"terminal", "product", "pullback", "equalizer"}));
    theory_opt(lim);
    lim->add_option("--left", o.left, "left factor")->check(CLI::ExistingFile);
    lim->add_option("--right", o.right, "right factor")->check(CLI::ExistingFile);
    lim->add_option("--f", o.f, "first morphism")->check(CLI::ExistingFile);
    lim->add_option("--g", o.g, "second morphism")->check(CLI::ExistingFile);
    commands.emplace_back(lim, limit_cmd);

    auto* ex = app.add_subcommand("exponential", "exponential object Y^X");
    theory_opt(ex);
    file_opt(ex, "--base", o.base, "exponent X");
    file_opt(ex, "--target", o.target, "base Y");
    verify_opts(ex);
    commands.emplace_back(ex, exponential_cmd);

    auto* pp = app.add_subcommand("partial-product", "partial product of Y over f");
    theory_opt(pp);
    pp->add_option("--variant", o.variant, "str|refl")->check(CLI::IsMember({"str", "refl"}));
    file_opt(pp, "--morphism", o.morphism, "morphism f");
    file_opt(pp, "--target", o.target, "structure Y");
    verify_opts(pp);
    commands.emplace_back(pp, partial_product_cmd);

    auto* cv = app.add_subcommand("convexity", "convexity of a morphism");
    theory_opt(cv);
    file_opt(cv, "--morphism", o.morphism, "morphism f");
    cv->add_option("--method", o.method, "direct|lifting|both")
        ->check(CLI::IsMember({"direct", "lifting", "both"}));
    commands.emplace_back(cv, convexity_cmd);

    auto* sf = app.add_subcommand("safety", "safety of each non-base axiom");
    theory_opt(sf);
    sf->add_option("--axiom-index", o.axiom_index, "index into the full axiom list");
    commands.emplace_back(sf, safety_cmd);

    auto* sc = app.add_subcommand("schema-convexity", "schema convexity of a morphism");
    theory_opt(sc);
    file_opt(sc, "--morphism", o.morphism, "morphism f");
    commands.emplace_back(sc, schema_convexity_cmd);

    auto* ss = app.add_subcommand("schema-safety", "safety of each axiom schema");
    theory_opt(ss);
    commands.emplace_back(ss, schema_safety_cmd);

    auto* cl = app.add_subcommand("classify", "which closure results apply");
    theory_opt(cl);
    commands.emplace_back(cl, classify_cmd);

    auto* qc = app.add_subcommand("quantale-check", "quantale laws");
    file_opt(qc, "--quantale", o.quantale, "quantale JSON");
    commands.emplace_back(qc, quantale_check_cmd);

    auto* en = app.add_subcommand("entails", "does the theory entail a formula");
    theory_opt(en);
    en->add_option("--formula", o.formula, "e.g. \"le x y, le y z => le x z\"")->required();
    commands.emplace_back(en, entails_cmd);

    std::vector<const char*> argv;
    std::string prog = args.empty() ? "relhorn" : args[0];
    argv.push_back(prog.c_str());
    for (std::size_t i = 1; i < args.size(); ++i) {
        argv.push_back(args[i].c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kAffirmative;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    if (o.limit_kind == "product" && (o.left.empty() || o.right.empty())) {
        err << "error: limit product needs --left and --right\n";
        return kInputError;
    }
    if ((o.limit_kind == "pullback" || o.limit_kind == "equalizer") && (o.f.empty() || o.g.empty())) {
        err << "error: limit " << o.limit_kind << " needs --f and --g\n";
        return kInputError;
    }

    Context ctx(o);
    for (auto [sub, fn] : commands) {
        if (!sub->parsed()) {
            continue;
        }
        try {
            return fn(ctx, o, out);
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return kInputError;
        } catch (const Json::exception& e) {
            err << "error: " << e.what() << "\n";
            return kInputError;
        }
    }
    return kInputError;
}

} // namespace relhorn::cli
