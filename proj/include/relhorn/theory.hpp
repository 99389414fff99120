#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "relhorn/formula.hpp"
#include "relhorn/signature.hpp"

namespace relhorn {

/// An n-ary axiom schema (Φ, ψ, σ): premises and conclusion are edges in a
/// placeholder symbol, and σ picks the conclusion label from the premise
/// labels.
struct AxiomSchema {
    /// σ(R̄) = ∼_{v_1 ⊗ ... ⊗ v_k}; requires a quantale-induced signature.
    struct TensorComposite {
        bool operator==(const TensorComposite&) const = default;
    };
    /// σ(R̄) = R_φ for a fixed premise index.
    struct Projection {
        std::size_t premise = 0;
        bool operator==(const Projection&) const = default;
    };
    struct Constant {
        SymbolId symbol = 0;
        bool operator==(const Constant&) const = default;
    };
    /// Row-major over Π(n)^Φ with premise 0 most significant; entries are
    /// symbol ids. Positions index symbols_of_arity(n).
    struct Table {
        std::vector<SymbolId> values;
        bool operator==(const Table&) const = default;
    };
    using Sigma = std::variant<TensorComposite, Projection, Constant, Table>;

    std::string name;
    std::uint32_t arity = 0;
    std::vector<std::string> var_names;
    std::vector<std::vector<VarId>> premises;
    std::vector<VarId> conclusion;
    Sigma sigma;
    bool monotone_declared = false;

    bool operator==(const AxiomSchema&) const = default;
};

/// One instance (R̄, Φ_R̄ ⇒ σ(R̄)v̄).
struct SchemaInstance {
    std::size_t schema = 0;
    std::vector<SymbolId> labels;
    HornFormula formula;
};

[[nodiscard]] SymbolId apply_sigma(const AxiomSchema& s, const Signature& sig, std::span<const SymbolId> labels);

/// Calls fn(labels) for every tuple in group^k, lexicographically.
void for_each_label_tuple(const std::vector<SymbolId>& group, std::size_t k,
                          const std::function<void(const std::vector<SymbolId>&)>& fn);

/// Monotonicity of σ in every argument, decided by enumeration.
[[nodiscard]] bool sigma_is_monotone(const AxiomSchema& s, const Signature& sig);

/// All |Π(n)|^|Φ| instances, labels in lexicographic order of Π(n) positions.
[[nodiscard]] std::vector<SchemaInstance> expand_instances(const AxiomSchema& s, const Signature& sig,
                                                           std::size_t schema_index = 0);

namespace schemas {
/// ({x S y, y S z}, x S z, ⊗)
AxiomSchema generalized_transitivity();
/// ({x S y}, y S x, identity)
AxiomSchema symmetry();
} // namespace schemas

/// The axioms of T_Π: reflexivity for every symbol, R v̄ ⇒ S v̄ for R > S,
/// and for complete Heyting signatures the nullary and binary join axioms
/// (binary ones only for incomparable pairs).
[[nodiscard]] std::vector<HornFormula> base_axioms(const Signature& sig);

/// Whether an axiom is syntactically one of the T_Π axioms.
[[nodiscard]] bool is_base_axiom(const HornFormula& ax, const Signature& sig);

/// A relational Horn theory: explicit axioms, axiom schemas (expanded
/// eagerly into instances), and optionally the implicit T_Π axioms.
class Theory {
  public:
    Theory(SignaturePtr signature, std::vector<HornFormula> axioms, std::vector<AxiomSchema> schemas = {},
           bool include_base = false, std::string name = {});

    [[nodiscard]] const Signature& signature() const { return *signature_; }
    [[nodiscard]] const SignaturePtr& signature_ptr() const { return signature_; }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const std::vector<HornFormula>& axioms() const { return axioms_; }
    [[nodiscard]] const std::vector<AxiomSchema>& schemas() const { return schemas_; }
    [[nodiscard]] bool includes_base() const { return include_base_; }
    [[nodiscard]] const std::vector<SchemaInstance>& instances() const { return instances_; }

    /// T_Π axioms (when included), then explicit axioms, then instances.
    [[nodiscard]] const std::vector<HornFormula>& all_axioms() const { return all_; }
    /// Indices into all_axioms() of the axioms of T \ T_Π.
    [[nodiscard]] const std::vector<std::size_t>& nonbase_indices() const { return nonbase_; }
    [[nodiscard]] bool has_equality_axiom() const;

  private:
    SignaturePtr signature_;
    std::vector<HornFormula> axioms_;
    std::vector<AxiomSchema> schemas_;
    bool include_base_ = false;
    std::string name_;
    std::vector<SchemaInstance> instances_;
    std::vector<HornFormula> all_;
    std::vector<std::size_t> nonbase_;
};

/// T_Π as a theory in its own right.
[[nodiscard]] Theory base_theory(const SignaturePtr& sig);

namespace theories {
/// ≤ with reflexivity and transitivity.
Theory preord();
/// preord plus antisymmetry.
Theory pos();
/// One binary R, reflexive and symmetric.
Theory refl_sym();
/// One binary R, reflexive only.
Theory reflexive_graph();
/// One binary R, no axioms.
Theory empty_binary();
} // namespace theories

} // namespace relhorn
