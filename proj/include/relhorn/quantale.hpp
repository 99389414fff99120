#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace relhorn {

/// A finite commutative unital quantale given by explicit tables.
///
/// Construction only checks that the tables are well formed (every name
/// known, tensor total). Whether the tables actually satisfy the quantale
/// laws is reported by check_quantale_laws(); theory generators refuse
/// quantales that fail it.
class Quantale {
  public:
    using Value = std::uint32_t;

    Quantale(std::vector<std::string> elements, const std::vector<std::pair<std::string, std::string>>& leq_pairs,
             const std::vector<std::vector<std::string>>& tensor_table, std::string unit);

    /// Table-level constructor: `leq` is any generating relation (closed
    /// reflexively and transitively here), `tensor[a][b]` a full table.
    Quantale(std::vector<std::string> elements, std::vector<std::vector<bool>> leq,
             std::vector<std::vector<Value>> tensor, Value unit);

    [[nodiscard]] std::size_t size() const { return names_.size(); }
    [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
    [[nodiscard]] const std::string& name(Value v) const { return names_.at(v); }
    [[nodiscard]] std::optional<Value> find(const std::string& name) const;
    [[nodiscard]] Value index_of(const std::string& name) const;

    [[nodiscard]] bool leq(Value a, Value b) const { return leq_[a][b]; }
    [[nodiscard]] Value tensor(Value a, Value b) const { return tensor_[a][b]; }
    [[nodiscard]] Value unit() const { return unit_; }
    [[nodiscard]] const std::vector<std::vector<bool>>& leq_matrix() const { return leq_; }
    [[nodiscard]] const std::vector<std::vector<Value>>& tensor_table() const { return tensor_; }

    /// Lattice operations; only meaningful when is_lattice() holds.
    [[nodiscard]] bool is_lattice() const { return lattice_; }
    [[nodiscard]] Value join(Value a, Value b) const { return join_[a][b]; }
    [[nodiscard]] Value meet(Value a, Value b) const { return meet_[a][b]; }
    [[nodiscard]] Value bottom() const { return bottom_; }
    [[nodiscard]] Value top() const { return top_; }
    [[nodiscard]] Value join_all(const std::vector<Value>& vs) const;

    /// Copy with one tensor cell replaced (law-checker mutation tests).
    [[nodiscard]] Quantale with_tensor_cell(Value a, Value b, Value c) const;

    bool operator==(const Quantale& other) const = default;

  private:
    void close_order();
    void compute_lattice();

    std::vector<std::string> names_;
    std::vector<std::vector<bool>> leq_;
    std::vector<std::vector<Value>> tensor_;
    Value unit_ = 0;
    bool lattice_ = false;
    std::vector<std::vector<Value>> join_;
    std::vector<std::vector<Value>> meet_;
    Value bottom_ = 0;
    Value top_ = 0;
};

struct QuantaleLawReport {
    bool passed = true;
    bool partial_order = true;
    bool lattice = true;
    bool commutative = true;
    bool associative = true;
    bool unital = true;
    bool join_preserving = true;
    bool join_closure_obligation = true;
    /// First failing law with its witnessing element names.
    std::string failed_law;
    std::vector<std::string> witness;
};

[[nodiscard]] QuantaleLawReport check_quantale_laws(const Quantale& v);

/// a ∧ ⋁S = ⋁{a ∧ s}, checked over all subsets S and again over binary joins.
[[nodiscard]] bool is_heyting(const Quantale& v);
[[nodiscard]] bool is_total_order(const Quantale& v);

namespace builtin {
/// ({⊥, ⊤}, ∧, ⊤) with elements named "bot" and "top".
Quantale boolean();
/// Chain 0 < 1 < ... < length-1 with tensor = meet and unit = top.
Quantale chain_meet(std::size_t length);
/// Chain {0,1,2} with a ⊗ b = max(0, a + b - 2) and unit 2.
Quantale chain3_lukasiewicz();
/// Builtins by name: "boolean", "chain3-meet", "chain3-lukasiewicz".
std::optional<Quantale> by_name(const std::string& name);
} // namespace builtin

} // namespace relhorn
