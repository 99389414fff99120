#pragma once

#include <string>

#include <json.hpp>

#include "relhorn/closure.hpp"
#include "relhorn/quantale.hpp"
#include "relhorn/structure.hpp"
#include "relhorn/theory.hpp"

namespace relhorn::json {

using Json = nlohmann::ordered_json;

inline constexpr int kFormat = 1;

/// Parses text; syntax errors become ParseError with "line:column".
[[nodiscard]] Json parse_text(const std::string& text, const std::string& source = "");
[[nodiscard]] Json read_file(const std::string& path);
/// Two-space indent, trailing newline.
[[nodiscard]] std::string dump(const Json& j);

/// {"elements", "leq": [[a, b]...], "tensor": {"a,b": "c"}, "unit"} or
/// {"builtin": "boolean" | "chain3-meet" | "chain3-lukasiewicz" | "chain<N>-meet"}.
[[nodiscard]] Quantale parse_quantale(const Json& j);
[[nodiscard]] Json to_json(const Quantale& v);

/// {"order": "discrete" | "explicit" | "quantale", "symbols": [...], ...}
[[nodiscard]] SignaturePtr parse_signature(const Json& j);
[[nodiscard]] Json to_json(const Signature& sig);

/// {"signature"?, "carrier": [...], "edges": [["R", "a", "b"], ...]}.
/// `fallback` is used when the document has no signature.
[[nodiscard]] Structure parse_structure(const Json& j, const SignaturePtr& fallback = nullptr);
[[nodiscard]] Json to_json(const Structure& x);

/// {"source", "target", "map": {"a": "0", ...}}
[[nodiscard]] Morphism parse_morphism(const Json& j, const SignaturePtr& fallback = nullptr);
[[nodiscard]] Json to_json(const Morphism& f);

/// Axioms are text ("le x y, le y z => le x z") or
/// {"premises": [["le","x","y"]...], "conclusion": ["le","x","z"]}.
[[nodiscard]] HornFormula parse_formula(const Json& j, const Signature& sig);
[[nodiscard]] Json to_json(const HornFormula& phi, const Signature& sig);

[[nodiscard]] AxiomSchema parse_schema(const Json& j, const Signature& sig);
[[nodiscard]] Json to_json(const AxiomSchema& s, const Signature& sig);

/// Either {"signature", "axioms", "schemas"?, "include_base"?, "name"?} or
/// {"generated": {"quantale": ..., "theory": "vgph|vrgph|vcat|pmet|met"}}.
[[nodiscard]] Theory parse_theory(const Json& j);
[[nodiscard]] Json to_json(const Theory& t);

[[nodiscard]] Json to_json(const VerifyReport& r);

} // namespace relhorn::json
