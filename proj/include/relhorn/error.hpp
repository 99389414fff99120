#pragma once

#include <stdexcept>
#include <string>

namespace relhorn {

/// Structural misuse: signature mismatch, partial maps, ill-formed input.
/// Distinct from a negative verdict, which is always a return value.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed document; `where` is a JSON-pointer-like location.
class ParseError : public Error {
  public:
    ParseError(const std::string& where, const std::string& what)
        : Error(where.empty() ? what : where + ": " + what), where_(where) {}

    [[nodiscard]] const std::string& where() const { return where_; }

  private:
    std::string where_;
};

} // namespace relhorn
