#pragma once

#include <stdexcept>
#include <string>

namespace closol {

// Malformed input text or JSON. The CLI maps this to exit code 2.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Violated precondition, size limit, or semantic rule on well-formed input.
// The CLI maps this to exit code 1.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace closol
