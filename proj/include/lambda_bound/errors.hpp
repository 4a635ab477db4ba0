#pragma once

#include <stdexcept>
#include <string>

namespace lambda_bound {

// Malformed input text. `locus` names the offending line and/or field,
// e.g. "line 4" or "edges[2].u".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string locus, const std::string& what)
      : std::runtime_error(locus + ": " + what), locus_(std::move(locus)) {}
  const std::string& locus() const noexcept { return locus_; }

 private:
  std::string locus_;
};

// Well-formed input that violates a semantic rule (dangling id, s == t, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lambda_bound
