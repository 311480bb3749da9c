#pragma once

#include <stdexcept>
#include <string>

namespace machin {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// gaussian_core
class NotSplittable : public Error { public: using Error::Error; };
class OnDiagonal : public Error { public: using Error::Error; };
class DivisionByZero : public Error { public: using Error::Error; };

// arctan_relations
class MalformedRelation : public Error { public: using Error::Error; };
class BadBasis : public Error { public: using Error::Error; };
class NotApplicable : public Error { public: using Error::Error; };
class InconsistentSigns : public Error { public: using Error::Error; };
class OutOfRange : public Error { public: using Error::Error; };

/// Relation text that does not match the line grammar.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : Error(what + " (column " + std::to_string(column) + ")"), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

// bounds_engine
class DomainError : public Error { public: using Error::Error; };
class NoConvergence : public Error { public: using Error::Error; };
class BranchError : public Error { public: using Error::Error; };
class OutOfStatedDomain : public Error { public: using Error::Error; };

// precision_eval
class RelationNotVerified : public Error { public: using Error::Error; };

}  // namespace machin
