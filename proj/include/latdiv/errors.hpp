#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace latdiv {

/// Root of every error the library raises on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LATDIV_DEFINE_ERROR(Name)            \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

// lattice_core
LATDIV_DEFINE_ERROR(CycleError);
LATDIV_DEFINE_ERROR(NotALattice);
LATDIV_DEFINE_ERROR(NoBottom);
LATDIV_DEFINE_ERROR(UnknownElement);
LATDIV_DEFINE_ERROR(SizeLimit);

// diversity_core
LATDIV_DEFINE_ERROR(NotValidated);
LATDIV_DEFINE_ERROR(NotAnAtom);
LATDIV_DEFINE_ERROR(ValidationError);

// constructions
LATDIV_DEFINE_ERROR(NotModular);
LATDIV_DEFINE_ERROR(NotASubValuation);
LATDIV_DEFINE_ERROR(NotPositive);
LATDIV_DEFINE_ERROR(NonzeroAtBottom);
LATDIV_DEFINE_ERROR(BadChainFunction);
LATDIV_DEFINE_ERROR(NotASublattice);

// birkhoff
LATDIV_DEFINE_ERROR(NotDistributive);
LATDIV_DEFINE_ERROR(NotInJ);

// tightspan
LATDIV_DEFINE_ERROR(LatticeMismatch);
LATDIV_DEFINE_ERROR(NotInPL);
LATDIV_DEFINE_ERROR(NotInTL);

#undef LATDIV_DEFINE_ERROR

/// Raised when a theorem-backed self check fails. Always a library bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed document text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace latdiv
