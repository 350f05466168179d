#pragma once

#include <stdexcept>
#include <string>

namespace vra {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownSymbolError : Error {
  explicit UnknownSymbolError(const std::string& sym)
      : Error("unknown symbol: " + sym) {}
};

struct AlphabetMismatchError : Error {
  using Error::Error;
};

struct NotDeterministicCompleteError : Error {
  using Error::Error;
};

struct MissingExpansionError : Error {
  using Error::Error;
};

struct NotCodetCompleteError : Error {
  using Error::Error;
};

struct NotWellMatchedError : Error {
  using Error::Error;
};

struct InvalidVraError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

struct BudgetExceededError : Error {
  using Error::Error;
};

}  // namespace vra
