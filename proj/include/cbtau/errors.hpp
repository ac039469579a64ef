#pragma once

#include <stdexcept>
#include <string>

namespace cbtau {

// Base of everything the engine throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Pole of Gamma, invalid parameter combination, ...
struct DomainError : Error {
  using Error::Error;
};

// A denominator vanished at this particular point (Kac zero, hook cross term, ...).
struct NonGenericPoint : Error {
  using Error::Error;
};

struct UsageError : Error {
  using Error::Error;
};

struct MissingSymbol : UsageError {
  explicit MissingSymbol(const std::string& sym)
      : UsageError("missing symbol '" + sym + "' in parameter point"), symbol(sym) {}
  std::string symbol;
};

struct ContainmentError : Error {
  using Error::Error;
};

struct InconsistentSystem : Error {
  using Error::Error;
};

struct TruncationError : Error {
  using Error::Error;
};

}  // namespace cbtau
