#pragma once

#include <stdexcept>
#include <string>

namespace qm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed textual input (word grammar, rationals, JSON payloads).
struct ParseError : Error {
  using Error::Error;
};

// Invalid configuration: out-of-range budgets, missing sequence for a
// generator, non-unimodular matrix, group axiom violation.
struct ConfigError : Error {
  using Error::Error;
};

// A checked identity or bound failed at runtime. Signals an implementation
// bug or a violated hypothesis, never bad user input.
struct VerificationError : Error {
  using Error::Error;
};

}  // namespace qm
