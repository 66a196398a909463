#pragma once

#include <stdexcept>
#include <string>

namespace conlat {

/// Malformed or structurally invalid input (bad JSON, non-poset tables,
/// out-of-range labels, carrier mismatches).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A brute-force enumeration or materialization would exceed its configured
/// bound. Operations refuse instead of sampling.
class GuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A bounded search ran out of budget before finding an answer.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace conlat
