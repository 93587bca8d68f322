#pragma once

#include <stdexcept>
#include <string>

namespace khbound {

/// Malformed or inconsistent input (bad PD text, invalid index, unknown knot).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured resource ceiling was exceeded. Results are never truncated.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed: d^2 != 0, an empty homology table,
/// a violated vanishing bound. Always an engine bug or a counterexample.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace khbound
