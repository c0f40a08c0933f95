#pragma once

#include <stdexcept>
#include <string>

namespace omflow {

// Bad caller-supplied data: malformed files, out-of-range parameters,
// arguments that violate a documented precondition.  CLI maps this to exit 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Parse failure in an input file; message carries line/byte position.
class ParseError : public InputError {
 public:
  explicit ParseError(const std::string& what) : InputError(what) {}
};

// A configured size/work cap was exceeded.  CLI maps this to exit 3.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A randomly drawn realization failed its genericity check; callers retry
// with fresh randomness.
class GenericityError : public std::runtime_error {
 public:
  explicit GenericityError(const std::string& what) : std::runtime_error(what) {}
};

// A guaranteed structural property failed to hold.  This is a bug (ours or a
// genuine counterexample to the theory) and is never caught in normal flow.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

inline void invariant(bool ok, const char* what) {
  if (!ok) throw InvariantError(what);
}

}  // namespace omflow
