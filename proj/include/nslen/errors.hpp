#pragma once

#include <stdexcept>
#include <string>

namespace nslen {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DegreeMismatch : Error {
  explicit DegreeMismatch(const std::string& what) : Error(what) {}
};

/// Enumeration or scan cap exceeded (group too large for the request).
struct CapExceeded : Error {
  explicit CapExceeded(const std::string& what) : Error(what) {}
};

struct IndexCapExceeded : Error {
  explicit IndexCapExceeded(const std::string& what) : Error(what) {}
};

struct NotNormal : Error {
  explicit NotNormal(const std::string& what) : Error(what) {}
};

/// A block list handed to induced_action is not invariant under the group.
struct NotInvariant : Error {
  explicit NotInvariant(const std::string& what) : Error(what) {}
};

struct ElementOutsideGroup : Error {
  explicit ElementOutsideGroup(const std::string& what) : Error(what) {}
};

struct ExactCapExceeded : Error {
  explicit ExactCapExceeded(const std::string& what) : Error(what) {}
};

struct ArityMismatch : Error {
  explicit ArityMismatch(const std::string& what) : Error(what) {}
};

struct WordSyntaxError : Error {
  explicit WordSyntaxError(const std::string& what) : Error(what) {}
};

/// A word repeats a variable and is therefore not a multilinear commutator.
struct RepeatedVariable : Error {
  explicit RepeatedVariable(const std::string& what) : Error(what) {}
};

struct MalformedFile : Error {
  explicit MalformedFile(const std::string& what) : Error(what) {}
};

struct UnsupportedSpec : Error {
  explicit UnsupportedSpec(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace nslen
