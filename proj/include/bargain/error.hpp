#pragma once

#include <stdexcept>
#include <string>

namespace bargain {

/// Malformed or unreadable input (files, flags, dimension mismatches).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A value violates a domain invariant (nonnegativity, simplex membership,
/// spec/family compatibility, normalization of a confidence collection).
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bargain
