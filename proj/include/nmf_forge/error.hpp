#pragma once

#include <stdexcept>
#include <string>

namespace nmf_forge {

// Raised for every invalid input or unrecoverable condition in the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nmf_forge
