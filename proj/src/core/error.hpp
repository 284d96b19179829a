#pragma once

#include <stdexcept>
#include <string>

namespace posetlab {

// Error taxonomy mirrored by the CLI exit codes and the C API status codes:
// Parse -> 2, Semantic -> 3, Budget -> 4.
class Error : public std::runtime_error {
 public:
  enum class Kind { Parse, Semantic, Budget };

  Error(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline Error parse_error(std::string message) {
  return Error(Error::Kind::Parse, std::move(message));
}
inline Error semantic_error(std::string message) {
  return Error(Error::Kind::Semantic, std::move(message));
}
inline Error budget_error(std::string message) {
  return Error(Error::Kind::Budget, std::move(message));
}

}  // namespace posetlab
