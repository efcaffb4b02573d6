#pragma once

#include <stdexcept>
#include <string>

namespace vcc {

// Error categories map 1:1 onto the CLI exit codes.
enum class ErrorKind {
  Input,         // exit 2: missing/unreadable inputs, empty required input
  Provider,      // exit 3: provider auth or availability
  Contract,      // exit 4: data-contract violation (dims, duplicate ids, ...)
  FixtureMiss,   // exit 5: REPLAY fixture does not cover a request
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  int exit_code() const {
    switch (kind_) {
      case ErrorKind::Input: return 2;
      case ErrorKind::Provider: return 3;
      case ErrorKind::Contract: return 4;
      case ErrorKind::FixtureMiss: return 5;
    }
    return 1;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_input(const std::string& msg) {
  throw Error(ErrorKind::Input, msg);
}
[[noreturn]] inline void throw_provider(const std::string& msg) {
  throw Error(ErrorKind::Provider, msg);
}
[[noreturn]] inline void throw_contract(const std::string& msg) {
  throw Error(ErrorKind::Contract, msg);
}
[[noreturn]] inline void throw_fixture_miss(const std::string& msg) {
  throw Error(ErrorKind::FixtureMiss, msg);
}

}  // namespace vcc
