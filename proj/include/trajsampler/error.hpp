#pragma once

#include <stdexcept>
#include <string>

namespace trajsampler {

enum class ErrorKind {
  kValidation,  // bad input, bad configuration, contract violation
  kIo,          // unreadable / unwritable file
  kNumerical,   // factorization failure and similar
};

/// Single exception type for the library. The kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error validation_error(const std::string& what) { return Error(ErrorKind::kValidation, what); }
inline Error io_error(const std::string& what) { return Error(ErrorKind::kIo, what); }

}  // namespace trajsampler
