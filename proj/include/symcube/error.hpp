#ifndef SYMCUBE_ERROR_HPP
#define SYMCUBE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace symcube {

enum class ErrorCode {
  generic,
  parse,
  empty_complex,
  not_a_face,
  cap_exceeded,
  not_automorphism,
  impure,
  overflow,
  illegal_move,
  budget,
  precondition,
};

class Error : public std::runtime_error {
 public:
  explicit Error(std::string message, ErrorCode code = ErrorCode::generic)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace symcube

#endif
