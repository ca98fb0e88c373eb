#pragma once

#include <stdexcept>
#include <string>

namespace dofppr {

enum class ErrorCode {
  empty_input = 1,
  invalid_sample,
  index_error,
  infeasible_fit,
  infeasible,
  duplicate_slope,
  invalid_penalty,
  not_enough_data,
  invalid_argument,
  parse_error,
  io_error,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dofppr
