#pragma once

#include <stdexcept>
#include <string>

namespace fairdiv {

enum class ErrorCode {
  InvalidInput,
  IndexOutOfRange,
  MalformedAllocation,
  MalformedCycle,
  InstanceTooSmall,
  ImprovingCycleExists,
  CyclicEnvyGraph,
  LimitExceeded,
  InternalGuaranteeViolated,
};

const char* code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fairdiv
