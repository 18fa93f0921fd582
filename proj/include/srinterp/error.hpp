#pragma once

#include <stdexcept>
#include <string>

namespace srinterp {

enum class ErrorCode {
  InvalidArgument,
  MalformedHeader,
  UnsupportedMaxval,
  TruncatedPayload,
  BadMagic,
  ZeroFrames,
  DimensionMismatch,
  ImageTooSmall,
  InjectedStreamExhausted,
  InvalidDraw,
  InvalidGeometry,
  PairingError,
  Io,
  Internal,
};

const char* to_string(ErrorCode code);

// Process exit status for a failure of this kind: 1 usage, 2 data/format,
// 3 internal invariant violation.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace srinterp
