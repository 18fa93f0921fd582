#include "srinterp/error.hpp"

namespace srinterp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::UnsupportedMaxval: return "UnsupportedMaxval";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::ZeroFrames: return "ZeroFrames";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ImageTooSmall: return "ImageTooSmall";
    case ErrorCode::InjectedStreamExhausted: return "InjectedStreamExhausted";
    case ErrorCode::InvalidDraw: return "InvalidDraw";
    case ErrorCode::InvalidGeometry: return "InvalidGeometry";
    case ErrorCode::PairingError: return "PairingError";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return 1;
    case ErrorCode::Internal: return 3;
    default: return 2;
  }
}

}  // namespace srinterp
