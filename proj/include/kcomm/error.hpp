#pragma once

#include <stdexcept>
#include <string>

namespace kcomm {

/// Failure categories raised by the library. The CLI maps these onto exit codes.
enum class Errc {
  NoRootOfUnity,
  KNotInvertible,
  RootNotInRing,
  Singular,
  NotCoherent,
  NotConjugate,
  DegenerateBlock,
  KTooSmall,
  ScalarInput,
  EigenvalueOne,
  Precondition,
  Parse,
  Internal,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace kcomm
