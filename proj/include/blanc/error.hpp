#ifndef BLANC_ERROR_HPP
#define BLANC_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blanc {

/// Failure categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
  kInvalidArgument = 1,
  kIo,
  kParse,
  kValidation,
  kDegenerateInput,
  kNoMaskableContent,
  kLength,
  kCapability,
  kBackend,
  kUndefinedCorrelation,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when a document yields zero masked events. Carries the skip
/// counters so callers can tell "all sentences guarded" from "all words short".
class NoMaskableContentError : public Error {
 public:
  NoMaskableContentError(const std::string& what, std::size_t guard_skips,
                         std::size_t overlength_skips)
      : Error(ErrorCode::kNoMaskableContent, what),
        guard_skips_(guard_skips),
        overlength_skips_(overlength_skips) {}
  std::size_t guard_skips() const noexcept { return guard_skips_; }
  std::size_t overlength_skips() const noexcept { return overlength_skips_; }

 private:
  std::size_t guard_skips_;
  std::size_t overlength_skips_;
};

}  // namespace blanc

#endif  // BLANC_ERROR_HPP
