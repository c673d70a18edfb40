#pragma once

#include <stdexcept>
#include <string>

namespace hsann {

/// Exception carrying a short machine-readable tag alongside the human
/// message.  Tags are stable strings ("invalid-annulus", "conditioning",
/// "inner-solve-failed", ...) used by the CLI to report numerical failures.
class Error : public std::runtime_error {
 public:
  Error(std::string tag, const std::string& message)
      : std::runtime_error(tag + ": " + message), tag_(std::move(tag)) {}

  const std::string& tag() const noexcept { return tag_; }

 private:
  std::string tag_;
};

[[noreturn]] inline void fail(const std::string& tag, const std::string& message) {
  throw Error(tag, message);
}

inline void require(bool cond, const std::string& tag, const std::string& message) {
  if (!cond) fail(tag, message);
}

}  // namespace hsann
