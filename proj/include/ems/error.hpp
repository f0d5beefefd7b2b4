#pragma once

#include <stdexcept>
#include <string>

namespace ems {

// Machine-readable error code plus human message. Codes are stable strings
// ("dimension", "degenerate-simplex", "not-general-position", ...) surfaced
// by the CLI.
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

  private:
    std::string code_;
};

}  // namespace ems
