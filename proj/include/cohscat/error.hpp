// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cohscat {

// Error with a stable machine-readable code ("module.reason") next to the
// human-readable message. The CLI surfaces the code in its JSON error output,
// so codes are part of the interface and must not be renamed casually.
class Error : public std::runtime_error {
  public:
    Error(std::string code, std::string const& message)
        : std::runtime_error(message), code_(std::move(code))
    {
    }

    std::string const& code() const noexcept { return code_; }

  private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, std::string const& message)
{
    throw Error(std::move(code), message);
}

}  // namespace cohscat
