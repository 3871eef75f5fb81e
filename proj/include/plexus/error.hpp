// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_ERROR_HPP
#define PLEXUS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

#include <fmt/format.h>

namespace plexus
{

// All library failures (invalid input, violated preconditions, inconsistent distributed
// data) are reported through this exception type.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

template <typename... Args>
[[noreturn]] void Fail(fmt::format_string<Args...> format, Args &&...args)
{
  throw Error(fmt::format(format, std::forward<Args>(args)...));
}

template <typename... Args>
void Require(bool condition, fmt::format_string<Args...> format, Args &&...args)
{
  if (!condition)
  {
    throw Error(fmt::format(format, std::forward<Args>(args)...));
  }
}

}  // namespace plexus

#endif  // PLEXUS_ERROR_HPP
