#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dtc
{

/// Arguments violate an operation's precondition (mismatched alphabets, bad indices, ...).
class precondition_error : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// A size guard (table bits, oracle node cap, retry budget) was exceeded.
class guard_error : public std::length_error
{
public:
  using std::length_error::length_error;
};

/// Malformed relation or DOT text. `line()` is 1-based, 0 when unknown.
class parse_error : public std::runtime_error
{
public:
  parse_error( std::size_t line, const std::string& what )
      : std::runtime_error( line == 0 ? what : "line " + std::to_string( line ) + ": " + what ),
        line_( line )
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace dtc
