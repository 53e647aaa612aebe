#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scpqca
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (files, schemas, parameters).
class InputError : public Error
{
public:
  using Error::Error;
};

/// A ratio whose denominator is zero, e.g. the consistency of a rule that matches no case.
class UndefinedRatioError : public Error
{
public:
  using Error::Error;
};

/// Syntax error in a pathway expression; `position` is a 0-based character offset.
class ParseError : public InputError
{
public:
  ParseError( std::size_t position, const std::string& message )
      : InputError( "at position " + std::to_string( position ) + ": " + message ), position_( position )
  {
  }

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// Neither necessary literals nor selected rules: there is nothing to report.
class VacuousSolutionError : public Error
{
public:
  using Error::Error;
};

} // namespace scpqca
