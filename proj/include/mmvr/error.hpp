#pragma once

#include <stdexcept>
#include <string>

namespace mmvr {

// Base of every error raised by the library. Callers that only care about
// "something went wrong" catch this one.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
  using Error::Error;
};

class ShapeError : public Error {
public:
  using Error::Error;
};

class DegenerateGeometry : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

// A link whose rate is zero: delays are undefined.
class InfeasibleLink : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace mmvr
