#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tropid {

  // Base class for every error raised by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class DimensionMismatch : public Error {
   public:
    using Error::Error;
  };

  class IndexOutOfRange : public Error {
   public:
    using Error::Error;
  };

  // A constructor or operation was called with inputs violating its
  // documented precondition. The message names the violated condition.
  class PreconditionFailed : public Error {
   public:
    using Error::Error;
  };

  // Both sides of a would-be identity expand to the same word.
  class NotAnIdentity : public Error {
   public:
    using Error::Error;
  };

  class ExpansionTooLarge : public Error {
   public:
    ExpansionTooLarge(boost::multiprecision::cpp_int length,
                      boost::multiprecision::cpp_int limit)
        : Error("expansion of length " + length.str()
                + " exceeds limit " + limit.str()),
          length_(std::move(length)) {}

    boost::multiprecision::cpp_int const& length() const noexcept {
      return length_;
    }

   private:
    boost::multiprecision::cpp_int length_;
  };

  // The supplied assignment evaluates both sides of an identity equally.
  class WitnessFailed : public Error {
   public:
    using Error::Error;
  };

  class OracleFailure : public Error {
   public:
    using Error::Error;
  };

  class FormatError : public Error {
   public:
    using Error::Error;
  };

}  // namespace tropid
