#pragma once

#include <stdexcept>
#include <string>

namespace qjac {

// Every failure the library reports derives from Error so callers can catch
// one type and still see the specific kind via name().
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
    virtual const char *name() const noexcept = 0;
};

#define QJAC_DEFINE_ERROR(Type)                                                                    \
    class Type : public Error                                                                      \
    {                                                                                              \
      public:                                                                                      \
        using Error::Error;                                                                        \
        const char *name() const noexcept override { return #Type; }                               \
    }

QJAC_DEFINE_ERROR(DivisorIndistinguishableFromZero);
QJAC_DEFINE_ERROR(NotAnEigenvector);
QJAC_DEFINE_ERROR(InvariantViolation);
QJAC_DEFINE_ERROR(NotOdd);
QJAC_DEFINE_ERROR(EvenIndex);
QJAC_DEFINE_ERROR(InvalidInput);
QJAC_DEFINE_ERROR(ParityError);
QJAC_DEFINE_ERROR(ParseError);

#undef QJAC_DEFINE_ERROR

/// Raised by the verification drivers; carries the first offending location.
class VerificationFailed : public Error
{
  public:
    VerificationFailed(std::string invariant, int m, std::string exponent, std::string detail)
        : Error(invariant + " failed at m=" + std::to_string(m) + ", exponent " + exponent + ": " +
                detail),
          invariant_(std::move(invariant)), m_(m), exponent_(std::move(exponent)), detail_(std::move(detail))
    {
    }

    const char *name() const noexcept override { return "VerificationFailed"; }
    const std::string &invariant() const noexcept { return invariant_; }
    int m() const noexcept { return m_; }
    const std::string &exponent() const noexcept { return exponent_; }
    const std::string &detail() const noexcept { return detail_; }

  private:
    std::string invariant_;
    int m_;
    std::string exponent_;
    std::string detail_;
};

} // namespace qjac
