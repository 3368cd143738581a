#pragma once

#include <vector>

#include "qjac/rational.hpp"

namespace qjac {

/// A root of unity e(x) = exp(2 pi i x), kept as x reduced into [0, 1).
class UnityExponent
{
  public:
    UnityExponent() = default;
    explicit UnityExponent(const Rational &x) : value_(frac(x)) {}

    const Rational &value() const noexcept { return value_; }

    UnityExponent operator*(const UnityExponent &o) const { return UnityExponent(value_ + o.value_); }
    UnityExponent pow(long n) const { return UnityExponent(value_ * n); }
    friend bool operator==(const UnityExponent &, const UnityExponent &) = default;

  private:
    Rational value_;
};

/// A character of SL(2,Z): a power of delta, where delta(T) = e(1/12).
class GammaCharacter
{
  public:
    explicit GammaCharacter(long delta_power);

    int delta_power() const noexcept { return power_; }
    /// The value at T, i.e. e(delta_power / 12).
    UnityExponent at_T() const { return UnityExponent(ratio(power_, 12)); }
    friend bool operator==(const GammaCharacter &, const GammaCharacter &) = default;

  private:
    int power_ = 0;
};

/// mu^2 / 4m mod 1 for mu = 1..m-1: the diagonal of the T-action on the
/// congruent theta tuple.
std::vector<UnityExponent> rho_T_diag(int m);

/// 2 * sum_mu mu^2/4m mod 1: the square of det rho_m at T.
UnityExponent xi_of_T(int m);

/// (m-1)(2m-1) mod 12, checked against xi_of_T.
GammaCharacter delta_power_of_xi(int m);

/// sum_{mu=1}^{m-1} mu^2 / 4m, summed term by term.
Rational theta_order_sum(int m);

} // namespace qjac
