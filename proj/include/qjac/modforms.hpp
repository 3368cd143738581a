#pragma once

#include "qjac/qseries.hpp"

namespace qjac {

/// A weight in (1/2)Z, stored as twice the weight.
struct HalfIntWeight
{
    int twice_weight = 0;

    static constexpr HalfIntWeight from_twice(int t) { return HalfIntWeight{t}; }
    Rational value() const { return ratio(twice_weight, 2); }
    /// Weight + integer_step (the modular derivative raises the weight by 2).
    HalfIntWeight plus(int integer_step) const { return {twice_weight + 2 * integer_step}; }
    friend bool operator==(HalfIntWeight, HalfIntWeight) = default;
};

/// q^(1/24) prod_{n>=1} (1 - q^n), expanded below trunc; base denominator 24.
PuiseuxSeries eta(const Rational &trunc);

/// eta^n computed directly from the product, n >= 1.
PuiseuxSeries eta_power(unsigned n, const Rational &trunc);

/// 1 - 24 sum sigma_1(n) q^n below trunc. Results are cached per integer
/// bound; the cache is safe to use from several threads.
PuiseuxSeries e2(const Rational &trunc);

/// theta_op(f) - (kappa/12) E2 f, at the truncation of f.
PuiseuxSeries modular_derivative(const PuiseuxSeries &f, HalfIntWeight kappa);

/// D_{kappa+2n-2} o ... o D_{kappa+2} o D_kappa applied to f; n = 0 returns f.
PuiseuxSeries iterated_derivative(const PuiseuxSeries &f, HalfIntWeight kappa, unsigned n);

} // namespace qjac
