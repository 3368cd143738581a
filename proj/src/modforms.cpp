#include "qjac/modforms.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <vector>

#include "qjac/errors.hpp"

namespace qjac {

namespace {

// Largest integer n with n < t, i.e. the number of integer exponents 0..n
// certified by a series truncated at t.
std::int64_t last_integer_below(const Rational &t)
{
    return to_int64(ceil(t)) - 1;
}

// prod_{n=1}^{top} (1 - q^n) as dense integer coefficients 0..top.
std::vector<Integer> euler_product(std::int64_t top)
{
    std::vector<Integer> c(static_cast<std::size_t>(top + 1));
    c[0] = 1;
    for (std::int64_t n = 1; n <= top; ++n)
        for (std::int64_t i = top; i >= n; --i)
            c[i] -= c[i - n];
    return c;
}

} // namespace

PuiseuxSeries eta(const Rational &trunc)
{
    return eta_power(1, trunc);
}

PuiseuxSeries eta_power(unsigned n, const Rational &trunc)
{
    if (n == 0)
        throw InvalidInput("eta_power needs a positive exponent");
    const Rational shift = ratio(n, 24);
    // Integer-exponent part needed: q^k with k + n/24 < trunc.
    const std::int64_t top = last_integer_below(trunc - shift);
    SeriesBuilder out(24, trunc);
    if (top < 0)
        return std::move(out).build();

    const auto base = euler_product(top);
    // Dense power of the Euler product, truncated to degree top.
    std::vector<Integer> acc(base.size());
    acc[0] = 1;
    std::vector<Integer> sq = base;
    auto mul_dense = [top](const std::vector<Integer> &x, const std::vector<Integer> &y) {
        std::vector<Integer> z(x.size());
        for (std::int64_t i = 0; i <= top; ++i) {
            if (x[i] == 0)
                continue;
            for (std::int64_t j = 0; i + j <= top; ++j)
                if (y[j] != 0)
                    z[i + j] += x[i] * y[j];
        }
        return z;
    };
    for (unsigned e = n; e > 0; e >>= 1u) {
        if (e & 1u)
            acc = mul_dense(acc, sq);
        if (e > 1)
            sq = mul_dense(sq, sq);
    }
    for (std::int64_t k = 0; k <= top; ++k)
        out.add_key(24 * k + static_cast<std::int64_t>(n), Rational(acc[k]));
    return std::move(out).build();
}

namespace {

std::mutex e2_mutex;
std::map<std::int64_t, PuiseuxSeries> e2_cache;

PuiseuxSeries e2_integer_bound(std::int64_t top)
{
    // sigma_1 by sieve.
    std::vector<Integer> sigma(static_cast<std::size_t>(std::max<std::int64_t>(top, 0) + 1));
    for (std::int64_t d = 1; d <= top; ++d)
        for (std::int64_t k = d; k <= top; k += d)
            sigma[k] += d;
    SeriesBuilder out(1, Rational(top + 1));
    out.add_key(0, 1);
    for (std::int64_t k = 1; k <= top; ++k)
        out.add_key(k, Rational(-24 * sigma[k]));
    return std::move(out).build();
}

} // namespace

PuiseuxSeries e2(const Rational &trunc)
{
    const std::int64_t top = last_integer_below(trunc);
    if (top < 0)
        return PuiseuxSeries::zero(trunc);
    PuiseuxSeries full;
    {
        std::lock_guard lock(e2_mutex);
        auto it = e2_cache.lower_bound(top);
        if (it == e2_cache.end())
            it = e2_cache.emplace(top, e2_integer_bound(top)).first;
        full = it->second;
    }
    // full is certified below an integer >= top + 1 >= trunc.
    PuiseuxSeries out = full.truncated(trunc);
    return out;
}

PuiseuxSeries modular_derivative(const PuiseuxSeries &f, HalfIntWeight kappa)
{
    auto derivative = theta_op(f);
    if (kappa.twice_weight == 0)
        return derivative;
    // E2 must be known to relative precision trunc(f) - ord(f).
    const Rational needed = std::max<Rational>(f.trunc() - f.ord_bound(), Rational(1));
    const auto correction = mul(e2(needed), f).scaled(ratio(kappa.twice_weight, 24));
    return sub(derivative, correction);
}

PuiseuxSeries iterated_derivative(const PuiseuxSeries &f, HalfIntWeight kappa, unsigned n)
{
    PuiseuxSeries out = f;
    for (unsigned i = 0; i < n; ++i)
        out = modular_derivative(out, kappa.plus(2 * static_cast<int>(i)));
    return out;
}

} // namespace qjac
