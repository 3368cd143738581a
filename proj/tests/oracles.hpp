#pragma once

// Brute-force reference computations. Nothing here calls the library's
// arithmetic kernels; they only read terms out and build results back.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "qjac/qseries.hpp"

namespace oracle {

using qjac::PuiseuxSeries;
using qjac::Rational;

using TermMap = std::map<Rational, Rational>;

inline TermMap terms_of(const PuiseuxSeries &s)
{
    TermMap out;
    for (const auto &[e, c] : s.terms())
        out[e] = c;
    return out;
}

inline Rational at(const TermMap &t, const Rational &e)
{
    auto it = t.find(e);
    return it == t.end() ? Rational(0) : it->second;
}

// Schoolbook product of the stored terms, no truncation handling.
inline TermMap naive_product(const PuiseuxSeries &a, const PuiseuxSeries &b)
{
    TermMap out;
    for (const auto &[ea, ca] : a.terms())
        for (const auto &[eb, cb] : b.terms())
            out[ea + eb] += ca * cb;
    return out;
}

// Coefficients of prod_{n>=1} (1 - q^n) below integer bound T via the
// pentagonal number theorem.
inline std::vector<long> pentagonal(long T)
{
    std::vector<long> c(static_cast<std::size_t>(T), 0);
    for (long k = -T; k <= T; ++k) {
        const long g = k * (3 * k - 1) / 2;
        if (g >= 0 && g < T)
            c[static_cast<std::size_t>(g)] += (k % 2 == 0) ? 1 : -1;
    }
    return c;
}

// Dense power of a polynomial with integer coefficients, truncated to size.
inline std::vector<Rational> dense_pow(const std::vector<long> &p, unsigned n, std::size_t size)
{
    std::vector<Rational> acc(size, 0);
    acc[0] = 1;
    for (unsigned i = 0; i < n; ++i) {
        std::vector<Rational> next(size, 0);
        for (std::size_t a = 0; a < size; ++a)
            if (acc[a] != 0)
                for (std::size_t b = 0; a + b < size && b < p.size(); ++b)
                    next[a + b] += acc[a] * p[b];
        acc = std::move(next);
    }
    return acc;
}

// eta^n = q^{n/24} prod (1-q^k)^n, coefficients at q^{n/24 + j} for j < size.
inline std::vector<Rational> eta_power_dense(unsigned n, std::size_t size)
{
    return dense_pow(pentagonal(static_cast<long>(size)), n, size);
}

inline long sigma1(long n)
{
    long s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0)
            s += d;
    return s;
}

inline Rational vandermonde(const std::vector<Rational> &a)
{
    Rational v = 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            v *= a[j] - a[i];
    return v;
}

inline Rational fact(unsigned n)
{
    Rational f = 1;
    for (unsigned i = 2; i <= n; ++i)
        f *= i;
    return f;
}

// Small deterministic generator for property tests.
class Gen
{
  public:
    explicit Gen(std::uint64_t seed) : e_(seed) {}
    long range(long lo, long hi) { return lo + static_cast<long>(e_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool chance(unsigned pct) { return e_() % 100 < pct; }
    Rational small_rational()
    {
        long p = 0;
        while (p == 0)
            p = range(-7, 7);
        Rational r(p, range(1, 4));
        r.canonicalize();
        return r;
    }
    // Sparse series on the 1/denom grid starting at `start`, below trunc.
    PuiseuxSeries series(std::int64_t denom, const Rational &start, const Rational &trunc, unsigned pct = 40)
    {
        std::vector<PuiseuxSeries::Term> t;
        Rational step(1, denom);
        for (Rational e = start; e < trunc; e += step)
            if (chance(pct))
                t.emplace_back(e, small_rational());
        return PuiseuxSeries::from_terms(denom, trunc, t);
    }

  private:
    std::mt19937_64 e_;
};

} // namespace oracle
