#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qjac/rational.hpp"

namespace qjac {

/// Truncated formal series in q with rational exponents and rational
/// coefficients.
///
/// Every exponent is an integer multiple of 1/base_denom(). The series is
/// certified correct for every exponent strictly below trunc(); nothing is
/// known at or above it. Zero coefficients are never stored.
///
/// Values are immutable once built; all arithmetic returns new series and
/// propagates the truncation pessimistically.
class PuiseuxSeries
{
  public:
    using Term = std::pair<Rational, Rational>; // (exponent, coefficient)

    /// The zero series with base denominator 1 and truncation 0.
    PuiseuxSeries();
    PuiseuxSeries(std::int64_t base_denom, Rational trunc);

    static PuiseuxSeries zero(const Rational &trunc, std::int64_t base_denom = 1);
    static PuiseuxSeries constant(const Rational &c, const Rational &trunc);
    /// c * q^e; the base denominator is the denominator of e.
    static PuiseuxSeries monomial(const Rational &c, const Rational &e, const Rational &trunc);
    /// Builds a series from explicit terms. Terms at or above trunc are dropped,
    /// repeated exponents accumulate.
    static PuiseuxSeries from_terms(std::int64_t base_denom, const Rational &trunc,
                                    const std::vector<Term> &terms);

    std::int64_t base_denom() const noexcept { return denom_; }
    const Rational &trunc() const noexcept { return trunc_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Coefficient at q^e (zero if absent). Throws InvalidInput if e >= trunc.
    Rational coefficient(const Rational &e) const;
    /// Minimum exponent, or nullopt (+infinity) if no term lies below trunc.
    std::optional<Rational> ord() const;
    /// Minimum exponent if any, else trunc: a lower bound on the true order.
    Rational ord_bound() const;
    /// Coefficient of the first nonzero term. Throws if the series is zero.
    Rational leading_coefficient() const;
    std::vector<Term> terms() const;

    /// Same series on the finer grid 1/d; d must be a multiple of base_denom().
    PuiseuxSeries refined(std::int64_t d) const;
    /// Drops everything at or above min(t, trunc()).
    PuiseuxSeries truncated(const Rational &t) const;
    PuiseuxSeries scaled(const Rational &c) const;
    /// Multiplication by the monomial q^e (exact, shifts trunc too).
    PuiseuxSeries shifted(const Rational &e) const;

    /// Exact structural equality: same terms and same trunc (base
    /// denominators may differ).
    friend bool operator==(const PuiseuxSeries &a, const PuiseuxSeries &b);

    // Raw access for the arithmetic kernels: keys are exponent * base_denom.
    const std::map<std::int64_t, Rational> &raw_terms() const noexcept { return terms_; }
    /// Smallest key that is not certified (i.e. ceil(trunc * base_denom)).
    std::int64_t key_limit() const;

  private:
    friend class SeriesBuilder;

    std::int64_t denom_ = 1;
    Rational trunc_;
    std::map<std::int64_t, Rational> terms_;
};

/// Accumulates terms on a fixed grid, then produces a canonical series.
class SeriesBuilder
{
  public:
    SeriesBuilder(std::int64_t base_denom, Rational trunc);
    /// Adds c * q^(key / base_denom); ignored when at or above trunc.
    void add_key(std::int64_t key, const Rational &c);
    void add(const Rational &exponent, const Rational &c);
    std::int64_t key_limit() const noexcept { return limit_; }
    PuiseuxSeries build() &&;

  private:
    PuiseuxSeries s_;
    std::int64_t limit_;
};

PuiseuxSeries add(const PuiseuxSeries &a, const PuiseuxSeries &b);
PuiseuxSeries sub(const PuiseuxSeries &a, const PuiseuxSeries &b);
PuiseuxSeries neg(const PuiseuxSeries &a);
PuiseuxSeries mul(const PuiseuxSeries &a, const PuiseuxSeries &b);
/// Puiseux long division; throws DivisorIndistinguishableFromZero.
PuiseuxSeries div(const PuiseuxSeries &a, const PuiseuxSeries &b);
/// a^n for n >= 1 by repeated squaring.
PuiseuxSeries pow(const PuiseuxSeries &a, unsigned n);
/// q d/dq, termwise c q^e -> (c e) q^e.
PuiseuxSeries theta_op(const PuiseuxSeries &a);
std::optional<Rational> ord_infty(const PuiseuxSeries &a);

/// True when a and b have identical coefficients below min(a.trunc, b.trunc).
bool agree(const PuiseuxSeries &a, const PuiseuxSeries &b);
/// First exponent below the common truncation where a and b differ.
std::optional<Rational> first_difference(const PuiseuxSeries &a, const PuiseuxSeries &b);

inline PuiseuxSeries operator+(const PuiseuxSeries &a, const PuiseuxSeries &b) { return add(a, b); }
inline PuiseuxSeries operator-(const PuiseuxSeries &a, const PuiseuxSeries &b) { return sub(a, b); }
inline PuiseuxSeries operator-(const PuiseuxSeries &a) { return neg(a); }
inline PuiseuxSeries operator*(const PuiseuxSeries &a, const PuiseuxSeries &b) { return mul(a, b); }
inline PuiseuxSeries operator/(const PuiseuxSeries &a, const PuiseuxSeries &b) { return div(a, b); }

// Text format:
//   D=<int> trunc=<num>/<den>
//   <coeff_num>/<coeff_den> <exp_num>/<exp_den>     (one line per term, ascending)
std::string to_text(const PuiseuxSeries &s);
PuiseuxSeries from_text(const std::string &text);
void write_text(std::ostream &os, const PuiseuxSeries &s);

/// Human-readable form for diagnostics, e.g. "q^(1/8) - 3*q^(9/8) + O(q^2)".
std::string to_display(const PuiseuxSeries &s, std::size_t max_terms = 8);

} // namespace qjac
