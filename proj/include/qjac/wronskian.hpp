#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qjac/jacobi.hpp"
#include "qjac/qseries.hpp"

namespace qjac {

/// Dense rows x cols matrix of truncated series.
class SeriesMatrix
{
  public:
    SeriesMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    const PuiseuxSeries &at(std::size_t i, std::size_t j) const { return entries_.at(i * cols_ + j); }
    PuiseuxSeries &at(std::size_t i, std::size_t j) { return entries_.at(i * cols_ + j); }

    /// Copy without row i and column j.
    SeriesMatrix minor_matrix(std::size_t i, std::size_t j) const;
    /// Copy of the first n rows.
    SeriesMatrix top_rows(std::size_t n) const;
    /// Largest truncation among the entries.
    Rational max_trunc() const;

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<PuiseuxSeries> entries_;
};

SeriesMatrix multiply(const SeriesMatrix &a, const SeriesMatrix &b);
std::vector<PuiseuxSeries> apply(const SeriesMatrix &a, const std::vector<PuiseuxSeries> &v);

/// Entry (j, mu) = (q d/dq)^(j-1) theta*_{m,mu}, j, mu = 1..m-1.
SeriesMatrix build_theta_matrix(int m, const Rational &q_trunc);
/// Entry (j, mu) = D^(j-1) theta*_{m,mu} with the modular derivative
/// starting at weight 3/2.
SeriesMatrix build_modular_derivative_matrix(int m, const Rational &q_trunc);

/// Exact determinant by Laplace expansion with memoised minors.
PuiseuxSeries det_series(const SeriesMatrix &M);

/// For a p x (p+1) matrix A, the signed maximal minors
/// v_c = (-1)^(p+c) det(A without column c), so that A v = 0.
std::vector<PuiseuxSeries> kernel_vector(const SeriesMatrix &A);

/// Signed cofactors of the last row, omega_nu = (-1)^(n+nu) minor(n, nu); this
/// is det(M) times the last column of M^-1.
std::vector<PuiseuxSeries> cofactors_last_row(const SeriesMatrix &M);

/// adj(M)_{ij} = (-1)^(i+j) minor(j, i).
SeriesMatrix adjugate(const SeriesMatrix &M);

/// W(F) = det(F, DF, ..., D^(m-2) F) for F = (theta*_{m,1}, ..., theta*_{m,m-1}).
PuiseuxSeries modular_wronskian(int m, const Rational &q_trunc);

/// prod_{i<j} (a_j - a_i).
Rational vandermonde(std::span<const Rational> nodes);

/// mu^2 / 4m for mu = 1..m-1: the orders of the theta* columns.
std::vector<Rational> theta_orders(int m);

/// Expected leading coefficient (m-1)! V(1^2/4m, ..., (m-1)^2/4m) of det W.
Rational expected_det_leading(int m);
/// Expected |leading coefficient| (m-1)!/nu V(..., omitting nu^2/4m, ...) of omega_nu.
Rational expected_cofactor_leading(int m, int nu);
/// sum_mu mu^2/4m - nu^2/4m.
Rational expected_cofactor_order(int m, int nu);

struct WronskianReport
{
    int index_m = 0;
    long lambda = 0;
    Rational ord_W;
    Rational ord_W_expected;
    Rational leading_coeff;
    Rational leading_expected;
    Rational c2;
    Rational residual_max_exponent_checked;
    bool residual_all_zero = false;
    // First non-constant term of W / eta^lambda, when there is one.
    std::optional<Rational> offending_exponent;
    std::optional<Rational> offending_coefficient;

    bool pass() const
    {
        return residual_all_zero && c2 != 0 && ord_W == ord_W_expected &&
               leading_coeff == leading_expected;
    }
};

/// Computes W(F) / eta^((m-1)(2m-1)) with enough precision to certify every
/// exponent below q_trunc, without throwing on a failed identity.
WronskianReport eta_power_report(int m, const Rational &q_trunc);
/// As eta_power_report, but throws VerificationFailed unless the report passes.
WronskianReport verify_eta_power(int m, const Rational &q_trunc);

/// The constant c with W(F) = c det(theta matrix), checked coefficientwise.
/// Throws VerificationFailed if no such constant exists below the truncation.
Rational wronskian_theta_ratio(int m, const Rational &q_trunc);

struct OmegaOrderReport
{
    int nu = 0;
    Rational ord;
    Rational ord_expected;
    Rational leading;
    Rational leading_expected; // up to sign
    int sign = 0;              // leading / leading_expected, +1 or -1 when ok
    bool pass() const { return ord == ord_expected && (sign == 1 || sign == -1); }
};

/// Orders and leading coefficients of the last-row cofactors; throws
/// VerificationFailed on the first mismatch.
std::vector<OmegaOrderReport> verify_omega_orders(int m, const Rational &q_trunc);

struct CramerReport
{
    int index_m = 0;
    Rational certified_trunc;
    bool cramer_identity = false; // det(W) h_mu = sum_nu adj(W)_{mu,nu} chi*_nu for all mu
    bool kernel_case = false;     // chi*_1 = ... = chi*_{m-2} = 0
    std::optional<bool> proportional;       // eta^lambda h_mu = c omega_mu chi*_{m-1}, only in the kernel case
    std::optional<Rational> constant;       // that c
    std::optional<Rational> failing_exponent;
    bool pass() const { return cramer_identity && (!kernel_case || proportional.value_or(false)); }
};

/// Throws VerificationFailed when an identity fails.
CramerReport cramer_reconstruction(int m, const ThetaComponents &h, const Rational &q_trunc);

/// Components h with chi*_1 = ... = chi*_j = 0: the signed maximal minors of
/// the first j rows of the theta matrix stacked on the given extra rows
/// (m-2-j rows of m-1 series each), multiplied by `multiplier`.
ThetaComponents kernel_components(int m, unsigned j, const std::vector<std::vector<PuiseuxSeries>> &extra_rows,
                                  const PuiseuxSeries &multiplier, const Rational &q_trunc);

} // namespace qjac
