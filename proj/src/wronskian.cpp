#include "qjac/wronskian.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "qjac/errors.hpp"
#include "qjac/modforms.hpp"
#include "qjac/theta.hpp"

namespace qjac {

SeriesMatrix::SeriesMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols)
{
}

SeriesMatrix SeriesMatrix::minor_matrix(std::size_t i, std::size_t j) const
{
    SeriesMatrix out(rows_ - 1, cols_ - 1);
    for (std::size_t r = 0, rr = 0; r < rows_; ++r) {
        if (r == i)
            continue;
        for (std::size_t c = 0, cc = 0; c < cols_; ++c) {
            if (c == j)
                continue;
            out.at(rr, cc++) = at(r, c);
        }
        ++rr;
    }
    return out;
}

SeriesMatrix SeriesMatrix::top_rows(std::size_t n) const
{
    SeriesMatrix out(n, cols_);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out.at(r, c) = at(r, c);
    return out;
}

Rational SeriesMatrix::max_trunc() const
{
    Rational t = entries_.empty() ? Rational(0) : entries_.front().trunc();
    for (const auto &e : entries_)
        t = std::max(t, e.trunc());
    return t;
}

SeriesMatrix multiply(const SeriesMatrix &a, const SeriesMatrix &b)
{
    if (a.cols() != b.rows())
        throw InvalidInput("matrix shapes do not match for multiplication");
    SeriesMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            PuiseuxSeries acc = mul(a.at(i, 0), b.at(0, j));
            for (std::size_t k = 1; k < a.cols(); ++k)
                acc = add(acc, mul(a.at(i, k), b.at(k, j)));
            out.at(i, j) = std::move(acc);
        }
    return out;
}

std::vector<PuiseuxSeries> apply(const SeriesMatrix &a, const std::vector<PuiseuxSeries> &v)
{
    if (a.cols() != v.size())
        throw InvalidInput("matrix and vector sizes do not match");
    std::vector<PuiseuxSeries> out;
    out.reserve(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        PuiseuxSeries acc = mul(a.at(i, 0), v[0]);
        for (std::size_t k = 1; k < a.cols(); ++k)
            acc = add(acc, mul(a.at(i, k), v[k]));
        out.push_back(std::move(acc));
    }
    return out;
}

namespace {

void require_index(int m)
{
    if (m < 2)
        throw InvalidInput("index m must be at least 2, got " + std::to_string(m));
}

// Determinants of the first k rows of A against every k-subset of columns,
// indexed by column bitmask. Each level expands along its last row.
std::vector<std::optional<PuiseuxSeries>> top_row_minors(const SeriesMatrix &A, std::size_t k)
{
    const std::size_t n = A.cols();
    if (n > 20)
        throw InvalidInput("matrix too wide for subset-memoised minors");
    const std::uint32_t full = (std::uint32_t{1} << n);
    std::vector<std::optional<PuiseuxSeries>> prev(full), cur(full);
    for (std::size_t c = 0; c < n; ++c)
        prev[std::uint32_t{1} << c] = A.at(0, c);
    for (std::size_t s = 2; s <= k; ++s) {
        std::fill(cur.begin(), cur.end(), std::nullopt);
        for (std::uint32_t mask = 0; mask < full; ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != s)
                continue;
            std::optional<PuiseuxSeries> acc;
            int pos = 0;
            for (std::size_t c = 0; c < n; ++c) {
                const std::uint32_t bit = std::uint32_t{1} << c;
                if (!(mask & bit))
                    continue;
                auto term = mul(A.at(s - 1, c), *prev[mask ^ bit]);
                if ((static_cast<int>(s - 1) + pos) % 2 != 0)
                    term = neg(term);
                acc = acc ? add(*acc, term) : std::move(term);
                ++pos;
            }
            cur[mask] = std::move(acc);
        }
        std::swap(prev, cur);
    }
    return prev;
}

PuiseuxSeries unit_like(const SeriesMatrix &M)
{
    return PuiseuxSeries::constant(1, M.max_trunc());
}

} // namespace

SeriesMatrix build_theta_matrix(int m, const Rational &q_trunc)
{
    require_index(m);
    const std::size_t n = static_cast<std::size_t>(m - 1);
    SeriesMatrix out(n, n);
    for (std::size_t mu = 0; mu < n; ++mu) {
        PuiseuxSeries entry = theta_star(ThetaIndex(m, static_cast<long>(mu + 1)), q_trunc);
        for (std::size_t j = 0; j < n; ++j) {
            if (j > 0)
                entry = theta_op(entry);
            out.at(j, mu) = entry;
        }
    }
    return out;
}

SeriesMatrix build_modular_derivative_matrix(int m, const Rational &q_trunc)
{
    require_index(m);
    const std::size_t n = static_cast<std::size_t>(m - 1);
    const HalfIntWeight base = HalfIntWeight::from_twice(3);
    SeriesMatrix out(n, n);
    for (std::size_t mu = 0; mu < n; ++mu) {
        PuiseuxSeries entry = theta_star(ThetaIndex(m, static_cast<long>(mu + 1)), q_trunc);
        for (std::size_t j = 0; j < n; ++j) {
            if (j > 0)
                entry = modular_derivative(entry, base.plus(2 * static_cast<int>(j - 1)));
            out.at(j, mu) = entry;
        }
    }
    return out;
}

PuiseuxSeries det_series(const SeriesMatrix &M)
{
    if (!M.square())
        throw InvalidInput("determinant of a non-square matrix");
    if (M.rows() == 0)
        return PuiseuxSeries::constant(1, 0);
    const auto minors = top_row_minors(M, M.rows());
    return *minors[(std::uint32_t{1} << M.cols()) - 1];
}

std::vector<PuiseuxSeries> kernel_vector(const SeriesMatrix &A)
{
    if (A.cols() != A.rows() + 1)
        throw InvalidInput("kernel_vector needs a p x (p+1) matrix");
    const std::size_t p = A.rows();
    const std::size_t n = A.cols();
    std::vector<PuiseuxSeries> out;
    out.reserve(n);
    if (p == 0) {
        out.push_back(unit_like(A));
        return out;
    }
    const auto minors = top_row_minors(A, p);
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::size_t c = 0; c < n; ++c) {
        auto v = *minors[full ^ (std::uint32_t{1} << c)];
        out.push_back((p + c) % 2 == 0 ? std::move(v) : neg(v));
    }
    return out;
}

std::vector<PuiseuxSeries> cofactors_last_row(const SeriesMatrix &M)
{
    if (!M.square() || M.rows() == 0)
        throw InvalidInput("cofactors need a non-empty square matrix");
    if (M.rows() == 1)
        return {unit_like(M)};
    return kernel_vector(M.top_rows(M.rows() - 1));
}

SeriesMatrix adjugate(const SeriesMatrix &M)
{
    if (!M.square() || M.rows() == 0)
        throw InvalidInput("adjugate needs a non-empty square matrix");
    const std::size_t n = M.rows();
    SeriesMatrix out(n, n);
    if (n == 1) {
        out.at(0, 0) = unit_like(M);
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto minor = det_series(M.minor_matrix(j, i));
            out.at(i, j) = (i + j) % 2 == 0 ? std::move(minor) : neg(minor);
        }
    return out;
}

PuiseuxSeries modular_wronskian(int m, const Rational &q_trunc)
{
    return det_series(build_modular_derivative_matrix(m, q_trunc));
}

Rational vandermonde(std::span<const Rational> nodes)
{
    Rational v = 1;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            v *= nodes[j] - nodes[i];
    return v;
}

std::vector<Rational> theta_orders(int m)
{
    require_index(m);
    std::vector<Rational> out;
    for (long mu = 1; mu < m; ++mu) {
        const Rational a = ratio(mu * mu, 4L * m);
        out.push_back(a);
    }
    return out;
}

Rational expected_det_leading(int m)
{
    const auto a = theta_orders(m);
    return factorial(static_cast<unsigned>(m - 1)) * vandermonde(a);
}

Rational expected_cofactor_leading(int m, int nu)
{
    auto a = theta_orders(m);
    a.erase(a.begin() + (nu - 1));
    return factorial(static_cast<unsigned>(m - 1)) / nu * vandermonde(a);
}

Rational expected_cofactor_order(int m, int nu)
{
    Rational sum = 0;
    for (const auto &a : theta_orders(m))
        sum += a;
    return sum - ratio(static_cast<long>(nu) * nu, 4L * m);
}

WronskianReport eta_power_report(int m, const Rational &q_trunc)
{
    require_index(m);
    WronskianReport rep;
    rep.index_m = m;
    rep.lambda = static_cast<long>(m - 1) * (2L * m - 1);
    const Rational shift = ratio(rep.lambda, 24);
    // Dividing by eta^lambda costs lambda/24 of certified precision.
    const Rational work_trunc = q_trunc + shift + 2;

    const auto W = modular_wronskian(m, work_trunc);
    if (W.is_zero())
        throw VerificationFailed("wronskian_nonzero", m, to_string(W.trunc()),
                                 "W(F) vanishes below its truncation");
    rep.ord_W = *W.ord();
    rep.ord_W_expected = shift;
    rep.leading_coeff = W.leading_coefficient();
    rep.leading_expected = expected_det_leading(m);

    const auto quotient = div(W, eta_power(static_cast<unsigned>(rep.lambda), work_trunc));
    rep.residual_max_exponent_checked = quotient.trunc();
    rep.c2 = quotient.coefficient(0);
    rep.residual_all_zero = true;
    for (const auto &[e, c] : quotient.terms()) {
        if (e != 0) {
            rep.residual_all_zero = false;
            rep.offending_exponent = e;
            rep.offending_coefficient = c;
            break;
        }
    }
    return rep;
}

WronskianReport verify_eta_power(int m, const Rational &q_trunc)
{
    auto rep = eta_power_report(m, q_trunc);
    if (!rep.residual_all_zero)
        throw VerificationFailed("eta_power_identity", m, to_string(*rep.offending_exponent),
                                 "residual coefficient " + to_string(*rep.offending_coefficient));
    if (rep.c2 == 0)
        throw VerificationFailed("eta_power_identity", m, "0/1", "constant term c2 is zero");
    if (rep.ord_W != rep.ord_W_expected)
        throw VerificationFailed("wronskian_order", m, to_string(rep.ord_W),
                                 "expected " + to_string(rep.ord_W_expected));
    if (rep.leading_coeff != rep.leading_expected)
        throw VerificationFailed("wronskian_leading_coefficient", m, to_string(rep.ord_W),
                                 "got " + to_string(rep.leading_coeff) + ", expected " +
                                     to_string(rep.leading_expected));
    return rep;
}

Rational wronskian_theta_ratio(int m, const Rational &q_trunc)
{
    const auto W = modular_wronskian(m, q_trunc);
    const auto D = det_series(build_theta_matrix(m, q_trunc));
    if (W.is_zero() || D.is_zero())
        throw VerificationFailed("wronskian_ratio", m, to_string(q_trunc),
                                 "a determinant vanishes below the truncation");
    const Rational c = W.leading_coefficient() / D.leading_coefficient();
    if (auto diff = first_difference(W, D.scaled(c)))
        throw VerificationFailed("wronskian_ratio", m, to_string(*diff),
                                 "W(F) is not a constant multiple of det W");
    return c;
}

std::vector<OmegaOrderReport> verify_omega_orders(int m, const Rational &q_trunc)
{
    require_index(m);
    const auto omega = cofactors_last_row(build_theta_matrix(m, q_trunc));
    std::vector<OmegaOrderReport> out;
    for (int nu = 1; nu < m; ++nu) {
        const auto &w = omega[static_cast<std::size_t>(nu - 1)];
        OmegaOrderReport rep;
        rep.nu = nu;
        rep.ord_expected = expected_cofactor_order(m, nu);
        rep.leading_expected = expected_cofactor_leading(m, nu);
        if (w.is_zero())
            throw VerificationFailed("omega_order", m, to_string(w.trunc()),
                                     "omega_" + std::to_string(nu) +
                                         " vanishes below the truncation; raise q_trunc");
        rep.ord = *w.ord();
        rep.leading = w.leading_coefficient();
        if (rep.leading == rep.leading_expected)
            rep.sign = 1;
        else if (rep.leading == -rep.leading_expected)
            rep.sign = -1;
        if (rep.ord != rep.ord_expected)
            throw VerificationFailed("omega_order", m, to_string(rep.ord),
                                     "omega_" + std::to_string(nu) + " expected order " +
                                         to_string(rep.ord_expected));
        if (rep.sign == 0)
            throw VerificationFailed("omega_leading_coefficient", m, to_string(rep.ord),
                                     "omega_" + std::to_string(nu) + " leading " +
                                         to_string(rep.leading) + ", expected +-" +
                                         to_string(rep.leading_expected));
        out.push_back(std::move(rep));
    }
    return out;
}

CramerReport cramer_reconstruction(int m, const ThetaComponents &h, const Rational &q_trunc)
{
    if (m < 3)
        throw InvalidInput("cramer_reconstruction needs m >= 3");
    if (h.index_m != m)
        throw InvalidInput("theta components have the wrong index");
    CramerReport rep;
    rep.index_m = m;

    const auto W = build_theta_matrix(m, q_trunc);
    const auto chi = apply(W, h.components);
    const auto det = det_series(W);
    const auto adj = adjugate(W);
    const auto rhs = apply(adj, chi);

    rep.cramer_identity = true;
    rep.certified_trunc = q_trunc;
    for (int mu = 1; mu < m; ++mu) {
        const auto lhs = mul(det, h.h(mu));
        const auto &r = rhs[static_cast<std::size_t>(mu - 1)];
        rep.certified_trunc = std::min<Rational>({rep.certified_trunc, lhs.trunc(), r.trunc()});
        if (auto diff = first_difference(lhs, r)) {
            rep.cramer_identity = false;
            rep.failing_exponent = *diff;
            throw VerificationFailed("cramer_identity", m, to_string(*diff),
                                     "det(W) h_" + std::to_string(mu) + " != (adj(W) chi*)_" +
                                         std::to_string(mu));
        }
    }

    rep.kernel_case = std::all_of(chi.begin(), chi.end() - 1, [](const auto &c) { return c.is_zero(); });
    if (!rep.kernel_case)
        return rep;

    const long lambda = static_cast<long>(m - 1) * (2L * m - 1);
    const auto eta_l = eta_power(static_cast<unsigned>(lambda), q_trunc + ratio(lambda, 24) + 2);
    const auto omega = cofactors_last_row(W);
    std::vector<PuiseuxSeries> lhs, prod;
    for (int mu = 1; mu < m; ++mu) {
        lhs.push_back(mul(eta_l, h.h(mu)));
        prod.push_back(mul(omega[static_cast<std::size_t>(mu - 1)], chi.back()));
    }
    // Fix the constant from the first nonzero product, then check all mu.
    std::optional<Rational> c;
    for (std::size_t i = 0; i < prod.size() && !c; ++i) {
        if (prod[i].is_zero())
            continue;
        const auto e = *prod[i].ord();
        if (e < lhs[i].trunc())
            c = lhs[i].coefficient(e) / prod[i].leading_coefficient();
    }
    const Rational constant = c.value_or(0);
    rep.proportional = true;
    for (std::size_t i = 0; i < prod.size(); ++i) {
        if (auto diff = first_difference(lhs[i], prod[i].scaled(constant))) {
            rep.proportional = false;
            rep.failing_exponent = *diff;
            throw VerificationFailed("omega_proportionality", m, to_string(*diff),
                                     "eta^lambda h_" + std::to_string(i + 1) +
                                         " is not c * omega * chi*_{m-1}");
        }
    }
    rep.constant = constant;
    return rep;
}

ThetaComponents kernel_components(int m, unsigned j, const std::vector<std::vector<PuiseuxSeries>> &extra_rows,
                                  const PuiseuxSeries &multiplier, const Rational &q_trunc)
{
    if (m < 3)
        throw InvalidInput("kernel_components needs m >= 3");
    const std::size_t n = static_cast<std::size_t>(m - 1);
    if (j > n - 1 || extra_rows.size() != n - 1 - j)
        throw InvalidInput("kernel_components needs j <= m-2 and exactly m-2-j extra rows");
    const auto W = build_theta_matrix(m, q_trunc);
    SeriesMatrix A(n - 1, n);
    for (std::size_t r = 0; r < j; ++r)
        for (std::size_t c = 0; c < n; ++c)
            A.at(r, c) = W.at(r, c);
    for (std::size_t r = 0; r < extra_rows.size(); ++r) {
        if (extra_rows[r].size() != n)
            throw InvalidInput("extra row has the wrong length");
        for (std::size_t c = 0; c < n; ++c)
            A.at(j + r, c) = extra_rows[r][c];
    }
    std::vector<PuiseuxSeries> h;
    for (auto &v : kernel_vector(A))
        h.push_back(mul(multiplier, v));
    return ThetaComponents(m, std::move(h));
}

} // namespace qjac
