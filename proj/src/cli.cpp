#include "qjac/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qjac/characters.hpp"
#include "qjac/errors.hpp"
#include "qjac/injectivity.hpp"
#include "qjac/jacobi.hpp"
#include "qjac/modforms.hpp"
#include "qjac/sampling.hpp"
#include "qjac/theta.hpp"
#include "qjac/wronskian.hpp"

namespace qjac::cli {

using json = nlohmann::ordered_json;

namespace {

struct Failure
{
    std::string invariant;
    long m = 0;
    std::string exponent;
    std::string detail;
};

struct Outcome
{
    json report;
    std::optional<Failure> failure;
};

std::string rat(const Rational &x)
{
    return to_string(x);
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Results land in index
// order, so the output never depends on scheduling.
template <typename T>
std::vector<T> parallel_map(std::size_t n, unsigned jobs, const std::function<T(std::size_t)> &fn)
{
    std::vector<std::optional<T>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                slots[i] = fn(i);
            }
            catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    pool.clear();
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i])
            std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

Failure failure_from(const std::exception &e, long m)
{
    if (auto *v = dynamic_cast<const VerificationFailed *>(&e))
        return {v->invariant(), v->m(), v->exponent(), v->detail()};
    if (auto *q = dynamic_cast<const Error *>(&e))
        return {q->name(), m, "", q->what()};
    return {"internal_error", m, "", e.what()};
}

// ---------------------------------------------------------------- wronskian

struct WronskianRow
{
    json row;
    std::optional<Failure> failure;
};

Outcome verify_wronskian(const RunConfig &cfg)
{
    const Rational T = *cfg.q_trunc;
    auto rows = parallel_map<WronskianRow>(cfg.m_values.size(), cfg.jobs, [&](std::size_t i) {
        const int m = static_cast<int>(cfg.m_values[i]);
        WronskianRow out;
        try {
            const auto rep = eta_power_report(m, T);
            const Rational theta_ratio = wronskian_theta_ratio(m, T);
            const Rational ord_w2_expected = ratio(rep.lambda, 12);
            out.row = json{{"m", m},
                           {"lambda", rep.lambda},
                           {"ord_W", rat(rep.ord_W)},
                           {"ord_W_expected", rat(rep.ord_W_expected)},
                           {"ord_W2", rat(2 * rep.ord_W)},
                           {"ord_W2_expected", rat(ord_w2_expected)},
                           {"leading_coeff", rat(rep.leading_coeff)},
                           {"leading_expected", rat(rep.leading_expected)},
                           {"c2", rat(rep.c2)},
                           {"theta_matrix_ratio", rat(theta_ratio)},
                           {"residual_max_exponent_checked", rat(rep.residual_max_exponent_checked)},
                           {"residual_all_zero", rep.residual_all_zero},
                           {"pass", rep.pass()}};
            if (!rep.residual_all_zero)
                out.failure = Failure{"eta_power_identity", m, rat(*rep.offending_exponent),
                                      "residual coefficient " + rat(*rep.offending_coefficient)};
            else if (!rep.pass())
                out.failure = Failure{"wronskian_order_or_leading", m, rat(rep.ord_W),
                                      "order or leading coefficient mismatch"};
            if (cfg.dump_series) {
                std::filesystem::create_directories(*cfg.dump_series);
                std::ofstream f(std::filesystem::path(*cfg.dump_series) /
                                ("wronskian_m" + std::to_string(m) + ".txt"));
                write_text(f, modular_wronskian(m, T));
            }
        }
        catch (const std::exception &e) {
            out.row = json{{"m", m}, {"pass", false}};
            out.failure = failure_from(e, m);
        }
        return out;
    });
    Outcome o;
    o.report["q_trunc"] = rat(T);
    o.report["rows"] = json::array();
    for (auto &r : rows) {
        o.report["rows"].push_back(std::move(r.row));
        if (r.failure && !o.failure)
            o.failure = r.failure;
    }
    return o;
}

// ------------------------------------------------------------------- orders

struct OrdersResult
{
    json w_row;
    std::vector<json> omega_rows;
    std::optional<Failure> failure;
};

Outcome verify_orders(const RunConfig &cfg)
{
    const Rational T = *cfg.q_trunc;
    auto results = parallel_map<OrdersResult>(cfg.m_values.size(), cfg.jobs, [&](std::size_t i) {
        const int m = static_cast<int>(cfg.m_values[i]);
        OrdersResult out;
        try {
            const auto W = det_series(build_theta_matrix(m, T));
            if (W.is_zero())
                throw VerificationFailed("wronskian_order", m, rat(W.trunc()),
                                         "det W vanishes below the truncation; raise q_trunc");
            const auto W2 = mul(W, W);
            const Rational expected = ratio(static_cast<long>(m - 1) * (2L * m - 1), 12);
            const bool ok = *W2.ord() == expected &&
                            W.leading_coefficient() == expected_det_leading(m);
            out.w_row = json{{"m", m},
                             {"ord_W2", rat(*W2.ord())},
                             {"ord_W2_expected", rat(expected)},
                             {"leading_coeff", rat(W.leading_coefficient())},
                             {"leading_expected", rat(expected_det_leading(m))},
                             {"pass", ok}};
            if (!ok)
                out.failure = Failure{"wronskian_order", m, rat(*W2.ord()),
                                      "expected " + rat(expected)};
            for (const auto &rep : verify_omega_orders(m, T))
                out.omega_rows.push_back(json{{"m", m},
                                              {"nu", rep.nu},
                                              {"ord", rat(rep.ord)},
                                              {"ord_expected", rat(rep.ord_expected)},
                                              {"leading", rat(rep.leading)},
                                              {"leading_expected_abs", rat(rep.leading_expected)},
                                              {"sign", rep.sign},
                                              {"pass", rep.pass()}});
        }
        catch (const std::exception &e) {
            out.w_row = json{{"m", m}, {"pass", false}};
            out.failure = failure_from(e, m);
        }
        return out;
    });
    Outcome o;
    o.report["q_trunc"] = rat(T);
    o.report["rows"] = json::array();
    o.report["omega_rows"] = json::array();
    for (auto &r : results) {
        o.report["rows"].push_back(std::move(r.w_row));
        for (auto &row : r.omega_rows)
            o.report["omega_rows"].push_back(std::move(row));
        if (r.failure && !o.failure)
            o.failure = r.failure;
    }
    return o;
}

// --------------------------------------------------------------- characters

Outcome verify_characters(const RunConfig &cfg)
{
    const Rational T = *cfg.q_trunc;
    Outcome o;
    o.report["q_trunc"] = rat(T);
    o.report["rows"] = json::array();
    o.report["xi_rows"] = json::array();
    for (long mv : cfg.m_values) {
        const int m = static_cast<int>(mv);
        try {
            const auto diag = rho_T_diag(m);
            for (int mu = 1; mu < m; ++mu) {
                const auto &u = diag[static_cast<std::size_t>(mu - 1)];
                // theta*_{m,mu} starts at q^{mu^2/4m} < q^{m/4}.
                const Rational Tm = std::max<Rational>(T, Rational(m / 4 + 1));
                const auto seen = t_eigenvalue(theta_star(ThetaIndex(m, mu), Tm));
                const bool ok = seen == u;
                o.report["rows"].push_back(json{{"m", m},
                                                {"mu", mu},
                                                {"exponent", rat(u.value())},
                                                {"t_eigenvalue", rat(seen.value())},
                                                {"pass", ok}});
                if (!ok && !o.failure)
                    o.failure = Failure{"rho_T_diag", m, rat(u.value()),
                                        "theta* eigenvalue " + rat(seen.value())};
            }
            const auto xi = xi_of_T(m);
            const auto delta = delta_power_of_xi(m);
            const long lambda = static_cast<long>(m - 1) * (2L * m - 1);
            const bool closed = xi == UnityExponent(ratio(lambda, 12));
            const bool faulhaber = theta_order_sum(m) == ratio(lambda, 24);
            o.report["xi_rows"].push_back(json{{"m", m},
                                               {"xi", rat(xi.value())},
                                               {"delta_power", delta.delta_power()},
                                               {"closed_form", closed},
                                               {"faulhaber", faulhaber},
                                               {"pass", closed && faulhaber}});
            if (!(closed && faulhaber) && !o.failure)
                o.failure = Failure{"xi_of_T", m, rat(xi.value()),
                                    "closed form or Faulhaber identity fails"};
        }
        catch (const std::exception &e) {
            if (!o.failure)
                o.failure = failure_from(e, m);
        }
    }
    return o;
}

// --------------------------------------------------------------- identities

json check_row(const std::string &name, long m, long cases, bool pass)
{
    return json{{"check", name}, {"m", m}, {"cases", cases}, {"pass", pass}};
}

struct IdentityResult
{
    std::vector<json> rows;
    std::optional<Failure> failure;
};

IdentityResult identities_for_m(int m, const RunConfig &cfg)
{
    const Rational T = *cfg.q_trunc;
    IdentityResult out;
    SampleRng rng(cfg.seed + static_cast<std::uint64_t>(m));
    auto fail = [&](const std::string &inv, const std::string &exponent, const std::string &detail) {
        if (!out.failure)
            out.failure = Failure{inv, m, exponent, detail};
    };

    // Two-path Taylor identity.
    bool two_path = true;
    for (unsigned s = 0; s < cfg.samples; ++s) {
        const auto h = random_theta_components(rng, m, T);
        const auto phi = from_theta_components(h, T);
        for (unsigned nu = 1; nu < static_cast<unsigned>(m); ++nu) {
            const auto lhs = taylor_chi(phi, nu);
            const auto rhs = chi_star_via_theta(h, nu, T).scaled(taylor_normalization(m, nu));
            if (auto d = first_difference(lhs, rhs)) {
                two_path = false;
                fail("two_path_taylor", rat(*d), "nu=" + std::to_string(nu));
            }
        }
    }
    out.rows.push_back(check_row("two_path_taylor", m, cfg.samples, two_path));

    // Kernel triangularity on random and constructed forms.
    const int k = 3;
    bool triangular = true;
    long cases = 0;
    for (unsigned s = 0; s < cfg.samples; ++s) {
        const auto phi = from_theta_components(random_theta_components(rng, m, T), T);
        for (unsigned j = 1; j + 1 < static_cast<unsigned>(m); ++j) {
            ++cases;
            if (!kernel_equivalence(phi, k, m, j).consistent()) {
                triangular = false;
                fail("kernel_equivalence", "", "random form, j=" + std::to_string(j));
            }
        }
    }
    for (unsigned j = 1; j + 1 < static_cast<unsigned>(m); ++j) {
        std::vector<std::vector<PuiseuxSeries>> extra;
        for (unsigned r = j; r + 2 < static_cast<unsigned>(m); ++r) {
            std::vector<PuiseuxSeries> row;
            for (long mu = 1; mu < m; ++mu)
                row.push_back(random_series(rng, 1, ratio(mu * mu, 4L * m), T, 40));
            extra.push_back(std::move(row));
        }
        const Rational lam = ratio(static_cast<long>(m - 1) * (2L * m - 1), 24);
        const Rational start = Rational(to_int64(ceil(lam))) - lam;
        const auto g = random_series(rng, 1, start, T, 50) + PuiseuxSeries::monomial(1, start, T);
        const auto h = kernel_components(m, j, extra, g, T);
        const auto phi = from_theta_components(h, T);
        for (unsigned jj = 1; jj + 1 < static_cast<unsigned>(m); ++jj) {
            ++cases;
            const auto ke = kernel_equivalence(phi, k, m, jj);
            if (!ke.consistent() || (jj <= j && !ke.chi_all_zero)) {
                triangular = false;
                fail("kernel_equivalence", "", "constructed form, j=" + std::to_string(j));
            }
        }
    }
    out.rows.push_back(check_row("kernel_equivalence", m, cases, triangular));

    // Cramer identity, general and in the kernel case.
    bool cramer = true;
    try {
        for (unsigned s = 0; s < std::min(cfg.samples, 5u); ++s)
            cramer = cramer_reconstruction(m, random_theta_components(rng, m, T), T).pass() && cramer;
        std::vector<std::vector<PuiseuxSeries>> none;
        const auto g = PuiseuxSeries::constant(1, T);
        const auto h = kernel_components(m, static_cast<unsigned>(m - 2), none, g, T);
        const auto rep = cramer_reconstruction(m, h, T);
        cramer = cramer && rep.kernel_case && rep.pass();
    }
    catch (const std::exception &e) {
        cramer = false;
        if (!out.failure)
            out.failure = failure_from(e, m);
    }
    if (!cramer)
        fail("cramer_reconstruction", "", "identity failed");
    out.rows.push_back(check_row("cramer_reconstruction", m, std::min(cfg.samples, 5u) + 1, cramer));
    return out;
}

Outcome verify_identities(const RunConfig &cfg)
{
    const Rational T = *cfg.q_trunc;
    Outcome o;
    o.report["q_trunc"] = rat(T);
    o.report["seed"] = cfg.seed;
    o.report["rows"] = json::array();

    bool eigen = true;
    for (int twice = 1; twice <= 24; ++twice) {
        const auto f = eta_power(static_cast<unsigned>(twice), T);
        const auto d = modular_derivative(f, HalfIntWeight::from_twice(twice));
        if (!d.is_zero()) {
            eigen = false;
            if (!o.failure)
                o.failure = Failure{"eta_power_eigenform", 0, rat(*d.ord()),
                                    "D_{" + std::to_string(twice) + "/2}(eta^" +
                                        std::to_string(twice) + ") != 0"};
        }
    }
    o.report["rows"].push_back(check_row("eta_power_eigenform", 0, 24, eigen));

    auto results = parallel_map<IdentityResult>(cfg.m_values.size(), cfg.jobs, [&](std::size_t i) {
        const int m = static_cast<int>(cfg.m_values[i]);
        try {
            return identities_for_m(m, cfg);
        }
        catch (const std::exception &e) {
            IdentityResult r;
            r.rows.push_back(check_row("identities", m, 0, false));
            r.failure = failure_from(e, m);
            return r;
        }
    });
    for (auto &r : results) {
        for (auto &row : r.rows)
            o.report["rows"].push_back(std::move(row));
        if (r.failure && !o.failure)
            o.failure = r.failure;
    }

    if (cfg.jacobi_file) {
        std::ifstream in(*cfg.jacobi_file);
        if (!in)
            throw InvalidInput("cannot open Jacobi coefficient file " + *cfg.jacobi_file);
        std::stringstream buf;
        buf << in.rdbuf();
        const auto phi = read_jacobi_text(buf.str(), cfg.weak ? Holomorphy::weak : Holomorphy::strict);
        const int m = phi.index_m();
        json file;
        file["k"] = phi.weight_k();
        file["m"] = m;
        file["N"] = phi.level_N();
        file["trunc"] = rat(phi.n_trunc());
        file["terms"] = phi.coeffs().size();
        if (m >= 2) {
            const auto h = theta_components(phi);
            const auto back = from_theta_components(h, phi.n_trunc());
            const bool roundtrip = back == to_two_var(phi).refined(back.base_denom());
            file["roundtrip"] = roundtrip;
            file["theta_components"] = json::array();
            for (int mu = 1; mu < m; ++mu)
                file["theta_components"].push_back(to_display(h.h(mu)));
            if (!roundtrip && !o.failure)
                o.failure = Failure{"theta_roundtrip", m, "", "from_theta_components differs"};
            file["kernel"] = json::array();
            const auto two = to_two_var(phi);
            for (unsigned j = 1; j + 1 < static_cast<unsigned>(m); ++j) {
                const auto ke = kernel_equivalence(two, phi.weight_k(), m, j);
                file["kernel"].push_back(json{{"j", j},
                                              {"xi_all_zero", ke.xi_all_zero},
                                              {"chi_all_zero", ke.chi_all_zero},
                                              {"pass", ke.consistent()}});
                if (!ke.consistent() && !o.failure)
                    o.failure = Failure{"kernel_equivalence", m, "", "ingested form"};
            }
        }
        o.report["jacobi_file"] = file;
    }
    return o;
}

// ---------------------------------------------------------- classify, sweep

json verdict_json(const CaseVerdict &v)
{
    json flags = json::array();
    for (const auto &f : v.discrepancy_flags)
        flags.push_back(f);
    return json{{"k", v.k},
                {"m", v.m},
                {"N", v.N},
                {"part_i", v.part_i},
                {"part_ii", v.part_ii},
                {"part_iii", v.part_iii},
                {"s", v.s},
                {"r", v.r},
                {"beta", v.beta},
                {"lambda", v.lambda},
                {"window_ok", v.window_ok},
                {"congruence_details", v.congruence_details},
                {"discrepancy_flags", flags}};
}

Outcome classify_cmd(const RunConfig &cfg)
{
    Outcome o;
    o.report["label"] = "conditions check";
    o.report["rows"] = json::array();
    for (long k : cfg.k_values)
        for (long m : cfg.m_values)
            for (long N : cfg.N_values) {
                const auto v = classify(CaseInput(static_cast<int>(k), static_cast<int>(m), N), cfg.part_i_r);
                o.report["rows"].push_back(verdict_json(v));
                if (v.any() && !v.window_ok && !o.failure)
                    o.failure = Failure{"window_check", m, "", "accepted case violates the window"};
            }
    return o;
}

Outcome sweep_cmd(const RunConfig &cfg)
{
    Outcome o;
    o.report["label"] = "conditions check";
    o.report["rows"] = json::array();
    long accepted = 0, window_failures = 0;
    std::vector<long> ks;
    for (long k : cfg.k_values)
        if (k >= 3 && k % 2 != 0)
            ks.push_back(k);
    for (long k : ks) {
        std::vector<long> ms = cfg.m_values;
        if (ms.empty())
            for (long m = k + 1; m <= k + 20; ++m)
                ms.push_back(m);
        for (long m : ms) {
            if (m < 3)
                continue;
            for (long N : cfg.N_values) {
                const auto v = classify(CaseInput(static_cast<int>(k), static_cast<int>(m), N), cfg.part_i_r);
                o.report["rows"].push_back(verdict_json(v));
                if (v.any()) {
                    ++accepted;
                    if (!v.window_ok) {
                        ++window_failures;
                        if (!o.failure)
                            o.failure = Failure{"window_check", m, "", "k=" + std::to_string(k)};
                    }
                }
            }
        }
    }

    long part_iii_cases = 0;
    bool part_iii_ok = true;
    for (int m = 5; m <= 99; m += 2) {
        ++part_iii_cases;
        if (!congruence_check(TheoremPart::iii, 3, m).holds ||
            !congruence_check(TheoremPart::ii, 3, m).holds) {
            part_iii_ok = false;
            if (!o.failure)
                o.failure = Failure{"congruence", m, "", "congruence fails"};
        }
    }

    json discrepancies = json::array();
    for (int m = 4; m <= 1000; ++m) {
        const auto ni = nonintegrality_check(m);
        if (ni.discrepancy)
            discrepancies.push_back(json{{"m", m}, {"value", rat(ni.value)},
                                         {"note", "(m-2)(m-1)(2m-3)/m is an integer"}});
    }
    o.report["summary"] = json{{"accepted_cases", accepted},
                               {"window_failures", window_failures},
                               {"congruence_cases_odd_m_le_99", part_iii_cases},
                               {"congruences_hold", part_iii_ok}};
    o.report["discrepancies"] = discrepancies;
    return o;
}

// ---------------------------------------------------------------- rendering

std::string scalar_text(const json &v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (const auto &x : v)
            s += (s.empty() ? "" : ";") + scalar_text(x);
        return s;
    }
    return v.dump();
}

std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

bool is_table(const json &v)
{
    return v.is_array() && !v.empty() && v.front().is_object();
}

std::string render_csv(const json &report)
{
    std::ostringstream os;
    bool first_section = true;
    for (const auto &[name, value] : report.items()) {
        if (!is_table(value))
            continue;
        if (!first_section)
            os << '\n';
        first_section = false;
        std::vector<std::string> cols;
        for (const auto &[key, _] : value.front().items())
            cols.push_back(key);
        for (std::size_t i = 0; i < cols.size(); ++i)
            os << (i ? "," : "") << cols[i];
        os << '\n';
        for (const auto &row : value) {
            for (std::size_t i = 0; i < cols.size(); ++i)
                os << (i ? "," : "") << csv_field(row.contains(cols[i]) ? scalar_text(row[cols[i]]) : "");
            os << '\n';
        }
    }
    return os.str();
}

std::string render_text(const json &report)
{
    std::ostringstream os;
    for (const auto &[name, value] : report.items()) {
        if (is_table(value)) {
            os << name << ":\n";
            for (const auto &row : value) {
                os << " ";
                for (const auto &[key, v] : row.items())
                    os << ' ' << key << '=' << scalar_text(v);
                os << '\n';
            }
        }
        else if (value.is_object()) {
            os << name << ":\n";
            for (const auto &[key, v] : value.items())
                os << "  " << key << '=' << scalar_text(v) << '\n';
        }
        else {
            os << name << ": " << scalar_text(value) << '\n';
        }
    }
    return os.str();
}

std::string extension(Format f)
{
    switch (f) {
    case Format::json:
        return "json";
    case Format::csv:
        return "csv";
    case Format::text:
        return "txt";
    }
    return "out";
}

json failure_json(const Failure &f)
{
    return json{{"status", "FAIL"},
                {"invariant", f.invariant},
                {"m", f.m},
                {"exponent", f.exponent},
                {"detail", f.detail}};
}

} // namespace

Command parse_command(const std::string &name)
{
    static const std::pair<const char *, Command> table[] = {
        {"verify-wronskian", Command::verify_wronskian},
        {"verify-orders", Command::verify_orders},
        {"verify-characters", Command::verify_characters},
        {"verify-identities", Command::verify_identities},
        {"classify", Command::classify},
        {"sweep", Command::sweep},
    };
    for (const auto &[n, c] : table)
        if (name == n)
            return c;
    throw InvalidInput("unknown command '" + name + "'");
}

std::string command_name(Command c)
{
    switch (c) {
    case Command::verify_wronskian:
        return "verify-wronskian";
    case Command::verify_orders:
        return "verify-orders";
    case Command::verify_characters:
        return "verify-characters";
    case Command::verify_identities:
        return "verify-identities";
    case Command::classify:
        return "classify";
    case Command::sweep:
        return "sweep";
    }
    return "unknown";
}

Format parse_format(const std::string &name)
{
    if (name == "json")
        return Format::json;
    if (name == "csv")
        return Format::csv;
    if (name == "text")
        return Format::text;
    throw InvalidInput("unknown format '" + name + "'");
}

std::vector<long> parse_range(const std::string &text)
{
    std::vector<long> out;
    std::stringstream ss(text);
    std::string part;
    auto to_long = [&](const std::string &s) {
        const Rational x = parse_rational(s);
        if (x.get_den() != 1)
            throw InvalidInput("range bound '" + s + "' is not an integer");
        return to_int64(x.get_num());
    };
    while (std::getline(ss, part, ',')) {
        if (part.empty())
            throw InvalidInput("empty item in range '" + text + "'");
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_long(part));
            continue;
        }
        const long lo = to_long(part.substr(0, dots));
        const long hi = to_long(part.substr(dots + 2));
        if (hi < lo)
            throw InvalidInput("empty range '" + part + "'");
        for (long v = lo; v <= hi; ++v)
            out.push_back(v);
    }
    if (out.empty())
        throw InvalidInput("empty range '" + text + "'");
    return out;
}

RunConfig normalize(RunConfig c)
{
    auto default_m = [&](long lo, long hi) {
        if (c.m_values.empty())
            for (long m = lo; m <= hi; ++m)
                c.m_values.push_back(m);
    };
    auto default_trunc = [&](long t) {
        if (!c.q_trunc)
            c.q_trunc = Rational(t);
    };
    switch (c.command) {
    case Command::verify_wronskian:
        default_m(2, 8);
        default_trunc(40);
        break;
    case Command::verify_orders:
        default_m(2, 10);
        default_trunc(8);
        break;
    case Command::verify_characters:
        default_m(2, 50);
        default_trunc(4);
        break;
    case Command::verify_identities:
        default_m(3, 5);
        default_trunc(20);
        break;
    case Command::classify:
        if (c.k_values.empty() || c.m_values.empty())
            throw InvalidInput("classify needs --k and --m");
        if (c.N_values.empty())
            c.N_values = {1};
        break;
    case Command::sweep:
        if (c.k_values.empty())
            for (long k = 3; k <= 21; k += 2)
                c.k_values.push_back(k);
        if (c.N_values.empty())
            c.N_values = {1, 6, 4};
        break;
    }
    if (c.q_trunc && *c.q_trunc <= 0)
        throw InvalidInput("q_trunc must be positive");
    if (c.jobs == 0)
        throw InvalidInput("--jobs must be at least 1");
    const bool needs_m = c.command != Command::sweep;
    if (needs_m && c.m_values.empty())
        throw InvalidInput("m range is empty");
    const long min_m = c.command == Command::verify_identities ? 3 : 2;
    const long max_m = c.command == Command::verify_characters ? 1000 : 20;
    if (c.command != Command::classify && c.command != Command::sweep)
        for (long m : c.m_values)
            if (m < min_m || m > max_m)
                throw InvalidInput("m=" + std::to_string(m) + " outside the supported range " +
                                   std::to_string(min_m) + ".." + std::to_string(max_m));
    return c;
}

int run(const RunConfig &raw, std::ostream &out, std::ostream &err)
{
    Outcome o;
    RunConfig cfg;
    try {
        cfg = normalize(raw);
        switch (cfg.command) {
        case Command::verify_wronskian:
            o = verify_wronskian(cfg);
            break;
        case Command::verify_orders:
            o = verify_orders(cfg);
            break;
        case Command::verify_characters:
            o = verify_characters(cfg);
            break;
        case Command::verify_identities:
            o = verify_identities(cfg);
            break;
        case Command::classify:
            o = classify_cmd(cfg);
            break;
        case Command::sweep:
            o = sweep_cmd(cfg);
            break;
        }
    }
    catch (const std::exception &e) {
        const auto f = failure_from(e, 0);
        err << failure_json(f).dump() << '\n';
        return 2;
    }

    json report;
    report["schema_version"] = schema_version;
    report["command"] = command_name(cfg.command);
    report["status"] = o.failure ? "FAIL" : "PASS";
    for (auto &[k, v] : o.report.items())
        report[k] = v;
    if (o.failure)
        report["failure"] = failure_json(*o.failure);

    std::string body;
    switch (cfg.format) {
    case Format::json:
        body = report.dump(2) + "\n";
        break;
    case Format::csv:
        body = render_csv(report);
        break;
    case Format::text:
        body = render_text(report);
        break;
    }

    std::optional<std::filesystem::path> dest;
    if (cfg.output)
        dest = *cfg.output;
    else if (const char *dir = std::getenv(output_dir_env); dir && *dir)
        dest = std::filesystem::path(dir) / (command_name(cfg.command) + "." + extension(cfg.format));
    if (dest) {
        if (dest->has_parent_path())
            std::filesystem::create_directories(dest->parent_path());
        std::ofstream f(*dest, std::ios::binary);
        if (!f) {
            err << failure_json({"output", 0, "", "cannot write " + dest->string()}).dump() << '\n';
            return 2;
        }
        f << body;
    }
    else {
        out << body;
    }

    if (o.failure) {
        err << failure_json(*o.failure).dump() << '\n';
        return 1;
    }
    return 0;
}

} // namespace qjac::cli
