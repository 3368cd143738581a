#include "qjac/injectivity.hpp"

#include "qjac/errors.hpp"

namespace qjac {

bool is_squarefree(long n)
{
    if (n < 1)
        throw InvalidInput("squarefree test needs a positive integer");
    for (long p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        n /= p;
        if (n % p == 0)
            return false;
    }
    return true;
}

CaseInput::CaseInput(int k, int m, long N) : k_(k), m_(m), N_(N)
{
    if (k < 3 || k % 2 == 0)
        throw InvalidInput("k must be an odd integer >= 3, got " + std::to_string(k));
    if (m < 3)
        throw InvalidInput("m must be at least 3, got " + std::to_string(m));
    if (N < 1)
        throw InvalidInput("N must be positive, got " + std::to_string(N));
    squarefree_ = is_squarefree(N);
}

WindowCheck window_check(int k, int m, int s, int r)
{
    WindowCheck w;
    const Rational diff(m - k);
    const Rational half_r = ratio(r, 2);
    w.upper = Rational(s) + half_r + 8 - ratio(12, m);
    w.lower = Rational(2 + s) + half_r - ratio(3, m);
    w.upper.canonicalize();
    w.lower.canonicalize();
    w.applicable = m > 3;
    w.upper_ok = w.upper > diff;
    w.lower_ok = diff > w.lower;
    w.choice_ok = diff == Rational(2 + s) + half_r;
    w.details = to_string(w.upper) + (w.upper_ok ? " > " : " <= ") + std::to_string(m - k) +
                (w.lower_ok ? " > " : " <= ") + to_string(w.lower) +
                (w.choice_ok ? "; m-k = 2+s+r/2" : "; m-k != 2+s+r/2") +
                (w.applicable ? "" : "; window only derived for m > 3");
    return w;
}

NonIntegrality nonintegrality_check(int m)
{
    if (m <= 3)
        throw InvalidInput("nonintegrality check needs m > 3, got " + std::to_string(m));
    NonIntegrality out;
    out.m = m;
    const long mm = m;
    out.value = ratio((mm - 2) * (mm - 1) * (2 * mm - 3), mm);
    out.value.canonicalize();
    out.is_integer = out.value.get_den() == 1;
    out.discrepancy = out.is_integer;
    return out;
}

CongruenceReport congruence_check(TheoremPart part, int k, int m)
{
    CongruenceReport rep;
    rep.part = part;
    rep.k = k;
    rep.m = m;
    rep.s = m - k - 2;
    if (rep.s < 0)
        throw InvalidInput("s = m-k-2 is negative for k=" + std::to_string(k) +
                           ", m=" + std::to_string(m));
    if (rep.s % 2 != 0)
        throw ParityError("s = m-k-2 = " + std::to_string(rep.s) +
                          " is odd; an auxiliary form of odd weight s cannot exist");
    rep.total = static_cast<long>(k) + 2L * m + rep.s;
    const long modulus = part == TheoremPart::ii ? 6 : 12;
    rep.residue = ((rep.total % modulus) + modulus) % modulus;
    if (part == TheoremPart::ii) {
        rep.holds = rep.residue == 1;
        rep.details = "k+2m+s = " + std::to_string(rep.total) + " = " + std::to_string(rep.residue) +
                      " (mod 6)" + (rep.holds ? ", need 1: ok" : ", need 1: fails");
    }
    else {
        rep.holds = rep.residue != 3;
        rep.details = "k+2m+s = " + std::to_string(rep.total) + " = " + std::to_string(rep.residue) +
                      " (mod 12)" + (rep.holds ? ", need != 3: ok" : ", need != 3: fails");
    }
    return rep;
}

CaseVerdict classify(const CaseInput &c, std::optional<int> part_i_r)
{
    CaseVerdict v;
    v.k = c.k();
    v.m = c.m();
    v.N = c.N();
    const int gap = c.m() - c.k();
    const bool m_odd = c.m() % 2 != 0;
    v.part_i = gap >= 4;
    v.part_ii = c.squarefree_N() && m_odd && gap >= 2;
    v.part_iii = c.N() == 1 && m_odd && gap >= 2;

    if (v.part_i) {
        v.r = part_i_r.value_or(2 * (gap - 2));
        if (v.r <= 2 || v.r % 2 != 0)
            throw InvalidInput("part (i) needs an even r > 2, got " + std::to_string(v.r));
        v.s = gap - 2 - v.r / 2;
        if (v.s < 0)
            throw InvalidInput("r = " + std::to_string(v.r) + " leaves s = m-k-2-r/2 negative");
    }
    else {
        v.r = 0;
        v.s = gap - 2;
    }
    v.beta = 2L * (c.k() + 2L * c.m() + v.s - 4);
    v.lambda = static_cast<long>(c.m() - 1) * (2L * c.m() - 1);

    const auto w = window_check(c.k(), c.m(), v.s, v.r);
    v.window_ok = w.holds() && w.choice_ok;

    std::string cong;
    if (v.part_ii || v.part_iii) {
        // (ii)/(iii) use r = 0, s = m-k-2 regardless of the part (i) choice.
        if (v.part_ii)
            cong += "part ii: " + congruence_check(TheoremPart::ii, c.k(), c.m()).details;
        if (v.part_iii)
            cong += std::string(cong.empty() ? "" : "; ") +
                    "part iii: " + congruence_check(TheoremPart::iii, c.k(), c.m()).details;
    }
    v.congruence_details = cong;

    if (c.m() > 3) {
        const auto ni = nonintegrality_check(c.m());
        if (ni.discrepancy)
            v.discrepancy_flags.push_back("(m-2)(m-1)(2m-3)/m = " + to_string(ni.value) +
                                          " is an integer at m=" + std::to_string(c.m()));
    }
    return v;
}

} // namespace qjac
