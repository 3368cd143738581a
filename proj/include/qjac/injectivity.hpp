#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qjac/rational.hpp"

namespace qjac {

bool is_squarefree(long n);

/// Hypotheses of the injectivity theorem: k odd >= 3, m >= 3, N >= 1.
class CaseInput
{
  public:
    /// Throws InvalidInput if k is even or below 3, m < 3 or N < 1.
    CaseInput(int k, int m, long N);

    int k() const noexcept { return k_; }
    int m() const noexcept { return m_; }
    long N() const noexcept { return N_; }
    bool squarefree_N() const noexcept { return squarefree_; }

  private:
    int k_;
    int m_;
    long N_;
    bool squarefree_;
};

struct WindowCheck
{
    bool applicable = false; // the window is only derived for m > 3
    bool upper_ok = false;   // s + r/2 + 8 - 12/m > m - k
    bool lower_ok = false;   // m - k > 2 + s + r/2 - 3/m
    bool choice_ok = false;  // m - k = 2 + s + r/2
    Rational upper;
    Rational lower;
    bool holds() const noexcept { return applicable && upper_ok && lower_ok; }
    std::string details;
};

/// Evaluates both strict inequalities exactly, and whether (s, r) is the
/// balanced choice m - k = 2 + s + r/2.
WindowCheck window_check(int k, int m, int s, int r);

struct NonIntegrality
{
    int m = 0;
    Rational value; // (m-2)(m-1)(2m-3)/m
    bool is_integer = false;
    /// Raised when the value is an integer, contradicting the non-integrality
    /// claim for m > 3. Informational only.
    bool discrepancy = false;
};

NonIntegrality nonintegrality_check(int m);

enum class TheoremPart
{
    ii,
    iii,
};

struct CongruenceReport
{
    TheoremPart part = TheoremPart::ii;
    int k = 0;
    int m = 0;
    int s = 0;
    long total = 0;   // k + 2m + s, equal to 3m - 2
    long residue = 0; // total mod 6 (part ii) or mod 12 (part iii)
    bool holds = false;
    std::string details;
};

/// Throws InvalidInput if s = m - k - 2 < 0, ParityError if s is odd.
CongruenceReport congruence_check(TheoremPart part, int k, int m);

struct CaseVerdict
{
    int k = 0;
    int m = 0;
    long N = 0;
    bool part_i = false;
    bool part_ii = false;
    bool part_iii = false;
    int s = 0;
    int r = 0;
    long beta = 0;   // 2(k + 2m + s - 4)
    long lambda = 0; // (m-1)(2m-1)
    bool window_ok = false;
    std::string congruence_details;
    std::vector<std::string> discrepancy_flags;
    bool any() const noexcept { return part_i || part_ii || part_iii; }
};

/// Which parts of the theorem apply, with the (s, r) choice used in the
/// argument. When part (i) applies it fixes s = 0 and r = 2(m-k-2), unless
/// part_i_r supplies another even r > 2 (then s = m-k-2-r/2 must be >= 0).
/// Otherwise r = 0 and s = m-k-2.
CaseVerdict classify(const CaseInput &c, std::optional<int> part_i_r = std::nullopt);

} // namespace qjac
