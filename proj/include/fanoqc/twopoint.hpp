#pragma once

#include "fanoqc/ifunction.hpp"
#include "fanoqc/laurent.hpp"
#include "fanoqc/rational.hpp"
#include "fanoqc/target.hpp"

#include <string>
#include <vector>

namespace fanoqc {

/* Two-point descendant invariants <H^a, H^b psi^k>_d, computed by downward
 * induction on the t^{-1}-power of the tail
 *
 *   T(t) = <H^a (H-dt)^b / (-t(-t-psi))>_d
 *        + sum_{e=1}^{d-1} sum_{c'=0}^r (1/L)
 *            * <H^a, H^{c'}/(t-psi)>_{d-e}
 *            * <H^{r-c'} (H-et)^b / (-t(-t-psi))>_e :
 *
 * the total  <H^a, H^b/(t-psi)>_d + T(t)  is a polynomial in t, so each
 * negative coefficient of T is minus an invariant.  The moduli dimension
 * pins the psi-power: a + b + k = r + f d - 1, so each (d, a, b) carries at
 * most one nonzero value and the per-degree table is a dense
 * (r+1) x (r+1) matrix.  Every other negative coefficient of T must vanish;
 * the fill asserts that (a nontrivial witness of the underlying geometry,
 * not a tautology).
 *
 * Degree 0 is not stored: there is no two-pointed degree-0 moduli space,
 * and classical pairings are assembled where they are needed. */
class TwoPointTable {
public:
    explicit TwoPointTable(const OnePointTable& one);

    const Target& target() const { return tgt_; }
    const OnePointTable& one_point_table() const { return one_; }

    // The unique psi-power k with <H^a, H^b psi^k>_d != 0 possible;
    // negative when (a, b, d) is out of dimension entirely.
    int forced_psi(int a, int b, int d) const { return tgt_.r + tgt_.f * d - 1 - a - b; }

    // Fills all degrees <= d (ascending; each degree reads only lower ones).
    // The parallel flag switches the per-degree loop over (a, b) to OpenMP;
    // results are identical to the serial path and tests assert that.
    void fill_to(int d, bool parallel = false);

    int filled_to() const { return static_cast<int>(val_.size()) - 1; }

    // <H^a, H^b psi^k>_d. Fills tables as needed. d = 0 returns 0 (see above).
    Rational two_point(int a, int b, int k, int d);

    // Read-only lookup; requires fill_to(d) to have happened.
    Rational lookup(int a, int b, int k, int d) const;

    // Dense value matrix [a][b] at degree d (1 <= d <= filled_to()).
    const std::vector<std::vector<Rational>>& matrix(int d) const;

    /* One-point package evaluated at +-t:
     *   sign -1:  A_i^e(t) = sum_c (-1)^c t^{-(c+2)} <H^i psi^c>_e
     *   sign +1:  same without the alternating sign.
     * At most one term survives the dimension filter; i > r gives 0. */
    Laurent<Rational> descendant_package(int i, int e, int sign) const;

    // The tail T(t) above, a finite Laurent polynomial in t.  Requires
    // degrees < d to be filled.
    Laurent<Rational> formula_one_tail(int a, int b, int d) const;

private:
    void fill_degree(int d, bool parallel);
    Rational extract_entry(int a, int b, int d, std::string* err) const;

    const OnePointTable& one_;
    Target tgt_;
    // val_[d][a][b] = <H^a, H^b psi^{forced_psi(a,b,d)}>_d for d >= 1;
    // val_[0] is a placeholder so indices align with degrees.
    std::vector<std::vector<std::vector<Rational>>> val_;
};

/* Multiplication by (H + d*t) on coefficient vectors in the fixed
 * t-grading: the (r+1) x (r+1) matrix with d on the diagonal and 1 on the
 * subdiagonal. */
struct ShiftMatrix {
    int r = 0;
    int d = 0;

    std::vector<std::vector<Integer>> entries() const;
    std::vector<Rational> apply(const std::vector<Rational>& v) const;
    std::vector<Rational> apply_pow(int b, std::vector<Rational> v) const;
};

ShiftMatrix shift_matrix(const Target& target, int d);

/* The matrix form of the same recursion: column b of M(d) is
 *
 *   M(d)_{*,b} = -S(d)^b v(d) - sum_{e=1}^{d-1} M(d-e) S(e)^b v(e),
 *
 * followed by zeroing every entry whose psi-index c = f d + r - 1 - a - b
 * is negative (rows are indexed by r - a).  Entries encode invariants via
 *
 *   <H^a, H^b psi^c>_d = L * (-1)^{c-1} * M(d)[r-a][b],
 *
 * a sign convention calibrated once at d = 1 against the tail engine and
 * then property-tested for every degree; `calibration` records it together
 * with the index convention, since the two plausible readings of the
 * recursion's own normalization disagree and only this one matches the
 * tail engine. */
struct MixedMatrix {
    int d = 0;
    std::vector<std::vector<Rational>> m; // [r - a][b]
    std::string calibration;
};

MixedMatrix mixed_matrix(const OnePointTable& one, int d,
                         const std::vector<MixedMatrix>& lower);

// The invariant value encoded by entry (r-a, b); zero in the masked region.
Rational mixed_extract(const Target& target, const MixedMatrix& mm, int a, int b);

struct IdentityReport {
    bool ok = true;
    long checks = 0;
    std::string first_violation;

    void fail(const std::string& what) {
        if (ok) {
            ok = false;
            first_violation = what;
        }
    }
};

/* Exact checks at degree d: the removal identities for a second insertion
 * of codimension 0 (<H^a,1> = 0), codimension 1 (<H^a,psi> = -<H^a>,
 * <H^a,H> = d<H^a>) and the three codimension-2 identities, plus unmixed
 * symmetry.  All sides are computed from this module's own tables. */
IdentityReport identity_suite(TwoPointTable& table, int d);

} // namespace fanoqc
