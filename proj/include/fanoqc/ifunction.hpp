#pragma once

#include "fanoqc/rational.hpp"
#include "fanoqc/target.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace fanoqc {

/* Expands the degree-d hypergeometric series
 *
 *   I_d = prod_{i=1}^m prod_{k=1}^{d l_i} (l_i H + k t)
 *         / prod_{k=1}^d (H + k t)^{n+1}
 *
 * over Q[H]/(H^{r+1}), using (H+kt)^{-(n+1)} =
 * sum_{j>=0} (-1)^j C(n+j, j) k^{-(n+1+j)} H^j t^{-(n+1+j)}.  The result is
 * homogeneous of total degree -d*f (H and t both count 1), so H^j can only
 * ride on t^{-(d f + j)}; the expansion asserts exactly that and returns the
 * vector v(d) with v(d)_j = [H^j t^{-(d f + j)}] I_d.  Throws
 * ConsistencyError if homogeneity fails (that would be a bug, not input). */
std::vector<Rational> i_function_vector(const Target& target, int d);

/* Memoized per-degree one-point data for a fixed target.
 *
 * The vector v(d) carries every one-point number of degree d: for the
 * insertion H^i psi^c the moduli dimension forces i + c = r + d f - 2, and
 * on the nose  <H^i psi^c>_d = L * v(d)_{r-i}  at that unique c. */
class OnePointTable {
public:
    explicit OnePointTable(Target target) : tgt_(std::move(target)) {}

    const Target& target() const { return tgt_; }

    // v(d), computed on first use; safe for concurrent readers.
    const std::vector<Rational>& v(int d) const;

    // Copy of every materialized degree, for cache export.
    std::map<int, std::vector<Rational>> snapshot() const;

    // <H^i psi^c>_d; zero when the dimension constraint fails, throws on
    // d <= 0 (there is no one-pointed degree-0 moduli space) or bad i, c.
    Rational one_point(int i, int c, int d) const;

private:
    Target tgt_;
    mutable std::mutex mu_;
    mutable std::map<int, std::vector<Rational>> memo_;
};

} // namespace fanoqc
