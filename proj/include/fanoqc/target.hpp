#pragma once

#include <string>
#include <vector>

namespace fanoqc {

/* A smooth complete intersection X of hypersurfaces of degrees l_1..l_m in
 * P^n, or P^n itself when the degree list is empty.  Everything downstream
 * is controlled by four derived constants:
 *
 *   r     = n - m           dimension of X; H^0..H^r span the relevant ring
 *   f     = n+1 - sum(l_i)  index of X; degree d curve classes carry weight
 *                           f*d in every dimension count
 *   L     = prod(l_i)       degree of X in P^n, the top intersection number
 *                           of H; L = 1 for projective space
 *   d_max = floor((r+1)/f)  the last curve degree with nonzero two-point
 *                           numbers: a + b <= 2r and a + b = r + f*d - 1
 *                           force f*d <= r + 1
 */
struct Target {
    int n = 0;
    std::vector<int> degrees;
    int r = 0;
    int f = 0;
    long L = 1;
    int d_max = 0;

    // Stable identifier for cache files, e.g. "n6;l5;r5;f2;L5".
    std::string fingerprint() const;
};

// Human name: "P^4" or "X(2,3) in P^6".
std::string describe(const Target& target);

/* Derives the constants and enforces the supported range: f >= 2 (index-one
 * and Calabi-Yau cases need a coordinate change our closed forms do not
 * cover) and r >= 3 for genuine complete intersections, r >= 2 for
 * projective space.  Degree factors l_i = 1 are accepted: they re-embed the
 * same variety and are occasionally useful in tests.  Throws TargetError. */
Target validate_target(int n, const std::vector<int>& degrees);

} // namespace fanoqc
