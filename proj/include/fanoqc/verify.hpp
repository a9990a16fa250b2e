#pragma once

#include "fanoqc/multipoint.hpp"
#include "fanoqc/quantum.hpp"
#include "fanoqc/target.hpp"

#include <string>
#include <vector>

namespace fanoqc {

struct CheckResult {
    std::string name;
    long checks = 0;
    bool ok = true;
    std::string detail{}; // first counterexample: indices plus both values

    void fail(const std::string& what) {
        if (ok) {
            ok = false;
            detail = what;
        }
    }
};

struct VerifyReport {
    std::string target_name;
    std::vector<CheckResult> results;

    bool all_ok() const;
    long total_checks() const;
};

/* Every supported target with ambient dimension <= n_max and hypersurface
 * degrees >= 2, ordered by (n, codimension, degrees), with the projective
 * spaces first.  A degree factor of 1 only re-embeds a smaller target, so
 * the grid skips it. */
std::vector<Target> fano_grid(int n_max);

struct VerifyOptions {
    bool quantum = true; // ring property suites on top of the table identities
    int multipoint = 0;  // 0 = off; >= 2 enables reconstruction oracles up to that many points
    int max_degree = -1; // -1 = the target's d_max
    bool parallel = false;
};

/* Runs every exact check suite on one target, for all degrees up to the
 * bound: the two-point identity suites, the matrix-path equivalence, the
 * quantum ring laws (commutativity, associativity over all triples, grading,
 * Frobenius symmetry, and the closed ring shape for projective space), and
 * optionally the multipoint reconstruction oracles (two-point equality,
 * and the string/dilaton/divisor equations with descendants at three
 * points, plus the four-point divisor equation when the bound allows). */
VerifyReport verify_target(const Target& target, const VerifyOptions& opt = {});

} // namespace fanoqc
