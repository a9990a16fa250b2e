#pragma once

#include "fanoqc/ifunction.hpp"
#include "fanoqc/laurent.hpp"
#include "fanoqc/rational.hpp"
#include "fanoqc/target.hpp"

#include <map>
#include <set>
#include <utility>
#include <vector>

namespace fanoqc {

/* Canonical name of one invariant <H^{a_1} psi^{k_1}, ..., H^{a_p} psi^{k_p}>_d:
 * the degree plus the sorted multiset of (a_i, k_i) pairs.  The value is
 * symmetric under permutation of the pairs, so sorting loses nothing. */
struct InvariantKey {
    int d = 0;
    std::vector<std::pair<int, int>> ins; // (H-power, psi-power), sorted

    static InvariantKey canonical(int d, std::vector<std::pair<int, int>> ins);
    int points() const { return static_cast<int>(ins.size()); }
    auto operator<=>(const InvariantKey&) const = default;
    std::string str() const;
};

/* Reconstruction of p-point descendant invariants with powers-of-H
 * insertions from one-point data, by induction on (points, degree).
 *
 * For spectator insertions H^{a_1}..H^{a_m} (variables t_1..t_m) and a
 * distinguished insertion H^b (variable t), the generating identity says
 * that after multiplying by t(t_1+t) * prod_i t_i, the sum of
 *
 *     sum_{1 in S subseteq [m]} sum_{e=0}^{d}
 *         [packages of degree d-e on slots (S, t)]
 *           joined through sum_c H^c (x) H^{r-c} / L, cupped with (H-et)^b,
 *         [packages of degree e on slots (-t, S^c)]
 *
 * plus companion terms has no strictly negative powers of t.  The single
 * term (S = [m], e = 0) carries the unknown degree-d p-point numbers:
 *
 *     UK = sum_{k_vec, k} prod_i t_i^{-(k_i+1)}
 *              * (t^{-k} + t_1 t^{-(k+1)}) * I(k_vec, k),
 *
 * every other term is computable from smaller layers ("known side").
 * Matching coefficients of each monomial with a negative t-power gives a
 * triangular system: at t_1-exponent 0 the values I(0, ., .) are read off
 * directly, and each next t_1-layer adds one earlier value.  Monomials on
 * the known side that match no unknown must carry coefficient zero; that is
 * asserted and doubles as a cross-check of the whole table stack.
 *
 * Mixed denominators are expanded in the region |t| < |t_j|.  In that
 * region the identity's j-indexed companion terms
 * (J_d(t_jhat, t_j) (x)_{H^b} J_0(-t_j, t), prefactor-cleared to
 * (t_1+t) prod_{i != j} t_i / (t_j - t) times a t-free package) have only
 * nonnegative t-powers, so they never reach the solver and are omitted. */
class MultipointEngine {
public:
    MultipointEngine(const OnePointTable& one, int max_points = 4);

    const Target& target() const { return tgt_; }
    int max_points() const { return max_points_; }

    /* Value of one invariant.  Dimension-violating keys return 0.  Degree 0
     * requires p >= 3 points (closed formula); p = 1 delegates to the
     * one-point table; p = 2 and up are solved on demand, filling every
     * smaller layer first.  Throws QueryError beyond max_points. */
    Rational npoint(const InvariantKey& key);
    Rational npoint(int d, const std::vector<std::pair<int, int>>& ins);

    /* Known side of the solve for spectators a[] and distinguished power b
     * at degree d: the strictly-negative-in-t part, a finite Laurent
     * polynomial in (t_1..t_m, t) with t last.  Triggers lower fills. */
    Laurent<Rational> known_side(int d, const std::vector<int>& a, int b);

    /* Solves every insertion tuple with `points` total insertions at degree
     * d (assumes, and if needed fills, all smaller layers).  The parallel
     * flag distributes tuples over OpenMP threads; results are identical to
     * the serial path. */
    void solve_layer(int points, int d, bool parallel = false);

    // Number of stored values (for reporting and cache round-trips).
    const std::map<InvariantKey, Rational>& store() const { return store_; }

    // Cache import support: bulk-adopt verified entries.
    void adopt(const std::map<InvariantKey, Rational>& entries);

private:
    struct Slot {
        int cls;  // H-power
        int var;  // variable index: 0..m-1 = t_1..t_m, m = t
        int sign; // +1 for +var, -1 for the -var slots
    };

    Rational inv_value(int d, const std::vector<std::pair<int, int>>& ins);
    Rational classical_value(const std::vector<std::pair<int, int>>& ins) const;
    Laurent<Rational> package(int arity, int degree, const std::vector<Slot>& slots);
    void solve_tuple(const std::vector<int>& classes, int d);
    std::vector<std::pair<InvariantKey, Rational>> solve_tuple_values(
        const std::vector<int>& classes, int d);

    const OnePointTable& one_;
    Target tgt_;
    int max_points_;
    std::map<InvariantKey, Rational> store_;
    std::set<std::pair<int, std::vector<int>>> solved_; // (d, class multiset)
    // Set while worker threads compute a layer; any store miss then is a
    // fill-order bug and must not trigger a concurrent write.
    bool frozen_ = false;
};

} // namespace fanoqc
