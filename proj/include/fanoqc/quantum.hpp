#pragma once

#include "fanoqc/rational.hpp"
#include "fanoqc/target.hpp"
#include "fanoqc/twopoint.hpp"

#include <map>
#include <vector>

namespace fanoqc {

/* Polynomial in the quantum parameter q, truncated at q^{d_max}.  All ring
 * arithmetic happens in the quotient by (q^{d_max+1}); coefficients below
 * the cut are exact.  For products H^a * H^b with a + b <= r + 1 the grading
 * c + f d = a + b keeps every contribution inside the window, so those
 * products are complete as stated; beyond that the quotient genuinely
 * truncates (three-point invariants are not bounded by d_max even though
 * two-point ones are). */
class QSeries {
public:
    QSeries(int d_max, Rational constant = Rational(0))
        : c_(static_cast<std::size_t>(d_max) + 1, Rational(0)) {
        c_[0] = std::move(constant);
    }

    int d_max() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](int d) const { return c_[static_cast<std::size_t>(d)]; }
    Rational& operator[](int d) { return c_[static_cast<std::size_t>(d)]; }
    bool is_zero() const;

    QSeries& operator+=(const QSeries& o);
    QSeries& operator-=(const QSeries& o);
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    QSeries& operator*=(const Rational& s);
    friend QSeries operator*(QSeries a, const Rational& s) { return a *= s; }
    friend bool operator==(const QSeries& a, const QSeries& b) { return a.c_ == b.c_; }

private:
    std::vector<Rational> c_;
};

// Column c holds the coordinates of H * H^c in the basis {1, H, ..., H^r}.
struct QuantumMatrix {
    int r = 0;
    int d_max = 0;
    std::vector<std::vector<QSeries>> e; // e[row][col]
};

/* The small quantum cohomology ring of the target on the basis of powers
 * of H.  Construction path:
 *
 *   1. mult_by_H: three-point numbers with one divisor insertion come from
 *      the two-point table, <H, H^c, H^b>_d = d <H^c, H^b>_d, spread over
 *      the basis with the dual-pairing weight 1/L;
 *   2. classical_in_quantum_basis: the quantum powers P_k = M^k e_0 are
 *      unitriangular over the classical basis (quantum corrections lower
 *      the H-degree by multiples of f), so each classical H^a is a
 *      q-polynomial combination sum_k beta[a][k] P_k;
 *   3. product(a, b) = sum_k beta[a][k] M^k e_b, exact in the quotient by
 *      q^{d_max+1}.
 *
 * Associativity of the result is not built in by this construction; it is
 * verified by the property suites, which makes it a real consistency check
 * on the two-point table. */
class QuantumRing {
public:
    explicit QuantumRing(TwoPointTable& table);

    const Target& target() const { return tgt_; }
    const QuantumMatrix& mult_by_H() const { return M_; }
    const std::vector<std::vector<QSeries>>& classical_in_quantum_basis() const { return beta_; }

    // H^a * H^b in the classical basis; memoized, symmetric.
    const std::vector<QSeries>& product(int a, int b);

    /* Curves of degree d through two generic points: <pt, pt>_d / L^2 in the
     * two-point normalization <H^r, H^r>_d.  Defined exactly when the
     * dimension count r = f d - 1 holds; throws QueryError otherwise. */
    Rational two_point_count(int d);

private:
    std::vector<QSeries> apply(const QuantumMatrix& m, const std::vector<QSeries>& v) const;

    Target tgt_;
    QuantumMatrix M_;
    std::vector<std::vector<QSeries>> beta_;      // beta_[a][k]
    std::vector<std::vector<QSeries>> pow_e0_;    // P_k = M^k e_0
    TwoPointTable& table_;
    std::map<std::pair<int, int>, std::vector<QSeries>> products_;
};

} // namespace fanoqc
