#pragma once

#include "fanoqc/rational.hpp"
#include "fanoqc/target.hpp"

#include <vector>

namespace fanoqc {

/* An element of Q[H]/(H^{r+1}): coeff[j] multiplies H^j.  Products truncate
 * eagerly at degree r, so every value stays inside the ring by construction.
 * The length is fixed at r+1; mixing classes of different ring dimension is
 * an error. */
class CohomClass {
public:
    explicit CohomClass(int r) : c_(static_cast<std::size_t>(r) + 1, Rational(0)) {}

    // H^j, or the zero class when j > r (j < 0 is an error).
    static CohomClass h_power(int r, int j);

    int dim() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](int j) const { return c_[static_cast<std::size_t>(j)]; }
    Rational& operator[](int j) { return c_[static_cast<std::size_t>(j)]; }

    bool is_zero() const;

    CohomClass& operator+=(const CohomClass& o);
    CohomClass& operator-=(const CohomClass& o);
    CohomClass& operator*=(const Rational& s);

    friend CohomClass operator+(CohomClass a, const CohomClass& b) { return a += b; }
    friend CohomClass operator-(CohomClass a, const CohomClass& b) { return a -= b; }
    friend CohomClass operator*(CohomClass a, const Rational& s) { return a *= s; }
    friend CohomClass operator*(const Rational& s, CohomClass a) { return a *= s; }
    friend bool operator==(const CohomClass& a, const CohomClass& b) { return a.c_ == b.c_; }

    // Cup product with truncation; also available as operator* so the class
    // can serve as a Laurent coefficient type.
    friend CohomClass operator*(const CohomClass& a, const CohomClass& b);

private:
    std::vector<Rational> c_;
};

CohomClass cup(const CohomClass& x, const CohomClass& y);

// L * (coefficient of H^r): the evaluation against the fundamental class,
// normalized so that integrate(H^r) equals the degree of the variety.
Rational integrate(const CohomClass& x, const Target& target);

} // namespace fanoqc
