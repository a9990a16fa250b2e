#include "fanoqc/laurent.hpp"

namespace fanoqc {

Laurent<CohomClass> divisor_power(int e, int b, const Target& target) {
    if (b < 0) throw QueryError("divisor_power: negative exponent");
    Laurent<CohomClass> out(1);
    for (int j = 0; j <= b && j <= target.r; ++j) {
        Rational coeff(binomial(b, j));
        coeff *= rpow(Rational(-e), b - j);
        if (coeff == 0) continue; // e = 0 kills every j < b
        CohomClass cls(target.r);
        cls[j] = coeff;
        out.add_term({b - j}, cls);
    }
    return out;
}

} // namespace fanoqc
