#include "fanoqc/cohom.hpp"

#include "fanoqc/errors.hpp"

namespace fanoqc {

CohomClass CohomClass::h_power(int r, int j) {
    if (j < 0) throw QueryError("h_power: negative exponent");
    CohomClass out(r);
    if (j <= r) out[j] = 1;
    return out;
}

bool CohomClass::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

CohomClass& CohomClass::operator+=(const CohomClass& o) {
    if (dim() != o.dim()) throw QueryError("CohomClass: mismatched ring dimension");
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
    return *this;
}

CohomClass& CohomClass::operator-=(const CohomClass& o) {
    if (dim() != o.dim()) throw QueryError("CohomClass: mismatched ring dimension");
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
    return *this;
}

CohomClass& CohomClass::operator*=(const Rational& s) {
    for (auto& x : c_) x *= s;
    return *this;
}

CohomClass operator*(const CohomClass& a, const CohomClass& b) { return cup(a, b); }

CohomClass cup(const CohomClass& x, const CohomClass& y) {
    if (x.dim() != y.dim()) throw QueryError("cup: mismatched ring dimension");
    const int r = x.dim();
    CohomClass out(r);
    for (int i = 0; i <= r; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; i + j <= r; ++j) {
            if (y[j] == 0) continue;
            out[i + j] += x[i] * y[j];
        }
    }
    return out;
}

Rational integrate(const CohomClass& x, const Target& target) {
    if (x.dim() != target.r) throw QueryError("integrate: class does not match target");
    return Rational(target.L) * x[target.r];
}

} // namespace fanoqc
