#include "fanoqc/ifunction.hpp"

#include "fanoqc/cohom.hpp"
#include "fanoqc/errors.hpp"
#include "fanoqc/laurent.hpp"

namespace fanoqc {

std::vector<Rational> i_function_vector(const Target& target, int d) {
    if (d <= 0) throw QueryError("i_function_vector: degree must be >= 1");
    const int r = target.r;
    const int n = target.n;

    Laurent<CohomClass> series(1);
    series.add_term({0}, CohomClass::h_power(r, 0));

    // Numerator factors (l H + k t), one per i and k = 1..d*l_i.
    for (int l : target.degrees) {
        for (int k = 1; k <= d * l; ++k) {
            Laurent<CohomClass> factor(1);
            CohomClass lh(r);
            if (r >= 1) lh[1] = l;
            factor.add_term({0}, lh);
            CohomClass kt(r);
            kt[0] = k;
            factor.add_term({1}, kt);
            series = series * factor;
        }
    }

    // Denominator factors (H + k t)^{-(n+1)}; the H-truncation makes each a
    // finite sum of r+1 terms.
    for (int k = 1; k <= d; ++k) {
        Laurent<CohomClass> inv(1);
        for (int j = 0; j <= r; ++j) {
            Rational coeff(binomial(n + j, j));
            if (j % 2) coeff = -coeff;
            coeff /= rpow(Rational(k), n + 1 + j);
            CohomClass cls(r);
            cls[j] = coeff;
            inv.add_term({-(n + 1 + j)}, cls);
        }
        series = series * inv;
    }

    // Homogeneity: H^j only at t^{-(d f + j)}.
    std::vector<Rational> v(static_cast<std::size_t>(r) + 1, Rational(0));
    for (const auto& [exps, cls] : series.terms()) {
        const int texp = exps[0];
        for (int j = 0; j <= r; ++j) {
            if (cls[j] == 0) continue;
            if (texp != -(d * target.f + j))
                throw ConsistencyError("i_function_vector: inhomogeneous term H^" +
                                       std::to_string(j) + " t^" + std::to_string(texp) +
                                       " for " + target.fingerprint());
            v[static_cast<std::size_t>(j)] = cls[j];
        }
    }
    return v;
}

const std::vector<Rational>& OnePointTable::v(int d) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(d);
    if (it == memo_.end()) it = memo_.emplace(d, i_function_vector(tgt_, d)).first;
    return it->second;
}

std::map<int, std::vector<Rational>> OnePointTable::snapshot() const {
    std::lock_guard<std::mutex> lock(mu_);
    return memo_;
}

Rational OnePointTable::one_point(int i, int c, int d) const {
    if (d <= 0) throw QueryError("one_point: degree must be >= 1");
    if (i < 0 || i > tgt_.r || c < 0) throw QueryError("one_point: bad insertion");
    if (i + c != tgt_.r + d * tgt_.f - 2) return 0;
    return Rational(tgt_.L) * v(d)[static_cast<std::size_t>(tgt_.r - i)];
}

} // namespace fanoqc
