#include "fanoqc/quantum.hpp"

#include "fanoqc/errors.hpp"

namespace fanoqc {

bool QSeries::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

QSeries& QSeries::operator+=(const QSeries& o) {
    if (d_max() != o.d_max()) throw QueryError("QSeries: mixed truncation orders");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
    if (d_max() != o.d_max()) throw QueryError("QSeries: mixed truncation orders");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    if (a.d_max() != b.d_max()) throw QueryError("QSeries: mixed truncation orders");
    QSeries out(a.d_max());
    for (int i = 0; i <= a.d_max(); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= a.d_max(); ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

QSeries& QSeries::operator*=(const Rational& s) {
    for (auto& x : c_) x *= s;
    return *this;
}

QuantumRing::QuantumRing(TwoPointTable& table) : tgt_(table.target()), table_(table) {
    const int r = tgt_.r;
    const int dm = tgt_.d_max;
    table.fill_to(dm);

    M_.r = r;
    M_.d_max = dm;
    M_.e.assign(static_cast<std::size_t>(r) + 1,
                std::vector<QSeries>(static_cast<std::size_t>(r) + 1, QSeries(dm)));

    for (int c = 0; c <= r; ++c) {
        if (c < r) M_.e[static_cast<std::size_t>(c + 1)][static_cast<std::size_t>(c)][0] = 1;
        for (int d = 1; d <= dm; ++d) {
            for (int cp = 0; cp <= r; ++cp) {
                // <H, H^c, H^{r-cp}>_d = d * <H^c, H^{r-cp}>_d, placed on the
                // basis vector H^{cp} dual to H^{r-cp}/L.
                const Rational tp = table.two_point(c, r - cp, 0, d);
                if (tp == 0) continue;
                M_.e[static_cast<std::size_t>(cp)][static_cast<std::size_t>(c)][d] =
                    Rational(d) * tp / Rational(tgt_.L);
            }
        }
    }

    // Quantum powers of H applied to the unit, P_k = M^k e_0.
    std::vector<QSeries> p(static_cast<std::size_t>(r) + 1, QSeries(dm));
    p[0][0] = 1;
    pow_e0_.push_back(p);
    for (int k = 1; k <= r; ++k) pow_e0_.push_back(apply(M_, pow_e0_.back()));

    /* Solve sum_k beta[a][k] P_k = e_a for each a.  P_k = e_k + terms of
     * lower H-degree carrying positive q-powers, so the matrix B with
     * columns P_k is upper unitriangular (B[j][k] = delta_{jk} + q-stuff for
     * j < k) and back-substitution from the top row down works. */
    beta_.assign(static_cast<std::size_t>(r) + 1,
                 std::vector<QSeries>(static_cast<std::size_t>(r) + 1, QSeries(dm)));
    for (int a = 0; a <= r; ++a) {
        std::vector<QSeries>& x = beta_[static_cast<std::size_t>(a)];
        for (int k = r; k >= 0; --k) {
            QSeries rhs(dm);
            if (k == a) rhs[0] = 1;
            for (int kp = k + 1; kp <= r; ++kp)
                rhs -= pow_e0_[static_cast<std::size_t>(kp)][static_cast<std::size_t>(k)] *
                       x[static_cast<std::size_t>(kp)];
            // B[k][k] = 1 exactly: P_k hits e_k with coefficient 1.
            x[static_cast<std::size_t>(k)] = rhs;
        }
    }
}

std::vector<QSeries> QuantumRing::apply(const QuantumMatrix& m,
                                        const std::vector<QSeries>& v) const {
    std::vector<QSeries> out(v.size(), QSeries(m.d_max));
    for (std::size_t row = 0; row < out.size(); ++row)
        for (std::size_t col = 0; col < v.size(); ++col) {
            if (m.e[row][col].is_zero() || v[col].is_zero()) continue;
            out[row] += m.e[row][col] * v[col];
        }
    return out;
}

const std::vector<QSeries>& QuantumRing::product(int a, int b) {
    const int r = tgt_.r;
    if (a < 0 || a > r || b < 0 || b > r) throw QueryError("product: range");
    const auto key = std::make_pair(a, b);
    auto it = products_.find(key);
    if (it != products_.end()) return it->second;

    std::vector<QSeries> acc(static_cast<std::size_t>(r) + 1, QSeries(tgt_.d_max));
    std::vector<QSeries> mk(static_cast<std::size_t>(r) + 1, QSeries(tgt_.d_max));
    mk[static_cast<std::size_t>(b)][0] = 1; // M^0 e_b
    for (int k = 0; k <= r; ++k) {
        const QSeries& w = beta_[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)];
        if (!w.is_zero())
            for (std::size_t row = 0; row < acc.size(); ++row) acc[row] += mk[row] * w;
        if (k < r) mk = apply(M_, mk);
    }
    return products_.emplace(key, std::move(acc)).first->second;
}

Rational QuantumRing::two_point_count(int d) {
    if (d < 1) throw QueryError("two_point_count: degree must be >= 1");
    if (tgt_.r != tgt_.f * d - 1)
        throw QueryError("two_point_count: degree-" + std::to_string(d) +
                         " curves through two points need dim = " + std::to_string(tgt_.f * d - 1) +
                         " (index * degree - 1), but dim = " + std::to_string(tgt_.r));
    table_.fill_to(d);
    return table_.two_point(tgt_.r, tgt_.r, 0, d) / (Rational(tgt_.L) * Rational(tgt_.L));
}

} // namespace fanoqc
