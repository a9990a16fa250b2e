#include "fanoqc/twopoint.hpp"

#include "fanoqc/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fanoqc {

TwoPointTable::TwoPointTable(const OnePointTable& one) : one_(one), tgt_(one.target()) {
    val_.resize(1); // degree 0 placeholder
}

Laurent<Rational> TwoPointTable::descendant_package(int i, int e, int sign) const {
    if (e <= 0) throw QueryError("descendant_package: degree must be >= 1");
    if (sign != 1 && sign != -1) throw QueryError("descendant_package: sign must be +-1");
    Laurent<Rational> out(1);
    if (i < 0 || i > tgt_.r) return out;
    const int c = tgt_.r + tgt_.f * e - 2 - i;
    if (c < 0) return out;
    Rational value = Rational(tgt_.L) * one_.v(e)[static_cast<std::size_t>(tgt_.r - i)];
    if (sign == -1 && (c % 2)) value = -value;
    out.add_term({-(c + 2)}, value);
    return out;
}

Laurent<Rational> TwoPointTable::formula_one_tail(int a, int b, int d) const {
    if (a < 0 || a > tgt_.r || b < 0 || b > tgt_.r) throw QueryError("formula_one_tail: bad powers");
    if (d < 1) throw QueryError("formula_one_tail: degree must be >= 1");
    if (filled_to() < d - 1)
        throw ConsistencyError("formula_one_tail: table incomplete below degree " +
                               std::to_string(d));

    Laurent<Rational> tail(1);

    // <H^a (H-dt)^b / (-t(-t-psi))>_d, with (H-dt)^b expanded binomially.
    for (int j = 0; j <= b; ++j) {
        Rational coeff(binomial(b, j));
        coeff *= rpow(Rational(-d), b - j);
        if (coeff == 0) continue;
        tail += (descendant_package(a + j, d, -1) * coeff).shifted({b - j});
    }

    // Splitting terms through lower degrees; the first factor is this
    // table's own package <H^a, H^{c'}/(t-psi)>_{d-e}.
    for (int e = 1; e <= d - 1; ++e) {
        for (int cp = 0; cp <= tgt_.r; ++cp) {
            const int kp = forced_psi(a, cp, d - e);
            if (kp < 0) continue;
            const Rational stored = val_[static_cast<std::size_t>(d - e)]
                                        [static_cast<std::size_t>(a)]
                                        [static_cast<std::size_t>(cp)];
            if (stored == 0) continue;
            Laurent<Rational> bpkg(1);
            bpkg.add_term({-(kp + 1)}, stored / Rational(tgt_.L));
            Laurent<Rational> inner(1);
            for (int j = 0; j <= b; ++j) {
                Rational coeff(binomial(b, j));
                coeff *= rpow(Rational(-e), b - j);
                if (coeff == 0) continue;
                inner += (descendant_package(tgt_.r - cp + j, e, -1) * coeff).shifted({b - j});
            }
            tail += bpkg * inner;
        }
    }
    return tail;
}

Rational TwoPointTable::extract_entry(int a, int b, int d, std::string* err) const {
    const Laurent<Rational> tail = formula_one_tail(a, b, d);
    const int forced = forced_psi(a, b, d);
    Rational value(0);
    for (const auto& [exps, coeff] : tail.terms()) {
        const int texp = exps[0];
        if (texp >= 0) continue;
        const int k = -texp - 1; // tail term t^{-(k+1)} pairs against psi^k
        if (k == forced) {
            value = -coeff;
        } else if (err && err->empty()) {
            // Off-dimension negative coefficients must cancel to zero within
            // the tail itself; anything else breaks the polynomiality of the
            // total package.
            *err = "two-point tail (a=" + std::to_string(a) + ", b=" + std::to_string(b) +
                   ", d=" + std::to_string(d) + ") has stray t^" + std::to_string(texp) +
                   " coefficient " + to_fraction_string(coeff) + " for " + tgt_.fingerprint();
        }
    }
    return value;
}

void TwoPointTable::fill_degree(int d, bool parallel) {
    const int r = tgt_.r;
    // Publish the one-point vectors first so the parallel loop only reads.
    for (int e = 1; e <= d; ++e) one_.v(e);

    std::vector<std::vector<Rational>> grid(static_cast<std::size_t>(r) + 1,
                                            std::vector<Rational>(static_cast<std::size_t>(r) + 1,
                                                                  Rational(0)));
    const int cells = (r + 1) * (r + 1);
    std::vector<std::string> errs(static_cast<std::size_t>(cells));

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
        for (int cell = 0; cell < cells; ++cell) {
            const int a = cell / (r + 1);
            const int b = cell % (r + 1);
            grid[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                extract_entry(a, b, d, &errs[static_cast<std::size_t>(cell)]);
        }
#else
        parallel = false;
#endif
    }
    if (!parallel) {
        for (int cell = 0; cell < cells; ++cell) {
            const int a = cell / (r + 1);
            const int b = cell % (r + 1);
            grid[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                extract_entry(a, b, d, &errs[static_cast<std::size_t>(cell)]);
        }
    }
    for (const auto& e : errs)
        if (!e.empty()) throw ConsistencyError(e);
    val_.push_back(std::move(grid));
}

void TwoPointTable::fill_to(int d, bool parallel) {
    while (filled_to() < d) fill_degree(filled_to() + 1, parallel);
}

Rational TwoPointTable::two_point(int a, int b, int k, int d) {
    if (a < 0 || a > tgt_.r || b < 0 || b > tgt_.r || k < 0 || d < 0)
        throw QueryError("two_point: bad indices");
    if (d == 0) return 0;
    fill_to(d);
    return lookup(a, b, k, d);
}

Rational TwoPointTable::lookup(int a, int b, int k, int d) const {
    if (a < 0 || a > tgt_.r || b < 0 || b > tgt_.r || k < 0 || d < 0)
        throw QueryError("two_point: bad indices");
    if (d == 0) return 0;
    if (filled_to() < d) throw ConsistencyError("two_point lookup before fill");
    if (k != forced_psi(a, b, d)) return 0;
    return val_[static_cast<std::size_t>(d)][static_cast<std::size_t>(a)]
               [static_cast<std::size_t>(b)];
}

const std::vector<std::vector<Rational>>& TwoPointTable::matrix(int d) const {
    if (d < 1 || d > filled_to()) throw QueryError("matrix: degree not filled");
    return val_[static_cast<std::size_t>(d)];
}

std::vector<std::vector<Integer>> ShiftMatrix::entries() const {
    std::vector<std::vector<Integer>> out(static_cast<std::size_t>(r) + 1,
                                          std::vector<Integer>(static_cast<std::size_t>(r) + 1,
                                                               Integer(0)));
    for (int i = 0; i <= r; ++i) {
        out[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = d;
        if (i > 0) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] = 1;
    }
    return out;
}

std::vector<Rational> ShiftMatrix::apply(const std::vector<Rational>& v) const {
    if (static_cast<int>(v.size()) != r + 1) throw QueryError("ShiftMatrix: size mismatch");
    std::vector<Rational> out(v.size(), Rational(0));
    for (int i = 0; i <= r; ++i) {
        out[static_cast<std::size_t>(i)] = Rational(d) * v[static_cast<std::size_t>(i)];
        if (i > 0) out[static_cast<std::size_t>(i)] += v[static_cast<std::size_t>(i - 1)];
    }
    return out;
}

std::vector<Rational> ShiftMatrix::apply_pow(int b, std::vector<Rational> v) const {
    for (int i = 0; i < b; ++i) v = apply(v);
    return v;
}

ShiftMatrix shift_matrix(const Target& target, int d) {
    if (d < 1) throw QueryError("shift_matrix: degree must be >= 1");
    return ShiftMatrix{target.r, d};
}

MixedMatrix mixed_matrix(const OnePointTable& one, int d,
                         const std::vector<MixedMatrix>& lower) {
    const Target& tgt = one.target();
    if (d < 1) throw QueryError("mixed_matrix: degree must be >= 1");
    if (static_cast<int>(lower.size()) < d - 1)
        throw QueryError("mixed_matrix: need all matrices below degree " + std::to_string(d));
    for (int e = 1; e < d; ++e)
        if (lower[static_cast<std::size_t>(e - 1)].d != e)
            throw QueryError("mixed_matrix: lower matrices out of order");

    const int r = tgt.r;
    MixedMatrix mm;
    mm.d = d;
    mm.m.assign(static_cast<std::size_t>(r) + 1,
                std::vector<Rational>(static_cast<std::size_t>(r) + 1, Rational(0)));
    mm.calibration =
        "value(a,b) = L * (-1)^(c-1) * M[r-a][b], c = r+f*d-1-a-b; entries with c<0 zeroed. "
        "Calibrated at d=1 against the tail engine; the alternative reading (psi-index "
        "c = r+f*d-a-b with unchanged rows) reproduces no tail value and is rejected.";

    for (int b = 0; b <= r; ++b) {
        const ShiftMatrix sd{r, d};
        std::vector<Rational> col = sd.apply_pow(b, one.v(d));
        for (auto& x : col) x = -x;
        for (int e = 1; e <= d - 1; ++e) {
            const ShiftMatrix se{r, e};
            const std::vector<Rational> w = se.apply_pow(b, one.v(e));
            const MixedMatrix& me = lower[static_cast<std::size_t>(d - e - 1)];
            for (int row = 0; row <= r; ++row) {
                Rational acc(0);
                for (int j = 0; j <= r; ++j)
                    acc += me.m[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] *
                           w[static_cast<std::size_t>(j)];
                col[static_cast<std::size_t>(row)] -= acc;
            }
        }
        for (int row = 0; row <= r; ++row) {
            // row = r - a; mask the dimension-forbidden corner.
            const int a = r - row;
            const int c = tgt.f * d + r - 1 - a - b;
            mm.m[static_cast<std::size_t>(row)][static_cast<std::size_t>(b)] =
                c < 0 ? Rational(0) : col[static_cast<std::size_t>(row)];
        }
    }
    return mm;
}

Rational mixed_extract(const Target& target, const MixedMatrix& mm, int a, int b) {
    if (a < 0 || a > target.r || b < 0 || b > target.r) throw QueryError("mixed_extract: range");
    const int c = target.f * mm.d + target.r - 1 - a - b;
    if (c < 0) return 0;
    Rational value = Rational(target.L) *
                     mm.m[static_cast<std::size_t>(target.r - a)][static_cast<std::size_t>(b)];
    if (c % 2 == 0) value = -value; // (-1)^(c-1)
    return value;
}

IdentityReport identity_suite(TwoPointTable& table, int d) {
    const Target& tgt = table.target();
    const OnePointTable& one = table.one_point_table();
    const int r = tgt.r;
    IdentityReport rep;
    table.fill_to(d);

    auto opt_one_point = [&](int i, int c) -> Rational {
        if (i < 0 || i > r || c < 0) return 0; // vanishing class or empty package
        return one.one_point(i, c, d);
    };
    auto check = [&](const Rational& lhs, const Rational& rhs, const std::string& what) {
        ++rep.checks;
        if (lhs != rhs)
            rep.fail(what + " on " + tgt.fingerprint() + " at d=" + std::to_string(d) + ": " +
                     to_fraction_string(lhs) + " vs " + to_fraction_string(rhs));
    };

    for (int a = 0; a <= r; ++a) {
        // Codim 0: a fundamental-class insertion kills the invariant.
        check(table.two_point(a, 0, 0, d), 0, "codim-0 <H^a,1>");

        // Codim 1: removing a bare psi or a divisor reduces to one-point.
        check(table.two_point(a, 0, 1, d), -opt_one_point(a, 0), "codim-1 <H^a,psi>");
        check(table.two_point(a, 1, 0, d), Rational(d) * opt_one_point(a, 0),
              "codim-1 <H^a,H>");

        // Codim 2: three identities mixing this table with one-point data
        // through the splitting sums sum_e sum_c e^p <H^a,H^c>_{d-e} <H^{r-c}>_e / L.
        Rational s0(0), s1(0), s2(0);
        for (int e = 1; e <= d - 1; ++e) {
            for (int c = 0; c <= r; ++c) {
                const Rational tp = table.two_point(a, c, 0, d - e);
                if (tp == 0) continue;
                const Rational op = one.one_point(r - c, 0, e);
                if (op == 0) continue;
                const Rational term = tp * op / Rational(tgt.L);
                s0 += term;
                s1 += Rational(e) * term;
                s2 += Rational(e) * Rational(e) * term;
            }
        }
        check(table.two_point(a, 0, 2, d), opt_one_point(a, 1) - s0, "codim-2 <H^a,psi^2>");
        check(table.two_point(a, 1, 1, d),
              -opt_one_point(a + 1, 0) - Rational(d) * opt_one_point(a, 1) + s1,
              "codim-2 <H^a,H psi>");
        check(table.two_point(a, 2, 0, d),
              Rational(2 * d) * opt_one_point(a + 1, 0) +
                  Rational(d) * Rational(d) * opt_one_point(a, 1) - s2,
              "codim-2 <H^a,H^2>");

        // Unmixed symmetry.
        for (int b = 0; b <= r; ++b)
            check(table.two_point(a, b, 0, d), table.two_point(b, a, 0, d),
                  "unmixed symmetry <H^a,H^b>");
    }
    return rep;
}

} // namespace fanoqc
