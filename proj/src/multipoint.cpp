#include "fanoqc/multipoint.hpp"

#include "fanoqc/errors.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace fanoqc {

InvariantKey InvariantKey::canonical(int d, std::vector<std::pair<int, int>> ins) {
    std::sort(ins.begin(), ins.end());
    return InvariantKey{d, std::move(ins)};
}

std::string InvariantKey::str() const {
    std::ostringstream os;
    os << "<";
    for (std::size_t i = 0; i < ins.size(); ++i) {
        if (i) os << ", ";
        os << "H^" << ins[i].first;
        if (ins[i].second > 0) os << " psi^" << ins[i].second;
    }
    os << ">_" << d;
    return os.str();
}

namespace {

// Calls fn on every nonnegative integer vector of the given length summing
// to total.  Lengths here are at most max_points, totals stay small.
void for_each_composition(int total, int length, std::vector<int>& buf,
                          const std::function<void(const std::vector<int>&)>& fn,
                          int pos = 0) {
    if (pos == length - 1) {
        buf[static_cast<std::size_t>(pos)] = total;
        fn(buf);
        return;
    }
    for (int v = 0; v <= total; ++v) {
        buf[static_cast<std::size_t>(pos)] = v;
        for_each_composition(total - v, length, buf, fn, pos + 1);
    }
}

// Ascending class vectors of the given length with entries in [0, r].
void for_each_multiset(int length, int r, std::vector<int>& buf,
                       const std::function<void(const std::vector<int>&)>& fn,
                       int pos = 0, int low = 0) {
    if (pos == length) {
        fn(buf);
        return;
    }
    for (int v = low; v <= r; ++v) {
        buf[static_cast<std::size_t>(pos)] = v;
        for_each_multiset(length, r, buf, fn, pos + 1, v);
    }
}

} // namespace

MultipointEngine::MultipointEngine(const OnePointTable& one, int max_points)
    : one_(one), tgt_(one.target()), max_points_(max_points) {
    if (max_points_ < 2) throw QueryError("MultipointEngine: max_points must be >= 2");
}

Rational MultipointEngine::npoint(int d, const std::vector<std::pair<int, int>>& ins) {
    return npoint(InvariantKey::canonical(d, ins));
}

Rational MultipointEngine::npoint(const InvariantKey& raw) {
    InvariantKey key = InvariantKey::canonical(raw.d, raw.ins);
    const int p = key.points();
    if (p == 0) throw QueryError("npoint: empty insertion list");
    if (key.d < 0) throw QueryError("npoint: negative degree");
    for (const auto& [a, k] : key.ins) {
        if (a < 0) throw QueryError("npoint: negative cohomology power");
        if (k < 0) throw QueryError("npoint: negative descendant power");
    }
    if (key.d == 0 && p <= 2)
        throw QueryError("npoint: degree 0 needs at least three insertions");
    if (p > max_points_)
        throw QueryError("npoint: " + std::to_string(p) +
                         " insertions exceeds the configured bound of " +
                         std::to_string(max_points_));

    long total = 0;
    for (const auto& [a, k] : key.ins) {
        if (a > tgt_.r) return 0;
        total += a + k;
    }
    if (total != tgt_.r + static_cast<long>(tgt_.f) * key.d + p - 3) return 0;

    if (key.d == 0) return classical_value(key.ins);
    if (p == 1) return one_.one_point(key.ins[0].first, key.ins[0].second, key.d);

    auto it = store_.find(key);
    if (it != store_.end()) return it->second;

    std::vector<int> classes;
    classes.reserve(key.ins.size());
    for (const auto& [a, k] : key.ins) classes.push_back(a);
    solve_tuple(classes, key.d);

    it = store_.find(key);
    if (it == store_.end())
        throw ConsistencyError("npoint: solve left " + key.str() + " undetermined");
    return it->second;
}

Rational MultipointEngine::inv_value(int d, const std::vector<std::pair<int, int>>& ins) {
    const int p = static_cast<int>(ins.size());
    long total = 0;
    for (const auto& [a, k] : ins) {
        if (a > tgt_.r || a < 0 || k < 0) return 0;
        total += a + k;
    }
    if (total != tgt_.r + static_cast<long>(tgt_.f) * d + p - 3) return 0;

    if (d == 0) {
        if (p < 3)
            throw ConsistencyError("inv_value: unstable degree-0 configuration requested");
        return classical_value(ins);
    }
    if (p == 1) return one_.one_point(ins[0].first, ins[0].second, d);

    InvariantKey key = InvariantKey::canonical(d, ins);
    auto it = store_.find(key);
    if (it != store_.end()) return it->second;
    if (frozen_)
        throw ConsistencyError("inv_value: " + key.str() +
                               " missing during a parallel solve (fill order bug)");

    std::vector<int> classes;
    classes.reserve(ins.size());
    for (const auto& kk : key.ins) classes.push_back(kk.first);
    solve_tuple(classes, d);
    it = store_.find(key);
    if (it == store_.end())
        throw ConsistencyError("inv_value: solve left " + key.str() + " undetermined");
    return it->second;
}

Rational MultipointEngine::classical_value(const std::vector<std::pair<int, int>>& ins) const {
    const int p = static_cast<int>(ins.size());
    long asum = 0, ksum = 0;
    for (const auto& [a, k] : ins) {
        asum += a;
        ksum += k;
    }
    // On the moduli of p marked points on a line, psi-monomials integrate to
    // multinomial coefficients; the class factor contributes only in top
    // degree, where it integrates to L.
    if (asum != tgt_.r || ksum != p - 3) return 0;
    Integer mult;
    mpz_fac_ui(mult.get_mpz_t(), static_cast<unsigned long>(p - 3));
    for (const auto& [a, k] : ins) {
        Integer kf;
        mpz_fac_ui(kf.get_mpz_t(), static_cast<unsigned long>(k));
        mult /= kf;
    }
    return Rational(mult * tgt_.L);
}

Laurent<Rational> MultipointEngine::package(int arity, int degree,
                                            const std::vector<Slot>& slots) {
    const int p = static_cast<int>(slots.size());
    Laurent<Rational> out(arity);
    long budget = tgt_.r + static_cast<long>(tgt_.f) * degree + p - 3;
    for (const auto& s : slots) {
        if (s.cls < 0 || s.cls > tgt_.r) return out;
        budget -= s.cls;
    }
    if (budget < 0) return out;

    std::vector<int> kvec(static_cast<std::size_t>(p));
    std::vector<std::pair<int, int>> ins(static_cast<std::size_t>(p));
    std::vector<int> exps(static_cast<std::size_t>(arity));
    for_each_composition(static_cast<int>(budget), p, kvec, [&](const std::vector<int>& kv) {
        for (int i = 0; i < p; ++i)
            ins[static_cast<std::size_t>(i)] = {slots[static_cast<std::size_t>(i)].cls,
                                                kv[static_cast<std::size_t>(i)]};
        Rational val = inv_value(degree, ins);
        if (val == 0) return;
        std::fill(exps.begin(), exps.end(), 0);
        for (int i = 0; i < p; ++i) {
            const Slot& s = slots[static_cast<std::size_t>(i)];
            exps[static_cast<std::size_t>(s.var)] -= kv[static_cast<std::size_t>(i)] + 2;
            if (s.sign < 0 && kv[static_cast<std::size_t>(i)] % 2 != 0) val = -val;
        }
        out.add_term(exps, val);
    });
    return out;
}

Laurent<Rational> MultipointEngine::known_side(int d, const std::vector<int>& a, int b) {
    const int m = static_cast<int>(a.size());
    if (m < 1) throw QueryError("known_side: at least one spectator insertion");
    if (d < 1) throw QueryError("known_side: degree must be positive");
    const int arity = m + 1;
    const int tv = m; // variable index of t; spectator i sits at index i-1

    // Terms still missing the clearing prefactor t (t_1 + t) prod_i t_i.
    Laurent<Rational> bucket(arity);
    // Terms assembled with the prefactor already cancelled.
    Laurent<Rational> cleared(arity);

    const Rational invL(1, tgt_.L);

    for (int mask = 0; mask < (1 << (m - 1)); ++mask) {
        std::vector<int> S{1}, Sc;
        for (int i = 2; i <= m; ++i)
            ((mask >> (i - 2)) & 1 ? S : Sc).push_back(i);

        for (int e = 0; e <= d; ++e) {
            if (Sc.empty() && e == 0) continue; // the unknown term

            if (S.size() == 1 && e == d) {
                /* The side containing t_1 is a degree-0 two-point stem; its
                 * propagator collapses the gluing sum and removes every t_1
                 * power, cancelling the prefactor exactly.  What remains is
                 * the full-degree package with the t_1 class pushed into the
                 * -t slot, spectator slots renormalised by one power each. */
                for (int j = 0; j <= b; ++j) {
                    if (a[0] + j > tgt_.r) break;
                    Rational coef = Rational(binomial(b, j)) * Rational(ipow(-d, b - j));
                    if (coef == 0) continue;
                    std::vector<Slot> slots{{a[0] + j, tv, -1}};
                    for (int i = 2; i <= m; ++i) slots.push_back({a[static_cast<std::size_t>(i - 1)], i - 1, +1});
                    Laurent<Rational> pk = package(arity, d, slots);
                    if (pk.is_zero()) continue;
                    std::vector<int> shift(static_cast<std::size_t>(arity), 0);
                    for (int i = 2; i <= m; ++i) shift[static_cast<std::size_t>(i - 1)] = 1;
                    shift[static_cast<std::size_t>(tv)] = b - j;
                    cleared += pk.shifted(shift) * coef;
                }
                continue;
            }

            if (e == 0 && Sc.size() == 1) {
                /* Degree 0 on the far side with a single insertion: another
                 * propagator collapse.  The t_j0 insertion is cupped with H^b
                 * and moved onto the t slot, at the cost of a 1/(t_j0 - t)
                 * kernel, expanded where |t| < |t_j0|.  After restoring the
                 * prefactor the expansion order is capped by the package's
                 * descendant budget; later terms cannot reach negative
                 * t-exponents. */
                const int j0 = Sc[0];
                if (a[static_cast<std::size_t>(j0 - 1)] + b > tgt_.r) continue;
                std::vector<Slot> slots;
                long budget = tgt_.r + static_cast<long>(tgt_.f) * d
                              + static_cast<long>(S.size()) + 1 - 3;
                for (int i : S) {
                    slots.push_back({a[static_cast<std::size_t>(i - 1)], i - 1, +1});
                    budget -= a[static_cast<std::size_t>(i - 1)];
                }
                slots.push_back({a[static_cast<std::size_t>(j0 - 1)] + b, tv, +1});
                budget -= a[static_cast<std::size_t>(j0 - 1)] + b;
                if (budget < 0) continue;
                Laurent<Rational> pk = package(arity, d, slots);
                if (pk.is_zero()) continue;
                std::vector<int> shift(static_cast<std::size_t>(arity), 0);
                for (int s = 0; s <= static_cast<int>(budget) + 1; ++s) {
                    shift[static_cast<std::size_t>(tv)] = s - 1;
                    shift[static_cast<std::size_t>(j0 - 1)] = -(s + 2);
                    bucket += pk.shifted(shift) * Rational(-1);
                }
                continue;
            }

            /* Generic split: degree d-e on the t_1 side, e on the other, the
             * node resolved by the diagonal sum over c, and (H - et)^b cupped
             * into the node class on the t_1 side. */
            const int d1 = d - e, d2 = e;
            for (int c = 0; c <= tgt_.r; ++c) {
                std::vector<Slot> slots2{{tgt_.r - c, tv, -1}};
                for (int i : Sc) slots2.push_back({a[static_cast<std::size_t>(i - 1)], i - 1, +1});
                Laurent<Rational> f2 = package(arity, d2, slots2);
                if (f2.is_zero()) continue;
                for (int j = 0; j <= b && c + j <= tgt_.r; ++j) {
                    Rational coef = Rational(binomial(b, j)) * Rational(ipow(-e, b - j)) * invL;
                    if (coef == 0) continue;
                    std::vector<Slot> slots1;
                    for (int i : S) slots1.push_back({a[static_cast<std::size_t>(i - 1)], i - 1, +1});
                    slots1.push_back({c + j, tv, +1});
                    Laurent<Rational> f1 = package(arity, d1, slots1);
                    if (f1.is_zero()) continue;
                    std::vector<int> shift(static_cast<std::size_t>(arity), 0);
                    shift[static_cast<std::size_t>(tv)] = b - j;
                    bucket += (f1 * f2).shifted(shift) * coef;
                }
            }
        }
    }

    // prefactor t (t_1 + t) prod_{i=1}^m t_i, as two monomials
    Laurent<Rational> pf(arity);
    std::vector<int> e1(static_cast<std::size_t>(arity), 1), e2(static_cast<std::size_t>(arity), 1);
    e1[0] = 2;
    e2[static_cast<std::size_t>(tv)] = 2;
    pf.add_term(e1, 1);
    pf.add_term(e2, 1);

    Laurent<Rational> ks = pf * bucket;
    ks += cleared;
    return ks.negative_part(tv);
}

void MultipointEngine::solve_tuple(const std::vector<int>& classes, int d) {
    const auto mark = std::make_pair(d, classes);
    if (solved_.count(mark)) return;
    auto rows = solve_tuple_values(classes, d);
    for (auto& [key, val] : rows) {
        auto [it, inserted] = store_.emplace(std::move(key), val);
        if (!inserted && it->second != val)
            throw ConsistencyError("solve_tuple: conflicting values for " + it->first.str());
    }
    solved_.insert(mark);
}

std::vector<std::pair<InvariantKey, Rational>>
MultipointEngine::solve_tuple_values(const std::vector<int>& classes, int d) {
    const int p = static_cast<int>(classes.size());
    const int m = p - 1;
    std::vector<std::pair<InvariantKey, Rational>> out;

    long ktot = tgt_.r + static_cast<long>(tgt_.f) * d + p - 3;
    for (int c : classes) ktot -= c;
    if (ktot < 0) return out;
    const int total = static_cast<int>(ktot);

    std::vector<int> a(classes.begin(), classes.end() - 1);
    const int b = classes.back();
    Laurent<Rational> ks = known_side(d, a, b);

    /* The unknown term contributes, at the monomial
     *   t_1^{-s1} t_2^{-(s2+1)} ... t_m^{-(sm+1)} t^{-s},   s >= 1,
     * exactly I(s1-1, s', s) + I(s1, s', s-1), so walking s1 upward turns
     * coefficient matching into back-substitution.  Everything the known
     * side produces at negative t either fits this pattern (with exponents
     * summing to total+1) or must vanish outright; a nonzero stray would
     * mean some lower table is wrong, so it is fatal. */
    std::map<std::vector<int>, Rational> local;
    std::vector<int> kvec(static_cast<std::size_t>(p));
    std::vector<int> sprime(static_cast<std::size_t>(m == 1 ? 1 : m - 1));
    std::vector<int> exps(static_cast<std::size_t>(p));
    std::vector<std::pair<int, int>> ins(static_cast<std::size_t>(p));
    const Rational zero(0);

    for (int s1 = 0; s1 <= total; ++s1) {
        const int rem = total + 1 - s1;
        auto handle = [&](const std::vector<int>& sp, int s) {
            exps[0] = -s1;
            for (int i = 0; i < m - 1; ++i)
                exps[static_cast<std::size_t>(i + 1)] = -(sp[static_cast<std::size_t>(i)] + 1);
            exps[static_cast<std::size_t>(m)] = -s;
            Rational rhs = -ks.coefficient(exps, zero);
            if (s1 > 0) {
                kvec[0] = s1 - 1;
                for (int i = 0; i < m - 1; ++i)
                    kvec[static_cast<std::size_t>(i + 1)] = sp[static_cast<std::size_t>(i)];
                kvec[static_cast<std::size_t>(m)] = s;
                rhs -= local.at(kvec);
            }
            kvec[0] = s1;
            for (int i = 0; i < m - 1; ++i)
                kvec[static_cast<std::size_t>(i + 1)] = sp[static_cast<std::size_t>(i)];
            kvec[static_cast<std::size_t>(m)] = s - 1;
            local[kvec] = rhs;
            for (int i = 0; i < p; ++i)
                ins[static_cast<std::size_t>(i)] = {classes[static_cast<std::size_t>(i)],
                                                    kvec[static_cast<std::size_t>(i)]};
            out.emplace_back(InvariantKey::canonical(d, ins), rhs);
        };
        if (m == 1) {
            // no middle insertions: s is forced to rem (always >= 1 here)
            handle({}, rem);
        } else {
            for (int ssum = 0; ssum <= rem - 1; ++ssum)
                for_each_composition(ssum, m - 1, sprime,
                                     [&](const std::vector<int>& sp) { handle(sp, rem - ssum); });
        }
    }

    // Polynomiality witness: nothing on the known side may fall outside the
    // solvable monomial pattern.
    for (const auto& [e, c] : ks.terms()) {
        bool ok = e[0] <= 0 && e[static_cast<std::size_t>(m)] <= -1;
        long sum = -e[0] - e[static_cast<std::size_t>(m)];
        for (int i = 1; i < m; ++i) {
            ok = ok && e[static_cast<std::size_t>(i)] <= -1;
            sum += -e[static_cast<std::size_t>(i)] - 1;
        }
        ok = ok && sum == static_cast<long>(total) + 1;
        if (!ok) {
            std::ostringstream os;
            os << "solve_tuple: stray known-side monomial at degree " << d << ", classes (";
            for (std::size_t i = 0; i < classes.size(); ++i)
                os << (i ? "," : "") << classes[i];
            os << "), exponents (";
            for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
            os << ") with coefficient " << to_fraction_string(c);
            throw ConsistencyError(os.str());
        }
    }

    return out;
}

void MultipointEngine::solve_layer(int points, int d, bool parallel) {
    if (points < 2 || points > max_points_)
        throw QueryError("solve_layer: point count out of range");
    if (d < 0) throw QueryError("solve_layer: negative degree");
    if (d == 0) return; // degree 0 is closed-form, nothing to store

    for (int q = 2; q < points; ++q)
        for (int dq = 1; dq <= d; ++dq) solve_layer(q, dq, parallel);
    for (int dq = 1; dq < d; ++dq) solve_layer(points, dq, parallel);

    std::vector<std::vector<int>> pending;
    std::vector<int> buf(static_cast<std::size_t>(points));
    for_each_multiset(points, tgt_.r, buf, [&](const std::vector<int>& cls) {
        if (solved_.count({d, cls})) return;
        long ktot = tgt_.r + static_cast<long>(tgt_.f) * d + points - 3;
        for (int c : cls) ktot -= c;
        if (ktot < 0) {
            solved_.insert({d, cls});
            return;
        }
        pending.push_back(cls);
    });

    if (!parallel || pending.size() < 2) {
        for (const auto& cls : pending) solve_tuple(cls, d);
        return;
    }

    /* Tuples inside one layer are independent: each reads only smaller
     * layers, which the recursion above has fully materialised.  Results
     * are staged per tuple and merged in order, so the store's content is
     * identical to the serial fill. */
    std::vector<std::vector<std::pair<InvariantKey, Rational>>> staged(pending.size());
    std::vector<std::string> errors(pending.size());
    frozen_ = true;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t i = 0; i < pending.size(); ++i) {
        try {
            staged[i] = solve_tuple_values(pending[i], d);
        } catch (const std::exception& ex) {
            errors[i] = ex.what();
        }
    }
    frozen_ = false;
    for (const auto& err : errors)
        if (!err.empty()) throw ConsistencyError(err);
    for (std::size_t i = 0; i < pending.size(); ++i) {
        for (auto& [key, val] : staged[i]) {
            auto [it, inserted] = store_.emplace(std::move(key), val);
            if (!inserted && it->second != val)
                throw ConsistencyError("solve_layer: conflicting values for " + it->first.str());
        }
        solved_.insert({d, pending[i]});
    }
}

void MultipointEngine::adopt(const std::map<InvariantKey, Rational>& entries) {
    for (const auto& [key, val] : entries) {
        auto [it, inserted] = store_.emplace(key, val);
        if (!inserted && it->second != val)
            throw ConsistencyError("adopt: conflicting values for " + key.str());
    }
}

} // namespace fanoqc
