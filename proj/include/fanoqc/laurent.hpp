#pragma once

#include "fanoqc/cohom.hpp"
#include "fanoqc/errors.hpp"
#include "fanoqc/rational.hpp"

#include <map>
#include <vector>

namespace fanoqc {

namespace detail {
inline bool coeff_is_zero(const Rational& x) { return x == 0; }
inline bool coeff_is_zero(const CohomClass& x) { return x.is_zero(); }
} // namespace detail

/* Sparse Laurent polynomial in a fixed number of variables, keyed by integer
 * exponent vectors.  Coefficients are Rational or CohomClass; supports stay
 * tiny (they are cut down by dimension constraints at every use site), so a
 * std::map keeps things simple and deterministic.  Zero coefficients are
 * pruned eagerly; extraction off the support returns zero. */
template <typename C>
class Laurent {
public:
    using Terms = std::map<std::vector<int>, C>;

    explicit Laurent(int arity) : arity_(arity) {
        if (arity < 1) throw QueryError("Laurent: arity must be >= 1");
    }

    int arity() const { return arity_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const std::vector<int>& exps, const C& coeff) {
        check(exps);
        if (detail::coeff_is_zero(coeff)) return;
        auto [it, inserted] = terms_.emplace(exps, coeff);
        if (!inserted) {
            it->second += coeff;
            if (detail::coeff_is_zero(it->second)) terms_.erase(it);
        }
    }

    // Coefficient at an exponent vector; `zero` supplies the result shape
    // off-support (CohomClass carries a ring dimension).
    C coefficient(const std::vector<int>& exps, const C& zero) const {
        check(exps);
        auto it = terms_.find(exps);
        return it == terms_.end() ? zero : it->second;
    }

    Laurent& operator+=(const Laurent& o) {
        require_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    Laurent& operator-=(const Laurent& o) {
        require_same(o);
        for (const auto& [e, c] : o.terms_) {
            C neg = c;
            neg *= Rational(-1);
            add_term(e, neg);
        }
        return *this;
    }

    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        a.require_same(b);
        Laurent out(a.arity_);
        std::vector<int> e(static_cast<std::size_t>(a.arity_));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.arity_; ++i)
                    e[static_cast<std::size_t>(i)] =
                        ea[static_cast<std::size_t>(i)] + eb[static_cast<std::size_t>(i)];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    Laurent& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend Laurent operator*(Laurent a, const Rational& s) { return a *= s; }
    friend Laurent operator*(const Rational& s, Laurent a) { return a *= s; }

    // Multiplication by the monomial prod_i x_i^{shift[i]}.
    Laurent shifted(const std::vector<int>& shift) const {
        check(shift);
        Laurent out(arity_);
        std::vector<int> e(static_cast<std::size_t>(arity_));
        for (const auto& [ea, c] : terms_) {
            for (int i = 0; i < arity_; ++i)
                e[static_cast<std::size_t>(i)] =
                    ea[static_cast<std::size_t>(i)] + shift[static_cast<std::size_t>(i)];
            out.terms_.emplace(e, c);
        }
        return out;
    }

    // Keeps only terms whose exponent of the given variable is < 0.
    Laurent negative_part(int var) const {
        if (var < 0 || var >= arity_) throw QueryError("Laurent: bad variable index");
        Laurent out(arity_);
        for (const auto& [e, c] : terms_)
            if (e[static_cast<std::size_t>(var)] < 0) out.terms_.emplace(e, c);
        return out;
    }

    friend bool operator==(const Laurent& a, const Laurent& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

private:
    void check(const std::vector<int>& exps) const {
        if (static_cast<int>(exps.size()) != arity_)
            throw QueryError("Laurent: exponent vector has wrong arity");
    }
    void require_same(const Laurent& o) const {
        if (arity_ != o.arity_) throw QueryError("Laurent: mixed arities");
    }

    int arity_;
    Terms terms_;
};

/* (H - e*t)^b in (Q[H]/(H^{r+1}))[t]: the class-valued binomial expansion
 * sum_j C(b,j) (-e)^{b-j} H^j t^{b-j}, truncated in H at degree r.  Arity-1
 * Laurent in t with CohomClass coefficients. */
Laurent<CohomClass> divisor_power(int e, int b, const Target& target);

} // namespace fanoqc
