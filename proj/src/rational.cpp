#include "fanoqc/rational.hpp"

#include "fanoqc/errors.hpp"

namespace fanoqc {

Integer binomial(long n, long k) {
    if (n < 0) throw QueryError("binomial: negative n");
    if (k < 0 || k > n) return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

Integer ipow(long base, unsigned long exp) {
    Integer out;
    Integer b(base);
    mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), exp);
    return out;
}

Rational rpow(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    if (base == 0 && exp < 0) throw QueryError("rpow: zero base with negative exponent");
    Rational out;
    const unsigned long e = static_cast<unsigned long>(exp < 0 ? -exp : exp);
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    if (exp < 0) {
        mpq_inv(out.get_mpq_t(), out.get_mpq_t());
    }
    out.canonicalize(); // sign normalization when the numerator was negative
    return out;
}

std::string to_fraction_string(const Rational& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
    const auto slash = s.find('/');
    const std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto valid = [](const std::string& part, bool sign_ok) {
        if (part.empty()) return false;
        std::size_t i = 0;
        if (sign_ok && part[0] == '-') i = 1;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') return false;
        return true;
    };
    if (!valid(num, true) || !valid(den, false))
        throw CacheError("malformed rational: '" + s + "'");
    Rational out{Integer(num), Integer(den)};
    if (out.get_den() == 0) throw CacheError("zero denominator: '" + s + "'");
    out.canonicalize();
    return out;
}

} // namespace fanoqc
