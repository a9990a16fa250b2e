#include "fanoqc/target.hpp"

#include "fanoqc/errors.hpp"

#include <numeric>

namespace fanoqc {

std::string Target::fingerprint() const {
    std::string out = "n" + std::to_string(n) + ";l";
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(degrees[i]);
    }
    out += ";r" + std::to_string(r) + ";f" + std::to_string(f) + ";L" + std::to_string(L);
    return out;
}

std::string describe(const Target& target) {
    if (target.degrees.empty()) return "P^" + std::to_string(target.n);
    std::string out = "X(";
    for (std::size_t i = 0; i < target.degrees.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(target.degrees[i]);
    }
    return out + ") in P^" + std::to_string(target.n);
}

Target validate_target(int n, const std::vector<int>& degrees) {
    if (n < 1) throw TargetError("ambient dimension must be >= 1");
    long sum = 0;
    for (int l : degrees) {
        if (l < 1) throw TargetError("hypersurface degrees must be >= 1");
        sum += l;
    }
    Target t;
    t.n = n;
    t.degrees = degrees;
    t.r = n - static_cast<int>(degrees.size());
    t.f = static_cast<int>(n + 1 - sum);
    if (t.f <= 1)
        throw TargetError("unsupported index: need n+1 - sum(degrees) >= 2, got " +
                          std::to_string(t.f));
    const int min_r = degrees.empty() ? 2 : 3;
    if (t.r < min_r)
        throw TargetError("unsupported dimension: need dim >= " + std::to_string(min_r) +
                          ", got " + std::to_string(t.r));
    t.L = 1;
    for (int l : degrees) t.L *= l;
    t.d_max = (t.r + 1) / t.f;
    return t;
}

} // namespace fanoqc
