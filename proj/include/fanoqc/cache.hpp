#pragma once

#include "fanoqc/multipoint.hpp"
#include "fanoqc/quantum.hpp"
#include "fanoqc/twopoint.hpp"

#include <map>
#include <string>
#include <vector>

namespace fanoqc {

inline constexpr int kCacheSchema = 1;

/* Version of the numerical conventions behind every stored value (index
 * order, psi normalization, sign of the matrix extraction).  Bumped whenever
 * a stored number would change meaning; imports require an exact match. */
inline constexpr const char* kConventionVersion = "fanoqc-conv-1";

/* Plain data exchanged with cache files.  `one_point` maps d to v(d),
 * `two_point` maps d to the dense [a][b] value matrix at the forced
 * psi-power, `multipoint` is the solved invariant store. */
struct CacheBundle {
    Target target;
    std::map<int, std::vector<Rational>> one_point;
    std::map<int, std::vector<std::vector<Rational>>> two_point;
    std::map<InvariantKey, Rational> multipoint;
};

// Collects current table contents; null sources contribute empty sections.
CacheBundle snapshot(const OnePointTable& one, const TwoPointTable* two,
                     const MultipointEngine* multi);

/* Deterministic JSON text: object keys sorted, rationals canonical
 * "num/den" strings, one fixed indentation.  parse(serialize(b)) == b and
 * serialize(parse(text)) == text for files this writer produced. */
std::string serialize_cache(const CacheBundle& bundle);

/* Structural parse: JSON shape, schema and convention versions, internal
 * fingerprint consistency, table dimensions, canonical multipoint keys,
 * dimension filter.  Throws CacheError with a located message. */
CacheBundle parse_cache(const std::string& text);

/* parse_cache + the import gate: the file's target must match `expected`,
 * and cheap spot identities must hold (v at the smallest cached degree is
 * recomputed from scratch; two-point degree-1 matrix recomputed; k = 0
 * symmetry in every cached degree; string zeros and divisor reductions on
 * cached multipoint values).  A tampered file fails here with the offending
 * entry named. */
CacheBundle import_cache(const std::string& text, const Target& expected);

void write_cache_file(const std::string& path, const CacheBundle& bundle);
std::string read_file(const std::string& path); // throws CacheError if unreadable

/* Recomputes every cached entry from scratch and compares.  Slower than the
 * import spot checks but complete; `verify --cache` uses it so that any
 * corruption is pinned to an exact index pair.  Returns a human-readable
 * list of check lines; `ok` reports the conjunction. */
struct EquivalenceReport {
    bool ok = true;
    std::vector<std::string> lines;
};
EquivalenceReport verify_cache_equivalence(const CacheBundle& bundle);

} // namespace fanoqc
