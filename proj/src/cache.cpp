#include "fanoqc/cache.hpp"

#include "fanoqc/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fanoqc {

using nlohmann::json;

CacheBundle snapshot(const OnePointTable& one, const TwoPointTable* two,
                     const MultipointEngine* multi) {
    CacheBundle b;
    b.target = one.target();
    b.one_point = one.snapshot();
    if (two) {
        for (int d = 1; d <= two->filled_to(); ++d) b.two_point[d] = two->matrix(d);
    }
    if (multi) b.multipoint = multi->store();
    return b;
}

std::string serialize_cache(const CacheBundle& bundle) {
    json root;
    root["schema"] = kCacheSchema;
    root["convention"] = kConventionVersion;
    root["target"] = {{"n", bundle.target.n},
                      {"degrees", bundle.target.degrees},
                      {"fingerprint", bundle.target.fingerprint()}};

    json one = json::object();
    for (const auto& [d, vec] : bundle.one_point) {
        json arr = json::array();
        for (const auto& x : vec) arr.push_back(to_fraction_string(x));
        one[std::to_string(d)] = std::move(arr);
    }
    root["one_point"] = std::move(one);

    json two = json::object();
    for (const auto& [d, mat] : bundle.two_point) {
        json rows = json::array();
        for (const auto& row : mat) {
            json cells = json::array();
            for (const auto& x : row) cells.push_back(to_fraction_string(x));
            rows.push_back(std::move(cells));
        }
        two[std::to_string(d)] = std::move(rows);
    }
    root["two_point"] = std::move(two);

    json multi = json::array();
    for (const auto& [key, val] : bundle.multipoint) {
        json ins = json::array();
        for (const auto& [a, k] : key.ins) ins.push_back(json::array({a, k}));
        multi.push_back({{"d", key.d}, {"ins", std::move(ins)}, {"v", to_fraction_string(val)}});
    }
    root["multipoint"] = std::move(multi);

    return root.dump(2) + "\n";
}

namespace {

[[noreturn]] void malformed(const std::string& what) {
    throw CacheError("cache file malformed: " + what);
}

int parse_degree_key(const std::string& s) {
    try {
        std::size_t pos = 0;
        int d = std::stoi(s, &pos);
        if (pos != s.size() || d < 1) malformed("bad degree key '" + s + "'");
        return d;
    } catch (const std::logic_error&) {
        malformed("bad degree key '" + s + "'");
    }
}

// Degrees must be exactly 1..D: the fills are contiguous, so holes can only
// come from hand-edited files.
template <typename M>
void require_contiguous(const M& table, const char* section) {
    int expect = 1;
    for (const auto& kv : table) {
        if (kv.first != expect) malformed(std::string(section) + " degrees are not contiguous from 1");
        ++expect;
    }
}

} // namespace

CacheBundle parse_cache(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& ex) {
        malformed(std::string("not valid JSON (") + ex.what() + ")");
    }
    if (!root.is_object()) malformed("top level is not an object");
    for (const char* field : {"schema", "convention", "target", "one_point", "two_point", "multipoint"})
        if (!root.contains(field)) malformed(std::string("missing field '") + field + "'");

    if (!root["schema"].is_number_integer() || root["schema"].get<int>() != kCacheSchema)
        throw CacheError("cache schema version mismatch: expected " +
                         std::to_string(kCacheSchema));
    if (!root["convention"].is_string() ||
        root["convention"].get<std::string>() != kConventionVersion)
        throw CacheError("cache convention version mismatch: expected " +
                         std::string(kConventionVersion));

    const json& jt = root["target"];
    if (!jt.is_object() || !jt.contains("n") || !jt.contains("degrees") ||
        !jt.contains("fingerprint"))
        malformed("bad target record");

    CacheBundle b;
    try {
        b.target = validate_target(jt["n"].get<int>(), jt["degrees"].get<std::vector<int>>());
    } catch (const json::exception&) {
        malformed("bad target record");
    } catch (const TargetError& ex) {
        throw CacheError(std::string("cache target is unsupported: ") + ex.what());
    }
    if (jt["fingerprint"].get<std::string>() != b.target.fingerprint())
        malformed("stored fingerprint does not match the stored target");

    const int r = b.target.r;

    if (!root["one_point"].is_object()) malformed("one_point is not an object");
    for (const auto& [key, arr] : root["one_point"].items()) {
        int d = parse_degree_key(key);
        if (!arr.is_array() || static_cast<int>(arr.size()) != r + 1)
            malformed("one_point[" + key + "] must have r+1 entries");
        std::vector<Rational> vec;
        vec.reserve(arr.size());
        for (const auto& cell : arr) {
            if (!cell.is_string()) malformed("one_point[" + key + "] has a non-string entry");
            vec.push_back(rational_from_string(cell.get<std::string>()));
        }
        b.one_point.emplace(d, std::move(vec));
    }
    require_contiguous(b.one_point, "one_point");

    if (!root["two_point"].is_object()) malformed("two_point is not an object");
    for (const auto& [key, rows] : root["two_point"].items()) {
        int d = parse_degree_key(key);
        if (!rows.is_array() || static_cast<int>(rows.size()) != r + 1)
            malformed("two_point[" + key + "] must have r+1 rows");
        std::vector<std::vector<Rational>> mat;
        for (const auto& row : rows) {
            if (!row.is_array() || static_cast<int>(row.size()) != r + 1)
                malformed("two_point[" + key + "] has a row of wrong length");
            std::vector<Rational> out;
            out.reserve(row.size());
            for (const auto& cell : row) {
                if (!cell.is_string()) malformed("two_point[" + key + "] has a non-string cell");
                out.push_back(rational_from_string(cell.get<std::string>()));
            }
            mat.push_back(std::move(out));
        }
        b.two_point.emplace(d, std::move(mat));
    }
    require_contiguous(b.two_point, "two_point");

    if (!root["multipoint"].is_array()) malformed("multipoint is not an array");
    for (const auto& entry : root["multipoint"]) {
        if (!entry.is_object() || !entry.contains("d") || !entry.contains("ins") ||
            !entry.contains("v"))
            malformed("bad multipoint entry");
        int d = 0;
        std::vector<std::pair<int, int>> ins;
        try {
            d = entry["d"].get<int>();
            for (const auto& pair : entry["ins"]) {
                if (!pair.is_array() || pair.size() != 2) malformed("bad multipoint insertion");
                ins.emplace_back(pair[0].get<int>(), pair[1].get<int>());
            }
        } catch (const json::exception&) {
            malformed("bad multipoint entry");
        }
        if (!entry["v"].is_string()) malformed("multipoint value is not a string");
        Rational val = rational_from_string(entry["v"].get<std::string>());

        InvariantKey key = InvariantKey::canonical(d, ins);
        const int p = key.points();
        if (d < 1 || p < 2) malformed("multipoint key " + key.str() + " out of range");
        long total = 0;
        for (const auto& [a, k] : key.ins) {
            if (a < 0 || a > r || k < 0) malformed("multipoint key " + key.str() + " out of range");
            total += a + k;
        }
        if (total != r + static_cast<long>(b.target.f) * d + p - 3)
            malformed("multipoint key " + key.str() + " violates the dimension filter");
        auto [it, inserted] = b.multipoint.emplace(key, val);
        if (!inserted && it->second != val)
            malformed("duplicate multipoint key " + it->first.str() + " with conflicting values");
    }

    return b;
}

namespace {

void spot_identities(const CacheBundle& b) {
    // One-point: recompute the smallest cached degree from the series.
    if (!b.one_point.empty()) {
        const auto& [d, cached] = *b.one_point.begin();
        std::vector<Rational> fresh = i_function_vector(b.target, d);
        for (std::size_t j = 0; j < fresh.size(); ++j)
            if (fresh[j] != cached[j])
                throw CacheError("spot identity failed: one_point degree " + std::to_string(d) +
                                 " index " + std::to_string(j) + " is " +
                                 to_fraction_string(cached[j]) + ", recomputed " +
                                 to_fraction_string(fresh[j]));
    }

    const int r = b.target.r;
    const int f = b.target.f;

    // Two-point: full recomputation of degree 1, symmetry at every degree.
    if (!b.two_point.empty()) {
        OnePointTable one(b.target);
        TwoPointTable two(one);
        two.fill_to(1);
        const auto& mat1 = b.two_point.at(1);
        for (int a = 0; a <= r; ++a)
            for (int bb = 0; bb <= r; ++bb) {
                const int k = two.forced_psi(a, bb, 1);
                Rational fresh = k < 0 ? Rational(0) : two.lookup(a, bb, k, 1);
                if (mat1[static_cast<std::size_t>(a)][static_cast<std::size_t>(bb)] != fresh)
                    throw CacheError(
                        "spot identity failed: two_point degree 1 entry (" + std::to_string(a) +
                        "," + std::to_string(bb) + ") is " +
                        to_fraction_string(
                            mat1[static_cast<std::size_t>(a)][static_cast<std::size_t>(bb)]) +
                        ", recomputed " + to_fraction_string(fresh));
            }
        for (const auto& [d, mat] : b.two_point) {
            for (int a = 0; a <= r; ++a) {
                int bb = r + f * d - 1 - a; // the k = 0 diagonal
                if (bb < 0 || bb > r) continue;
                if (mat[static_cast<std::size_t>(a)][static_cast<std::size_t>(bb)] !=
                    mat[static_cast<std::size_t>(bb)][static_cast<std::size_t>(a)])
                    throw CacheError("spot identity failed: two_point degree " +
                                     std::to_string(d) + " unmixed values at (" +
                                     std::to_string(a) + "," + std::to_string(bb) +
                                     ") are not symmetric");
            }
        }
    }

    // Multipoint: string zeros, divisor reductions against cached data.
    for (const auto& [key, val] : b.multipoint) {
        bool pure = true;
        for (const auto& [a, k] : key.ins) pure = pure && k == 0;
        if (!pure) continue;
        const int p = key.points();
        if (p >= 3 && key.ins.front().first == 0 && key.ins.front().second == 0) {
            if (val != 0)
                throw CacheError("spot identity failed: " + key.str() +
                                 " must vanish (fundamental class insertion) but is " +
                                 to_fraction_string(val));
        }
        auto div = std::find(key.ins.begin(), key.ins.end(), std::make_pair(1, 0));
        if (div == key.ins.end()) continue;
        std::vector<std::pair<int, int>> rest(key.ins.begin(), key.ins.end());
        rest.erase(rest.begin() + (div - key.ins.begin()));
        Rational reduced;
        bool have = false;
        if (p - 1 >= 3) {
            auto it = b.multipoint.find(InvariantKey::canonical(key.d, rest));
            if (it != b.multipoint.end()) {
                reduced = it->second;
                have = true;
            }
        } else if (p - 1 == 2) {
            auto it = b.two_point.find(key.d);
            if (it != b.two_point.end()) {
                // all-psi-zero dimension forces the stored k = 0 slot
                reduced = it->second[static_cast<std::size_t>(rest[0].first)]
                                    [static_cast<std::size_t>(rest[1].first)];
                have = true;
            }
        }
        if (have && val != Rational(key.d) * reduced)
            throw CacheError("spot identity failed: " + key.str() + " is " +
                             to_fraction_string(val) + " but the divisor reduction gives " +
                             to_fraction_string(Rational(key.d) * reduced));
    }
}

} // namespace

CacheBundle import_cache(const std::string& text, const Target& expected) {
    CacheBundle b = parse_cache(text);
    if (b.target.fingerprint() != expected.fingerprint())
        throw CacheError("cache fingerprint " + b.target.fingerprint() +
                         " does not match the requested target " + expected.fingerprint());
    spot_identities(b);
    return b;
}

void write_cache_file(const std::string& path, const CacheBundle& bundle) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CacheError("cannot open '" + path + "' for writing");
    out << serialize_cache(bundle);
    if (!out) throw CacheError("failed while writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

EquivalenceReport verify_cache_equivalence(const CacheBundle& bundle) {
    EquivalenceReport rep;
    auto fail = [&](const std::string& line) {
        rep.ok = false;
        rep.lines.push_back("FAIL " + line);
    };

    OnePointTable one(bundle.target);
    long checked = 0;
    for (const auto& [d, cached] : bundle.one_point) {
        const auto& fresh = one.v(d);
        for (std::size_t j = 0; j < fresh.size(); ++j) {
            ++checked;
            if (fresh[j] != cached[j]) {
                fail("one_point degree " + std::to_string(d) + " index " + std::to_string(j) +
                     ": cached " + to_fraction_string(cached[j]) + ", recomputed " +
                     to_fraction_string(fresh[j]));
            }
        }
    }
    rep.lines.push_back("one_point: " + std::to_string(checked) + " entries recomputed");

    TwoPointTable two(one);
    if (!bundle.two_point.empty()) two.fill_to(bundle.two_point.rbegin()->first);
    checked = 0;
    for (const auto& [d, cached] : bundle.two_point) {
        const auto& fresh = two.matrix(d);
        for (std::size_t a = 0; a < fresh.size(); ++a)
            for (std::size_t bb = 0; bb < fresh[a].size(); ++bb) {
                ++checked;
                if (fresh[a][bb] != cached[a][bb]) {
                    fail("two_point degree " + std::to_string(d) + " entry (" +
                         std::to_string(a) + "," + std::to_string(bb) + "): cached " +
                         to_fraction_string(cached[a][bb]) + ", recomputed " +
                         to_fraction_string(fresh[a][bb]));
                }
            }
    }
    rep.lines.push_back("two_point: " + std::to_string(checked) + " entries recomputed");

    int pmax = 2;
    for (const auto& kv : bundle.multipoint) pmax = std::max(pmax, kv.first.points());
    MultipointEngine engine(one, pmax);
    checked = 0;
    for (const auto& [key, val] : bundle.multipoint) {
        ++checked;
        Rational fresh = engine.npoint(key);
        if (fresh != val) {
            fail("multipoint " + key.str() + ": cached " + to_fraction_string(val) +
                 ", recomputed " + to_fraction_string(fresh));
        }
    }
    rep.lines.push_back("multipoint: " + std::to_string(checked) + " entries recomputed");

    return rep;
}

} // namespace fanoqc
