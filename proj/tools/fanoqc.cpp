#include "fanoqc/cache.hpp"
#include "fanoqc/errors.hpp"
#include "fanoqc/multipoint.hpp"
#include "fanoqc/quantum.hpp"
#include "fanoqc/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace fanoqc;
using nlohmann::json;

std::string plain(const Rational& x) {
    return x.get_den() == 1 ? x.get_num().get_str() : to_fraction_string(x);
}

json target_json(const Target& t) {
    return {{"n", t.n}, {"degrees", t.degrees}, {"fingerprint", t.fingerprint()}};
}

// one product term, e.g. "H^2", "120q", "770qH", "31320000q^3"
std::string render_term(const Rational& c, int qpow, int hpow) {
    std::string qs = qpow == 0 ? "" : (qpow == 1 ? "q" : "q^" + std::to_string(qpow));
    std::string hs = hpow == 0 ? "" : (hpow == 1 ? "H" : "H^" + std::to_string(hpow));
    std::string cs;
    if (!(c == 1) || (qs.empty() && hs.empty()))
        cs = c.get_den() == 1 ? c.get_num().get_str() : "(" + to_fraction_string(c) + ")";
    return cs + qs + hs;
}

int run_qh(const Target& target, const std::string& format) {
    OnePointTable one(target);
    TwoPointTable two(one);
    two.fill_to(target.d_max, true);
    QuantumRing ring(two);
    const int r = target.r;

    if (format == "machine") {
        json rows = json::array();
        for (int a = 0; a <= r; ++a) {
            const auto& prod = ring.product(1, a);
            json terms = json::array();
            for (int d = 0; d <= target.d_max; ++d)
                for (int j = 0; j <= r; ++j) {
                    const Rational& c = prod[static_cast<std::size_t>(j)][d];
                    if (c != 0) terms.push_back({{"c", to_fraction_string(c)}, {"h", j}, {"q", d}});
                }
            rows.push_back({{"a", a}, {"terms", std::move(terms)}});
        }
        json root{{"convention", kConventionVersion},
                  {"target", target_json(target)},
                  {"rows", std::move(rows)}};
        std::cout << root.dump(2) << "\n";
        return 0;
    }

    for (int a = 0; a <= r; ++a) {
        const auto& prod = ring.product(1, a);
        std::string lhs = a == 0 ? "H*1" : (a == 1 ? "H*H" : "H*H^" + std::to_string(a));
        std::string rhs;
        for (int d = 0; d <= target.d_max; ++d)
            for (int j = r; j >= 0; --j) {
                const Rational& c = prod[static_cast<std::size_t>(j)][d];
                if (c == 0) continue;
                if (!rhs.empty()) rhs += " + ";
                rhs += render_term(c, d, j);
            }
        if (rhs.empty()) rhs = "0";
        std::cout << lhs << " = " << rhs << "\n";
    }
    return 0;
}

struct Query {
    std::string type;
    std::vector<std::pair<int, int>> ins;
    int d = 0;
    // the (a, c) / (a, b, k) raw fields for echoing
    std::vector<int> raw;
};

void print_value(const std::string& format, const Query& q, const Rational& value,
                 bool in_dimension, const std::string& note) {
    if (format == "machine") {
        json jq{{"type", q.type}, {"d", q.d}};
        json ins = json::array();
        for (const auto& [a, k] : q.ins) ins.push_back(json::array({a, k}));
        jq["ins"] = std::move(ins);
        json root{{"convention", kConventionVersion},
                  {"query", std::move(jq)},
                  {"value", to_fraction_string(value)},
                  {"in_dimension", in_dimension}};
        if (!note.empty()) root["note"] = note;
        std::cout << root.dump(2) << "\n";
        return;
    }
    std::cout << plain(value);
    if (!note.empty()) std::cout << " # " << note;
    std::cout << "\n";
}

int run_invariant(const Target& target, const std::string& format,
                  const std::vector<int>& one_q, const std::vector<int>& two_q,
                  const std::string& npoint_q, int max_points) {
    OnePointTable one(target);
    const int r = target.r;
    const int f = target.f;

    if (!one_q.empty()) {
        const int a = one_q[0], c = one_q[1], d = one_q[2];
        Query q{"one", {{a, c}}, d, one_q};
        Rational v = one.one_point(a, c, d);
        bool in_dim = a + c == r + f * d - 2;
        std::string note = in_dim ? ""
                                  : "off-dimension: need a+c = r+f*d-2 = " +
                                        std::to_string(r + f * d - 2) + ", got " +
                                        std::to_string(a + c);
        print_value(format, q, v, in_dim, note);
        return 0;
    }

    if (!two_q.empty()) {
        const int a = two_q[0], b = two_q[1], k = two_q[2], d = two_q[3];
        TwoPointTable two(one);
        Query q{"two", {{a, 0}, {b, k}}, d, two_q};
        Rational v = two.two_point(a, b, k, d);
        bool in_dim = k == two.forced_psi(a, b, d);
        std::string note = in_dim ? ""
                                  : "off-dimension: need a+b+k = r+f*d-1 = " +
                                        std::to_string(r + f * d - 1) + ", got " +
                                        std::to_string(a + b + k);
        print_value(format, q, v, in_dim, note);
        return 0;
    }

    // "a1:k1,a2:k2,... d"
    std::string s = npoint_q;
    auto bad = [&]() -> QueryError {
        return QueryError("cannot parse npoint query '" + npoint_q +
                          "', expected \"a1:k1,a2:k2,... d\"");
    };
    auto space = s.find_last_of(" \t");
    if (space == std::string::npos) throw bad();
    int d = 0;
    std::vector<std::pair<int, int>> ins;
    try {
        d = std::stoi(s.substr(space + 1));
        std::string list = s.substr(0, space);
        std::size_t pos = 0;
        while (pos < list.size()) {
            auto comma = list.find(',', pos);
            std::string item = list.substr(pos, comma == std::string::npos ? comma : comma - pos);
            auto colon = item.find(':');
            if (colon == std::string::npos) throw bad();
            ins.emplace_back(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    } catch (const std::logic_error&) {
        throw bad();
    }
    if (ins.empty()) throw bad();

    MultipointEngine engine(one, std::max(max_points, 2));
    Query q{"npoint", ins, d, {}};
    Rational v = engine.npoint(d, ins);
    long total = 0;
    for (const auto& [a, k] : ins) total += a + k;
    const long expect = r + static_cast<long>(f) * d + static_cast<long>(ins.size()) - 3;
    bool in_dim = total == expect;
    std::string note = in_dim ? ""
                              : "off-dimension: need sum(a_i+k_i) = " + std::to_string(expect) +
                                    ", got " + std::to_string(total);
    print_value(format, q, v, in_dim, note);
    return 0;
}

int run_count(const Target& target, const std::string& format, int d) {
    OnePointTable one(target);
    TwoPointTable two(one);
    QuantumRing ring(two);
    Rational v = ring.two_point_count(d);
    if (format == "machine") {
        json root{{"convention", kConventionVersion},
                  {"target", target_json(target)},
                  {"degree", d},
                  {"count", to_fraction_string(v)}};
        std::cout << root.dump(2) << "\n";
    } else {
        std::cout << plain(v) << "\n";
    }
    return 0;
}

int run_verify(const std::optional<Target>& single, int grid_max, int max_degree, int max_points,
               const std::string& format, const std::string& cache_path) {
    std::vector<Target> targets;
    if (single)
        targets.push_back(*single);
    else
        targets = fano_grid(grid_max);

    VerifyOptions opt;
    opt.max_degree = max_degree;
    opt.multipoint = max_points;
    opt.parallel = true;

    bool all_ok = true;
    json jtargets = json::array();
    for (const auto& t : targets) {
        VerifyReport rep = verify_target(t, opt);
        all_ok = all_ok && rep.all_ok();
        if (format == "machine") {
            json checks = json::array();
            for (const auto& c : rep.results) {
                json jc{{"name", c.name}, {"checks", c.checks}, {"ok", c.ok}};
                if (!c.ok) jc["detail"] = c.detail;
                checks.push_back(std::move(jc));
            }
            jtargets.push_back({{"target", rep.target_name}, {"checks", std::move(checks)}});
        } else {
            for (const auto& c : rep.results) {
                std::cout << (c.ok ? "ok   " : "FAIL ") << rep.target_name << ": " << c.name
                          << " (" << c.checks << " checks)\n";
                if (!c.ok) std::cout << "     " << c.detail << "\n";
            }
        }
    }

    json jcache;
    if (!cache_path.empty()) {
        CacheBundle bundle = parse_cache(read_file(cache_path));
        EquivalenceReport eq = verify_cache_equivalence(bundle);
        all_ok = all_ok && eq.ok;
        if (format == "machine") {
            jcache = {{"target", describe(bundle.target)}, {"ok", eq.ok}, {"lines", eq.lines}};
        } else {
            for (const auto& line : eq.lines) {
                bool fail = line.rfind("FAIL ", 0) == 0;
                std::cout << (fail ? "FAIL " : "ok   ") << "cache " << describe(bundle.target)
                          << ": " << (fail ? line.substr(5) : line) << "\n";
            }
        }
    }

    if (format == "machine") {
        json root{{"convention", kConventionVersion}, {"ok", all_ok}, {"targets", std::move(jtargets)}};
        if (!jcache.is_null()) root["cache"] = std::move(jcache);
        std::cout << root.dump(2) << "\n";
    } else {
        std::cout << (all_ok ? "all checks passed" : "FAILURES detected") << "\n";
    }
    return all_ok ? 0 : 1;
}

int run_cache_export(const Target& target, const std::string& path, int max_degree,
                     int max_points) {
    const int D = max_degree < 0 ? target.d_max : max_degree;
    OnePointTable one(target);
    TwoPointTable two(one);
    two.fill_to(D, true);
    std::optional<MultipointEngine> engine;
    if (max_points >= 2) {
        engine.emplace(one, max_points);
        for (int p = 2; p <= max_points; ++p)
            for (int d = 1; d <= D; ++d) engine->solve_layer(p, d, true);
    }
    CacheBundle bundle = snapshot(one, &two, engine ? &*engine : nullptr);
    write_cache_file(path, bundle);
    std::cout << "wrote " << path << ": target " << describe(target) << ", one-point degrees "
              << bundle.one_point.size() << ", two-point degrees " << bundle.two_point.size()
              << ", multipoint entries " << bundle.multipoint.size() << "\n";
    return 0;
}

int run_cache_import(const Target& target, const std::string& path) {
    CacheBundle bundle = import_cache(read_file(path), target);
    std::cout << "imported " << path << ": target " << describe(bundle.target)
              << ", one-point degrees " << bundle.one_point.size() << ", two-point degrees "
              << bundle.two_point.size() << ", multipoint entries " << bundle.multipoint.size()
              << " (fingerprint and spot identities ok)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact genus-zero Gromov-Witten invariants and small quantum cohomology "
                 "of Fano complete intersections"};
    app.require_subcommand(1);

    int ambient = 0;
    std::vector<int> degrees;
    int max_degree = -1;
    int max_points = 4;
    std::string format = "human";
    std::string cache_path;

    auto add_target = [&](CLI::App* cmd, bool required) {
        auto* o = cmd->add_option("--ambient", ambient, "ambient projective dimension n");
        if (required) o->required();
        cmd->add_option("--degrees", degrees, "hypersurface degrees l1,l2,...")
            ->delimiter(',');
    };
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "human or machine")
            ->check(CLI::IsMember({"human", "machine"}));
    };

    auto* qh = app.add_subcommand("qh", "print the small quantum multiplication table");
    add_target(qh, true);
    add_format(qh);

    auto* inv = app.add_subcommand("invariant", "evaluate one invariant");
    add_target(inv, true);
    add_format(inv);
    std::vector<int> one_q, two_q;
    std::string npoint_q;
    inv->add_option("--one", one_q, "one-point query: a c d")->expected(3);
    inv->add_option("--two", two_q, "two-point query: a b k d")->expected(4);
    inv->add_option("--npoint", npoint_q, "n-point query: \"a1:k1,a2:k2,... d\"");
    inv->add_option("--max-points", max_points, "insertion bound for --npoint");

    auto* count = app.add_subcommand("count", "rational curves through two general points");
    add_target(count, true);
    add_format(count);
    int count_d = 0;
    count->add_option("--through-two-points", count_d, "curve degree d")->required();

    auto* verify = app.add_subcommand("verify", "run the exact identity and ring suites");
    add_target(verify, false);
    add_format(verify);
    int grid_max = 8;
    verify->add_option("--grid-max", grid_max, "largest ambient dimension when no target given");
    verify->add_option("--max-degree", max_degree, "cap on curve degree (default d_max)");
    int verify_points = 0;
    verify->add_option("--max-points", verify_points,
                       "enable multipoint oracles up to this many insertions");
    verify->add_option("--cache", cache_path, "recompute and compare a cache file");

    auto* cache = app.add_subcommand("cache", "persist or validate computed tables");
    cache->require_subcommand(1);
    auto* cexport = cache->add_subcommand("export", "compute tables and write them");
    add_target(cexport, true);
    cexport->add_option("--max-degree", max_degree, "fill degree bound (default d_max)");
    int export_points = 2;
    cexport->add_option("--max-points", export_points, "multipoint layer bound (>= 2 to enable)");
    cexport->add_option("--cache", cache_path, "output path")->required();
    auto* cimport = cache->add_subcommand("import", "read a cache file and validate it");
    add_target(cimport, true);
    cimport->add_option("--cache", cache_path, "input path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        std::optional<Target> target;
        if (ambient > 0) target = validate_target(ambient, degrees);

        if (qh->parsed()) return run_qh(*target, format);
        if (inv->parsed()) {
            const int given = (!one_q.empty()) + (!two_q.empty()) + (!npoint_q.empty());
            if (given != 1)
                throw QueryError("invariant needs exactly one of --one, --two, --npoint");
            return run_invariant(*target, format, one_q, two_q, npoint_q, max_points);
        }
        if (count->parsed()) return run_count(*target, format, count_d);
        if (verify->parsed())
            return run_verify(target, grid_max, max_degree, verify_points, format, cache_path);
        if (cexport->parsed()) return run_cache_export(*target, cache_path, max_degree, export_points);
        if (cimport->parsed()) return run_cache_import(*target, cache_path);
    } catch (const fanoqc::Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
