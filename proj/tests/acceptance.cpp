/* End-to-end acceptance run.  Each numbered block prints exactly one
 * PASS/FAIL line with its wall time and budget; the process exits 0 only if
 * every block passes.  Usage: acceptance <path-to-cli> <path-to-scripts>. */

#include "fanoqc/ifunction.hpp"
#include "fanoqc/multipoint.hpp"
#include "fanoqc/quantum.hpp"
#include "fanoqc/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace fanoqc;

namespace {

std::string g_cli;
std::string g_scripts;
int g_failures = 0;

struct Outcome {
    bool ok = true;
    std::string detail;
};

void criterion(int idx, const std::string& name, double limit_s,
               const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& ex) {
        out.ok = false;
        out.detail = std::string("exception: ") + ex.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > limit_s) {
        out.ok = false;
        if (!out.detail.empty()) out.detail += "; ";
        out.detail += "over time budget";
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs, budget %.0fs", secs, limit_s);
    std::cout << (out.ok ? "PASS" : "FAIL") << " [" << idx << "] " << name << " (" << timing
              << ")";
    if (!out.ok && !out.detail.empty()) std::cout << "\n       " << out.detail;
    std::cout << "\n" << std::flush;
    if (!out.ok) ++g_failures;
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& cmd) {
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    RunResult res;
    if (!pipe) return res;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

Outcome quintic_table() {
    const std::string expect = "H*1 = H\n"
                               "H*H = H^2 + 120q\n"
                               "H*H^2 = H^3 + 770qH\n"
                               "H*H^3 = H^4 + 1345qH^2 + 211200q^2\n"
                               "H*H^4 = H^5 + 770qH^3 + 692500q^2H\n"
                               "H*H^5 = 120qH^4 + 211200q^2H^2 + 31320000q^3\n";
    RunResult res = run(g_cli + " qh --ambient 6 --degrees 5");
    if (res.exit_code != 0) return {false, "cli exited " + std::to_string(res.exit_code)};
    if (res.output != expect)
        return {false, "table mismatch, cli printed:\n" + res.output};
    return {};
}

Outcome twisted_cubics() {
    RunResult res = run(g_cli + " count --ambient 6 --degrees 5 --through-two-points 3");
    if (res.exit_code != 0) return {false, "cli exited " + std::to_string(res.exit_code)};
    if (res.output != "2088000\n") return {false, "expected 2088000, got: " + res.output};
    return {};
}

Outcome series_oracle() {
    RunResult res = run("python3 " + g_scripts + "/i_function_expansion.py --check");
    if (res.exit_code != 0)
        return {false, "script check exited " + std::to_string(res.exit_code) + ":\n" +
                           res.output};

    auto rv = [](std::initializer_list<const char*> parts) {
        std::vector<Rational> out;
        for (const char* p : parts) out.push_back(rational_from_string(p));
        return out;
    };
    if (i_function_vector(validate_target(6, {5}), 1) !=
        rv({"120", "530", "-605", "-470", "2620", "-5240"}))
        return {false, "quintic degree-1 vector disagrees with the frozen expansion"};
    if (i_function_vector(validate_target(4, {}), 1) != rv({"1", "-5", "15", "-35", "70"}))
        return {false, "P^4 degree-1 vector disagrees with the frozen expansion"};
    return {};
}

Outcome clock_rings() {
    for (int n = 2; n <= 6; ++n) {
        Target t = validate_target(n, {});
        OnePointTable one(t);
        TwoPointTable two(one);
        QuantumRing ring(two);
        for (int a = 0; a <= n; ++a)
            for (int b = 0; b <= n; ++b) {
                const auto& prod = ring.product(a, b);
                for (int j = 0; j <= n; ++j)
                    for (int d = 0; d <= t.d_max; ++d) {
                        Rational want(0);
                        if (a + b <= n && j == a + b && d == 0) want = 1;
                        if (a + b > n && j == a + b - n - 1 && d == 1) want = 1;
                        if (prod[static_cast<std::size_t>(j)][d] != want) {
                            std::ostringstream ss;
                            ss << "P^" << n << ": H^" << a << "*H^" << b << " has coefficient "
                               << to_fraction_string(prod[static_cast<std::size_t>(j)][d])
                               << " at H^" << j << " q^" << d;
                            return {false, ss.str()};
                        }
                    }
            }
    }
    return {};
}

Outcome run_grid(bool quantum) {
    VerifyOptions opt;
    opt.quantum = quantum;
    opt.multipoint = 0;
    opt.parallel = true;
    for (const Target& t : fano_grid(8)) {
        VerifyReport rep = verify_target(t, opt);
        for (const auto& c : rep.results)
            if (!c.ok) return {false, rep.target_name + ": " + c.name + ": " + c.detail};
    }
    return {};
}

Outcome quintic_multipoint() {
    Target t = validate_target(6, {5});
    VerifyOptions opt;
    opt.quantum = false;
    opt.multipoint = 3;
    opt.parallel = true;
    VerifyReport rep = verify_target(t, opt);
    for (const auto& c : rep.results)
        if (!c.ok) return {false, c.name + ": " + c.detail};

    OnePointTable one(t);
    MultipointEngine engine(one, 3);
    if (engine.npoint(1, {{1, 0}, {2, 0}, {4, 0}}) != 3850)
        return {false, "<H, H^2, H^4>_1 != 3850"};
    if (engine.npoint(1, {{2, 0}, {2, 0}, {3, 0}}) != 9975)
        return {false, "<H^2, H^2, H^3>_1 != 9975"};
    return {};
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <path-to-cli> <path-to-scripts>\n";
        return 2;
    }
    g_cli = argv[1];
    g_scripts = argv[2];

    criterion(1, "quintic quantum multiplication table", 10, quintic_table);
    criterion(2, "twisted cubics through two points", 10, twisted_cubics);
    criterion(3, "series coefficients against the independent script", 60, series_oracle);
    criterion(4, "projective spaces give the clock ring", 10, clock_rings);
    criterion(5, "two-point identity suites across the Fano grid", 60,
              [] { return run_grid(false); });
    criterion(6, "quantum ring laws across the Fano grid", 60, [] { return run_grid(true); });
    criterion(7, "multipoint engine against the two-point ledger", 120, quintic_multipoint);

    if (g_failures) {
        std::cout << g_failures << " criteria failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
