/* Compares the serial and OpenMP fill paths on workloads big enough to show
 * a difference, and insists on identical tables before reporting timings.
 * Not a registered test; build and run it by hand when touching the fill
 * loops. */

#include "fanoqc/multipoint.hpp"
#include "fanoqc/twopoint.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

using namespace fanoqc;

namespace {

double seconds(const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main() {
    {
        // well past the quantum window; the table itself has no degree cap
        Target t = validate_target(8, {7});
        const int dmax = 12;
        OnePointTable one(t);
        one.v(dmax); // warm the shared series cache outside the timings

        TwoPointTable serial(one);
        TwoPointTable parallel(one);
        const double ts = seconds([&] { serial.fill_to(dmax, false); });
        const double tp = seconds([&] { parallel.fill_to(dmax, true); });

        for (int d = 1; d <= dmax; ++d)
            if (serial.matrix(d) != parallel.matrix(d)) {
                std::fprintf(stderr, "two-point tables diverge at degree %d\n", d);
                return 1;
            }
        std::printf("two-point fill, %s, d <= %d: serial %.3fs, parallel %.3fs (x%.2f)\n",
                    describe(t).c_str(), dmax, ts, tp, tp > 0 ? ts / tp : 0.0);
    }

    {
        Target t = validate_target(6, {5});
        OnePointTable one(t);
        one.v(3);

        MultipointEngine serial(one, 5);
        MultipointEngine parallel(one, 5);
        auto fill = [](MultipointEngine& e, bool par) {
            for (int p = 2; p <= 5; ++p)
                for (int d = 1; d <= 3; ++d) e.solve_layer(p, d, par);
        };
        const double ts = seconds([&] { fill(serial, false); });
        const double tp = seconds([&] { fill(parallel, true); });

        if (serial.store() != parallel.store()) {
            std::fprintf(stderr, "multipoint stores diverge\n");
            return 1;
        }
        std::printf("multipoint layers, %s, p <= 5, d <= 3, %zu values: "
                    "serial %.3fs, parallel %.3fs (x%.2f)\n",
                    describe(t).c_str(), serial.store().size(), ts, tp,
                    tp > 0 ? ts / tp : 0.0);
    }

    return 0;
}
