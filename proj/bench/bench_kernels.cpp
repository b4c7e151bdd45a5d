// Wall-clock comparison of the OpenMP kernels against their serial
// references. Each kernel pair is checked for equal output before timing.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "mcx/encode.hpp"
#include "mcx/hopf.hpp"
#include "mcx/recon.hpp"

using namespace mcx;

namespace {

double best_ms(int reps, const std::function<void()>& body) {
    double best = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        const auto t1 = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (r == 0 || ms < best) best = ms;
    }
    return best;
}

void row(const std::string& name, double serial_ms, double parallel_ms) {
    std::printf("%-28s %10.2f ms %10.2f ms %8.2fx\n", name.c_str(), serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

// Path, not cycle: the canonical search rejects orbits past its work cap,
// and a cycle is vertex-transitive.
MultiComplex path(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.push_back({v, v + 1});
    return from_graph(n, edges);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs parallel kernel timings"};
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    int reps = 3;
    int census_n = 6;
    int scan_n = 5;
    int path_n = 12;
    app.add_option("--jobs", jobs, "worker threads for the parallel kernels");
    app.add_option("--reps", reps, "repetitions per kernel; best time wins");
    app.add_option("--census-n", census_n, "census vertex count");
    app.add_option("--scan-n", scan_n, "reconstruction scan vertex count");
    app.add_option("--path-n", path_n, "coproduct input path length");
    CLI11_PARSE(app, argc, argv);

    std::printf("jobs=%d reps=%d\n", jobs, reps);
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    const auto c = path(path_n);
    if (coproduct_masks_serial(c) != coproduct_masks_parallel(c)) {
        std::fprintf(stderr, "coproduct kernels disagree\n");
        return 1;
    }
    row("coproduct P" + std::to_string(path_n),
        best_ms(reps, [&] { coproduct_masks_serial(c); }),
        best_ms(reps, [&] { coproduct_masks_parallel(c); }));

    if (detail::graph_census_serial(census_n) != detail::graph_census_parallel(census_n, jobs)) {
        std::fprintf(stderr, "census kernels disagree\n");
        return 1;
    }
    row("census n=" + std::to_string(census_n),
        best_ms(reps, [&] { detail::graph_census_serial(census_n); }),
        best_ms(reps, [&] { detail::graph_census_parallel(census_n, jobs); }));

    const auto serial_scan = scan_counterexamples(scan_n, DeckKind::vertex_one_deleted, 1);
    const auto parallel_scan = scan_counterexamples(scan_n, DeckKind::vertex_one_deleted, jobs);
    if (serial_scan.pairs != parallel_scan.pairs ||
        serial_scan.class_count != parallel_scan.class_count) {
        std::fprintf(stderr, "scan kernels disagree\n");
        return 1;
    }
    row("scan n=" + std::to_string(scan_n),
        best_ms(reps, [&] { scan_counterexamples(scan_n, DeckKind::vertex_one_deleted, 1); }),
        best_ms(reps, [&] { scan_counterexamples(scan_n, DeckKind::vertex_one_deleted, jobs); }));

    return 0;
}
