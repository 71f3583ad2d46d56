#include <benchmark/benchmark.h>

#include <limits>
#include <vector>

#include "lbscan/cell_domain.hpp"
#include "lbscan/cluster1d.hpp"
#include "lbscan/generators.hpp"
#include "lbscan/oracle.hpp"
#include "lbscan/rng.hpp"
#include "lbscan/sfc.hpp"

namespace {

using namespace lbscan;

void bm_curve_round_trip(benchmark::State& state) {
    const CurveKind k = CurveKind(state.range(0));
    const int order = int(state.range(1));
    const std::uint64_t total =
        curve_side(k, order) * curve_side(k, order);
    std::uint64_t idx = 0;
    for (auto _ : state) {
        const CellCoord cell = curve_cell(k, idx, order);
        benchmark::DoNotOptimize(curve_index(k, cell, order));
        idx = (idx + 7919) % total;  // stride through the curve
    }
}
BENCHMARK(bm_curve_round_trip)
    ->Args({int(CurveKind::hilbert), 10})
    ->Args({int(CurveKind::z_order), 10})
    ->Args({int(CurveKind::peano), 6});

void bm_oracle_query(benchmark::State& state) {
    GenParams gp;
    gp.n = std::size_t(state.range(0));
    gp.seed = 3;
    const Dataset ds = generate_dataset(DatasetKind::noisy, gp);
    KnnOracle oracle(ds, 14, std::numeric_limits<std::size_t>::max());
    Rng rng(4);
    for (auto _ : state) {
        const Point2D q{uniform_double(rng, 0.0, 1000.0),
                        uniform_double(rng, 0.0, 1000.0)};
        benchmark::DoNotOptimize(oracle.query(q));
    }
}
BENCHMARK(bm_oracle_query)->Arg(1000)->Arg(10000)->Arg(100000);

void bm_adaptive_refine(benchmark::State& state) {
    for (auto _ : state) {
        AdaptiveSfc sfc({0.0, 0.0, 1024.0, 1024.0}, CurveKind::hilbert, 4,
                        1.0);
        Rng rng(5);
        for (int step = 0; step < int(state.range(0)); ++step) {
            const std::size_t pos = uniform_index(rng, sfc.leaf_count());
            if (sfc.leaf_depth(pos) >= sfc.max_depth()) continue;
            benchmark::DoNotOptimize(sfc.refine(pos));
        }
    }
}
BENCHMARK(bm_adaptive_refine)->Arg(100)->Arg(1000);

// Full 1D discovery over a line of dense runs, unlimited budget.
void bm_dense_run_discovery(benchmark::State& state) {
    const std::size_t cells = std::size_t(state.range(0));
    const std::size_t min_pts = 4;
    Rng gen(6);
    std::vector<Point2D> pts;
    for (std::size_t i = 0; i < cells; ++i) {
        const bool dense = (i / 16) % 2 == 0 && i % 16 < 5;
        const std::size_t cnt = dense ? min_pts + 2 : 0;
        for (std::size_t m = 0; m < cnt; ++m)
            pts.push_back({double(i) + uniform_double(gen, 0.05, 0.95), 0.0});
    }
    const Dataset ds(pts);
    for (auto _ : state) {
        KnnOracle oracle(ds, min_pts,
                         std::numeric_limits<std::size_t>::max());
        Native1dDomain domain(oracle, 0.0, 1.0, cells, min_pts);
        Rng rng(7);
        benchmark::DoNotOptimize(hdbscan_1d(domain, 3, rng));
        state.counters["queries"] = double(oracle.queries_used());
    }
}
BENCHMARK(bm_dense_run_discovery)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
