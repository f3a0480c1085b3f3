#include <benchmark/benchmark.h>

#include <cmath>

#include "scs/bargmann.hpp"
#include "scs/kernels.hpp"

using namespace scs;

namespace {

const ProductGrid& small_grid() {
    static const ProductGrid g = make_bargmann_grid(GridSizes::defaults(2), {}, Exec::serial);
    return g;
}

kernels::Sampler basis_sampler(int j_max) {
    return [j_max](const ComplexVec3& z, std::span<Complex> out) { coherent_coeffs(z, j_max, out); };
}

std::vector<double> l_nodes(int n) {
    std::vector<double> l(n);
    for (int i = 0; i < n; ++i) l[i] = 12.0 * (i + 0.5) / n;
    return l;
}

void BM_log_heat_density(benchmark::State& st, Exec exec) {
    auto l = l_nodes(static_cast<int>(st.range(0)));
    HeatKernelConfig cfg;
    for (auto _ : st) benchmark::DoNotOptimize(kernels::log_heat_density(l, cfg, exec));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_cross_accumulate(benchmark::State& st, Exec exec) {
    const ProductGrid& g = small_grid();
    int n = static_cast<int>((st.range(0) + 1) * (st.range(0) + 1));
    auto s = basis_sampler(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::cross_accumulate(g, s, n, nullptr, n, exec));
    st.SetItemsProcessed(st.iterations() * g.size());
}

void BM_tabulate(benchmark::State& st, Exec exec) {
    std::size_t n = st.range(0);
    auto f = [](std::size_t i, std::span<Complex> row) {
        RealVec3 x{std::sin(0.01 * i), 0.0, std::cos(0.01 * i)};
        ComplexVec3 z{0.3, Complex(0.0, 0.4), 1.0};
        for (std::size_t k = 0; k < row.size(); ++k) row[k] = coordinate_kernel(x, z) * double(k + 1);
    };
    for (auto _ : st) benchmark::DoNotOptimize(kernels::tabulate(n, 8, f, exec));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_sample_sphere(benchmark::State& st, Exec exec) {
    std::vector<double> th(st.range(0)), ph(2 * st.range(0));
    for (std::size_t i = 0; i < th.size(); ++i) th[i] = pi * (i + 0.5) / th.size();
    for (std::size_t i = 0; i < ph.size(); ++i) ph[i] = 2 * pi * i / ph.size();
    ComplexVec3 z = phase_to_z(PhasePoint{1.0, 0.5, 0.0, 0.1});
    auto f = [&](double t, double p) { return husimi(z, unit_vector(t, p)); };
    for (auto _ : st) benchmark::DoNotOptimize(kernels::sample_sphere(th, ph, f, exec));
    st.SetItemsProcessed(st.iterations() * th.size() * ph.size());
}

}  // namespace

BENCHMARK_CAPTURE(BM_log_heat_density, serial, Exec::serial)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_log_heat_density, omp, Exec::parallel)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_cross_accumulate, serial, Exec::serial)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_cross_accumulate, omp, Exec::parallel)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_tabulate, serial, Exec::serial)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_tabulate, omp, Exec::parallel)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_sample_sphere, serial, Exec::serial)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_sample_sphere, omp, Exec::parallel)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
