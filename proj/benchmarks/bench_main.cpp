#include "mars/hele_shaw.hpp"
#include "mars/kuramoto_sivashinsky.hpp"
#include "mars/spectral.hpp"
#include "mars/stepper.hpp"
#include "mars/thin_film.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace mars;

static void BM_Forward1D(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const FourierTransform fft(Grid::line(n, 1.0));
    RealField u(n);
    for (std::size_t j = 0; j < n; ++j) {
        u[j] = std::sin(0.37 * j);
    }
    for (auto _ : st) {
        benchmark::DoNotOptimize(fft.forward(u));
    }
}
BENCHMARK(BM_Forward1D)->Arg(128)->Arg(1024)->Arg(8192);

static void BM_RoundTrip2D(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const FourierTransform fft(Grid::plane(n, n, 1.0, 1.0));
    RealField u(n * n);
    for (std::size_t j = 0; j < u.size(); ++j) {
        u[j] = std::cos(0.11 * j);
    }
    for (auto _ : st) {
        benchmark::DoNotOptimize(fft.inverse(fft.forward(u)));
    }
}
BENCHMARK(BM_RoundTrip2D)->Arg(64)->Arg(128);

static void BM_BirkhoffRott(benchmark::State& st) {
    hele_shaw::Params p;
    p.n = static_cast<std::size_t>(st.range(0));
    const hele_shaw::InterfaceCurve c = hele_shaw::initial_curve(p);
    const RealField gamma = hele_shaw::sheet_strength(c, p.surface_tension, p.gravity);
    for (auto _ : st) {
        benchmark::DoNotOptimize(hele_shaw::birkhoff_rott_velocity(c, gamma));
    }
}
BENCHMARK(BM_BirkhoffRott)->Arg(256)->Arg(1024);

static void BM_RichardsonThinFilm(benchmark::State& st) {
    const thin_film::Model model(thin_film::Params{});
    const State s = model.initial_state();
    const DampingSpectrum lambda = model.initial_lambda(s);
    const RhsEvaluator rhs = model.rhs();
    const EinStepper stepper(model.grid());
    for (auto _ : st) {
        benchmark::DoNotOptimize(stepper.richardson_step(s, rhs, lambda, model.dt()));
    }
}
BENCHMARK(BM_RichardsonThinFilm);

static void BM_RichardsonKs(benchmark::State& st) {
    const kuramoto_sivashinsky::Model model(kuramoto_sivashinsky::Params{});
    const State s = model.initial_state();
    const DampingSpectrum lambda = model.initial_lambda(s);
    const RhsEvaluator rhs = model.rhs();
    const EinStepper stepper(model.grid());
    for (auto _ : st) {
        benchmark::DoNotOptimize(stepper.richardson_step(s, rhs, lambda, model.dt()));
    }
}
BENCHMARK(BM_RichardsonKs);
BENCHMARK_MAIN();
