// Copyright 2026 The shorsim Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Serial reference kernels against the OpenMP versions on the same inputs.

#include <numbers>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "shorsim/circuit.hpp"
#include "shorsim/kernels.hpp"
#include "shorsim/state_vector.hpp"

namespace {

using shorsim::Complex;
namespace k = shorsim::kernels;

std::vector<Complex> random_state(std::size_t n) {
    std::mt19937_64 gen(7);
    std::normal_distribution<double> d;
    std::vector<Complex> v(n);
    for (auto& a : v) {
        a = {d(gen), d(gen)};
    }
    return v;
}

k::ChainTerms random_chain(int n) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> d(-0.05, 0.05);
    std::vector<double> delta(static_cast<std::size_t>(n));
    std::vector<double> j(static_cast<std::size_t>(n - 1));
    for (auto& x : delta) {
        x = d(gen);
    }
    for (auto& x : j) {
        x = d(gen);
    }
    return k::ChainTerms(delta, j);
}

template <auto Fn>
void BM_hadamard(benchmark::State& st) {
    const int qubits = static_cast<int>(st.range(0));
    auto v = random_state(std::size_t{1} << qubits);
    for (auto _ : st) {
        Fn(v, qubits - 1, std::numbers::sqrt2 / 2.0);
        benchmark::ClobberMemory();
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(v.size()));
}

template <auto Fn>
void BM_row_matrix(benchmark::State& st) {
    const int qubits = static_cast<int>(st.range(0));
    const std::size_t row_dim = std::size_t{1} << st.range(1);
    auto v = random_state(std::size_t{1} << qubits);
    const auto u = random_state(row_dim * row_dim);
    for (auto _ : st) {
        Fn(v, row_dim, 0, u);
        benchmark::ClobberMemory();
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(v.size()));
}

template <auto Fn>
void BM_dft_rows(benchmark::State& st) {
    const int control = static_cast<int>(st.range(0));
    const std::size_t row_dim = 16;
    auto v = random_state(row_dim << control);
    for (auto _ : st) {
        Fn(v, row_dim, false);
        benchmark::ClobberMemory();
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(v.size()));
}

template <auto Fn>
void BM_chebyshev(benchmark::State& st) {
    const int qubits = static_cast<int>(st.range(0));
    const auto h = random_chain(qubits);
    auto prev = random_state(std::size_t{1} << qubits);
    const auto cur = random_state(prev.size());
    std::vector<Complex> acc(prev.size());
    for (auto _ : st) {
        Fn(prev, cur, acc, h, 0.5, Complex{0.1, 0.0});
        benchmark::ClobberMemory();
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(prev.size()));
}

void BM_perturbed_run(benchmark::State& st) {
    const auto inst = shorsim::ShorInstance::make(static_cast<std::uint64_t>(st.range(0)), 2);
    std::uint64_t k = 0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(
            shorsim::run_perturbed(inst, shorsim::ImperfectionModel::Generic, 0.05, 1, k++));
    }
}

} // namespace

BENCHMARK(BM_hadamard<k::serial::hadamard>)->Name("hadamard/serial")->Arg(18)->Arg(22);
BENCHMARK(BM_hadamard<k::omp::hadamard>)->Name("hadamard/omp")->Arg(18)->Arg(22);
BENCHMARK(BM_row_matrix<k::serial::apply_row_matrix>)
    ->Name("row_matrix/serial")
    ->Args({18, 6})
    ->Args({21, 7});
BENCHMARK(BM_row_matrix<k::omp::apply_row_matrix>)
    ->Name("row_matrix/omp")
    ->Args({18, 6})
    ->Args({21, 7});
BENCHMARK(BM_dft_rows<k::serial::dft_rows>)->Name("dft_rows/serial")->Arg(8)->Arg(10);
BENCHMARK(BM_dft_rows<k::omp::dft_rows>)->Name("dft_rows/omp")->Arg(8)->Arg(10)->Arg(14);
BENCHMARK(BM_chebyshev<k::serial::chebyshev_step>)->Name("chebyshev/serial")->Arg(18)->Arg(21);
BENCHMARK(BM_chebyshev<k::omp::chebyshev_step>)->Name("chebyshev/omp")->Arg(18)->Arg(21);
BENCHMARK(BM_perturbed_run)->Name("run_perturbed/generic")->Arg(21)->Arg(33)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
