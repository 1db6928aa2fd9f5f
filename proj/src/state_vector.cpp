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
#include "shorsim/state_vector.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <numbers>
#include <numeric>
#include <string>

#include "shorsim/error.hpp"
#include "shorsim/numtheory.hpp"

namespace shorsim {

namespace {

constexpr std::array<char, 8> kDumpMagic = {'S', 'H', 'O', 'R', 'S', 'V', '0', '1'};

template <class T> T to_little_endian(T v) {
    if constexpr (std::endian::native == std::endian::big) {
        std::array<char, sizeof(T)> bytes;
        std::memcpy(bytes.data(), &v, sizeof(T));
        std::reverse(bytes.begin(), bytes.end());
        std::memcpy(&v, bytes.data(), sizeof(T));
    }
    return v;
}

} // namespace

StateVector::StateVector(int control_qubits, int computational_qubits, int max_qubits)
    : n_l_(control_qubits), n_q_(computational_qubits) {
    if (n_l_ < 1 || n_q_ < 1) {
        throw ValidationError("registers need at least one qubit each");
    }
    const int cap = std::min(max_qubits, kHardMaxQubits);
    if (n_l_ + n_q_ > cap) {
        throw CapacityError("state of " + std::to_string(n_l_ + n_q_) +
                            " qubits exceeds the cap of " + std::to_string(cap));
    }
    amps_.assign(std::size_t{1} << (n_l_ + n_q_), Complex{0.0, 0.0});
}

double StateVector::norm_squared() const {
    std::vector<double> rows(control_dim());
    kernels::omp::row_norms(amps_, block_dim(), rows);
    return std::accumulate(rows.begin(), rows.end(), 0.0);
}

double MeasurementDistribution::total() const {
    return std::accumulate(probs.begin(), probs.end(), 0.0);
}

StateVector init_psi0(int control_qubits, int computational_qubits, int max_qubits) {
    StateVector s(control_qubits, computational_qubits, max_qubits);
    s.at(0, 1) = 1.0;
    return s;
}

void hadamard_control(StateVector& state) {
    // Pairs of qubits share one exact factor of 1/2 so dyadic inputs stay exact.
    const int nl = state.control_qubits();
    for (int j = 0; j < nl; ++j) {
        const double scale = (j % 2 == 1) ? 0.5 : (j + 1 == nl ? std::numbers::sqrt2 / 2.0 : 1.0);
        kernels::omp::hadamard(state.amplitudes(), state.computational_qubits() + j, scale);
    }
}

std::vector<std::uint32_t> modmul_permutation(std::uint64_t m, std::uint64_t n,
                                              std::size_t block_dim) {
    if (n > block_dim) {
        throw ValidationError("modulus does not fit in the computational register");
    }
    if (gcd(m % n, n) != 1) {
        throw NotInvertibleError("multiplier " + std::to_string(m) + " shares a factor with " +
                                 std::to_string(n));
    }
    std::vector<std::uint32_t> perm(block_dim);
    std::iota(perm.begin(), perm.end(), 0U);
    for (std::uint64_t y = 0; y < n; ++y) {
        perm[y] = static_cast<std::uint32_t>((y * m) % n);
    }
    return perm;
}

void controlled_modmul(StateVector& state, int j, std::uint64_t m, std::uint64_t n) {
    if (j < 0 || j >= state.control_qubits()) {
        throw ValidationError("control qubit index out of range");
    }
    const auto perm = modmul_permutation(m, n, state.block_dim());
    kernels::omp::permute_rows(state.amplitudes(), state.block_dim(), std::size_t{1} << j, perm);
}

void qft_control(StateVector& state, bool inverse) {
    kernels::omp::dft_rows(state.amplitudes(), state.block_dim(), inverse);
}

MeasurementDistribution control_marginal(const StateVector& state) {
    MeasurementDistribution p;
    p.probs.resize(state.control_dim());
    kernels::omp::row_norms(state.amplitudes(), state.block_dim(), p.probs);
    return p;
}

void write_state_dump(const StateVector& state, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out.write(kDumpMagic.data(), kDumpMagic.size());
    const auto n_l = to_little_endian(static_cast<std::uint32_t>(state.control_qubits()));
    const auto n_q = to_little_endian(static_cast<std::uint32_t>(state.computational_qubits()));
    out.write(reinterpret_cast<const char*>(&n_l), sizeof n_l);
    out.write(reinterpret_cast<const char*>(&n_q), sizeof n_q);
    for (const Complex& z : state.amplitudes()) {
        const std::array<double, 2> ri = {to_little_endian(z.real()), to_little_endian(z.imag())};
        out.write(reinterpret_cast<const char*>(ri.data()), sizeof ri);
    }
    if (!out) {
        throw std::runtime_error("short write to " + path.string());
    }
}

StateVector read_state_dump(const std::filesystem::path& path, int max_qubits) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::array<char, 8> magic{};
    std::uint32_t n_l = 0;
    std::uint32_t n_q = 0;
    in.read(magic.data(), magic.size());
    in.read(reinterpret_cast<char*>(&n_l), sizeof n_l);
    in.read(reinterpret_cast<char*>(&n_q), sizeof n_q);
    if (!in || magic != kDumpMagic) {
        throw ValidationError(path.string() + " is not a state dump");
    }
    StateVector s(static_cast<int>(to_little_endian(n_l)), static_cast<int>(to_little_endian(n_q)),
                  max_qubits);
    for (Complex& z : s.amplitudes()) {
        std::array<double, 2> ri{};
        in.read(reinterpret_cast<char*>(ri.data()), sizeof ri);
        z = {to_little_endian(ri[0]), to_little_endian(ri[1])};
    }
    if (!in) {
        throw ValidationError(path.string() + " is truncated");
    }
    return s;
}

} // namespace shorsim
