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
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "shorsim/kernels.hpp"

namespace shorsim {

inline constexpr int kDefaultMaxQubits = 26;
inline constexpr int kHardMaxQubits = 30;

/// Two-register state |a>|y> stored densely; flat index a * 2^n_q + y, so each
/// control value owns a contiguous block of 2^n_q computational amplitudes.
class StateVector {
  public:
    /// Zero state. Throws CapacityError when n_l + n_q exceeds max_qubits
    /// (itself capped at kHardMaxQubits).
    StateVector(int control_qubits, int computational_qubits,
                int max_qubits = kDefaultMaxQubits);

    int control_qubits() const noexcept { return n_l_; }
    int computational_qubits() const noexcept { return n_q_; }
    int total_qubits() const noexcept { return n_l_ + n_q_; }
    std::size_t control_dim() const noexcept { return std::size_t{1} << n_l_; }
    std::size_t block_dim() const noexcept { return std::size_t{1} << n_q_; }
    std::size_t size() const noexcept { return amps_.size(); }

    std::span<Complex> amplitudes() noexcept { return amps_; }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }

    Complex& at(std::size_t a, std::size_t y) { return amps_[a * block_dim() + y]; }
    const Complex& at(std::size_t a, std::size_t y) const { return amps_[a * block_dim() + y]; }

    /// Sum of |amplitude|^2, accumulated per block in a fixed order.
    double norm_squared() const;

    friend bool operator==(const StateVector&, const StateVector&) = default;

  private:
    int n_l_;
    int n_q_;
    std::vector<Complex> amps_;
};

/// P(c) over the Q control outcomes.
struct MeasurementDistribution {
    std::vector<double> probs;

    std::size_t outcomes() const noexcept { return probs.size(); }
    double total() const;
    friend bool operator==(const MeasurementDistribution&,
                           const MeasurementDistribution&) = default;
};

/// |0>_{n_l} |1>_{n_q}.
StateVector init_psi0(int control_qubits, int computational_qubits,
                      int max_qubits = kDefaultMaxQubits);

/// Hadamard on each control qubit.
void hadamard_control(StateVector& state);

/// Permutation table y -> (y m) mod N for y < N, identity for y >= N.
std::vector<std::uint32_t> modmul_permutation(std::uint64_t m, std::uint64_t n,
                                              std::size_t block_dim);

/// Controlled multiplication by m mod N on the computational register,
/// conditioned on control qubit j. Throws NotInvertibleError unless gcd(m, N) = 1.
void controlled_modmul(StateVector& state, int j, std::uint64_t m, std::uint64_t n);

/// Exact QFT along the control index (forward sign e^{+2 pi i a c / Q}).
void qft_control(StateVector& state, bool inverse = false);

/// P(c) = sum_y |amp(c, y)|^2.
MeasurementDistribution control_marginal(const StateVector& state);

/// Debug dump: 8-byte magic "SHORSV01", u32 n_l, u32 n_q, then little-endian
/// interleaved (re, im) doubles.
void write_state_dump(const StateVector& state, const std::filesystem::path& path);
StateVector read_state_dump(const std::filesystem::path& path,
                            int max_qubits = kHardMaxQubits);

} // namespace shorsim
