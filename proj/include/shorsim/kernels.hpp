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

/**
 * @file
 * Data-parallel kernels over a flat amplitude array.
 *
 * Every kernel exists twice with the same signature: `kernels::serial` is a
 * plain-loop reference kept for testing and benchmarking, `kernels::omp` is
 * the production version (OpenMP over disjoint index ranges, Eigen tiles for
 * the dense block product). The OpenMP kernels assign each output element to
 * exactly one thread and never reduce across threads, so their results do
 * not depend on the thread count.
 *
 * Layout: a register of `rows * row_dim` amplitudes, flat index
 * `row * row_dim + col`, with `row_dim` a power of two. Bit positions refer
 * to the flat index.
 */

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace shorsim {

using Complex = std::complex<double>;

namespace kernels {

/// H = sum_i deltas[i] Z_i + 2 sum_i couplings[i] X_i X_{i+1} on a chain of
/// `qubits` qubits, qubit i being flat bit i. The diagonal is tabulated as a
/// low/high split so E(idx) costs two loads.
class ChainTerms {
  public:
    ChainTerms(std::span<const double> deltas, std::span<const double> couplings);

    int qubits() const noexcept { return qubits_; }
    std::span<const double> deltas() const noexcept { return deltas_; }
    std::span<const double> couplings() const noexcept { return couplings_; }

    /// sum_i deltas[i] (1 - 2 b_i(idx)).
    double diagonal(std::size_t idx) const noexcept {
        return low_energy_[idx & low_mask_] + high_energy_[idx >> low_bits_];
    }

    /// Upper bound on the spectral radius: sum |delta| + 2 sum |J|.
    double norm_bound() const noexcept;

  private:
    int qubits_;
    std::vector<double> deltas_;
    std::vector<double> couplings_;
    int low_bits_;
    std::size_t low_mask_;
    std::vector<double> low_energy_;
    std::vector<double> high_energy_;
};

namespace serial {

/// Butterfly (u, v) -> scale * (u + v, u - v) on `bit`.
void hadamard(std::span<Complex> amps, int bit, double scale = std::numbers::sqrt2 / 2.0);

/// For every row whose index has `row_mask` set (all rows when 0), move
/// column y to column perm[y].
void permute_rows(std::span<Complex> amps, std::size_t row_dim, std::size_t row_mask,
                  std::span<const std::uint32_t> perm);

/// row <- U row for selected rows; U is row_dim x row_dim, row-major.
void apply_row_matrix(std::span<Complex> amps, std::size_t row_dim, std::size_t row_mask,
                      std::span<const Complex> matrix);

/// Unitary DFT along the row index: out(c, y) = Q^-1/2 sum_a e^{+-2 pi i a c / Q} in(a, y),
/// sign + for forward. Naive O(Q^2) here.
void dft_rows(std::span<Complex> amps, std::size_t row_dim, bool inverse);

/// out[row] = sum_y |amps(row, y)|^2.
void row_norms(std::span<const Complex> amps, std::size_t row_dim, std::span<double> out);

/// amps[i] *= exp(i t E(i)) with E the chain diagonal.
void diagonal_phase(std::span<Complex> amps, const ChainTerms& h, double t);

/// exp(i angle X_b X_{b+1}).
void xx_rotation(std::span<Complex> amps, int bit, double angle);

/// out = scale * H in.
void chain_apply(std::span<const Complex> in, std::span<Complex> out, const ChainTerms& h,
                 double scale);

/// Chebyshev three-term step: prev <- 2 scale H cur - prev, then acc += coeff * prev.
void chebyshev_step(std::span<Complex> prev, std::span<const Complex> cur,
                    std::span<Complex> acc, const ChainTerms& h, double scale,
                    Complex coeff);

} // namespace serial

namespace omp {

void hadamard(std::span<Complex> amps, int bit, double scale = std::numbers::sqrt2 / 2.0);
void permute_rows(std::span<Complex> amps, std::size_t row_dim, std::size_t row_mask,
                  std::span<const std::uint32_t> perm);
void apply_row_matrix(std::span<Complex> amps, std::size_t row_dim, std::size_t row_mask,
                      std::span<const Complex> matrix);
/// Radix-2 FFT treating each row as one vector element.
void dft_rows(std::span<Complex> amps, std::size_t row_dim, bool inverse);
void row_norms(std::span<const Complex> amps, std::size_t row_dim, std::span<double> out);
void diagonal_phase(std::span<Complex> amps, const ChainTerms& h, double t);
void xx_rotation(std::span<Complex> amps, int bit, double angle);
void chain_apply(std::span<const Complex> in, std::span<Complex> out, const ChainTerms& h,
                 double scale);
void chebyshev_step(std::span<Complex> prev, std::span<const Complex> cur,
                    std::span<Complex> acc, const ChainTerms& h, double scale,
                    Complex coeff);

} // namespace omp

/// Rows processed per Eigen product in omp::apply_row_matrix. Fixed so that
/// the floating-point evaluation order never depends on scheduling.
inline constexpr std::size_t kRowTile = 32;

} // namespace kernels
} // namespace shorsim
