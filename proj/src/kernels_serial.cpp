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
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shorsim/kernels.hpp"

namespace shorsim::kernels {

ChainTerms::ChainTerms(std::span<const double> deltas, std::span<const double> couplings)
    : qubits_(static_cast<int>(deltas.size())), deltas_(deltas.begin(), deltas.end()),
      couplings_(couplings.begin(), couplings.end()) {
    if (qubits_ < 1 || qubits_ > 40) {
        throw std::invalid_argument("ChainTerms: qubit count out of range");
    }
    if (couplings_.size() != static_cast<std::size_t>(qubits_ - 1)) {
        throw std::invalid_argument("ChainTerms: need n-1 couplings for n deltas");
    }
    low_bits_ = qubits_ / 2;
    const int high_bits = qubits_ - low_bits_;
    low_mask_ = (std::size_t{1} << low_bits_) - 1;
    low_energy_.assign(std::size_t{1} << low_bits_, 0.0);
    high_energy_.assign(std::size_t{1} << high_bits, 0.0);
    for (std::size_t l = 0; l < low_energy_.size(); ++l) {
        double e = 0.0;
        for (int i = 0; i < low_bits_; ++i) {
            e += ((l >> i) & 1U) ? -deltas_[i] : deltas_[i];
        }
        low_energy_[l] = e;
    }
    for (std::size_t h = 0; h < high_energy_.size(); ++h) {
        double e = 0.0;
        for (int i = 0; i < high_bits; ++i) {
            const double d = deltas_[low_bits_ + i];
            e += ((h >> i) & 1U) ? -d : d;
        }
        high_energy_[h] = e;
    }
}

double ChainTerms::norm_bound() const noexcept {
    double b = 0.0;
    for (double d : deltas_) {
        b += std::abs(d);
    }
    for (double j : couplings_) {
        b += 2.0 * std::abs(j);
    }
    return b;
}

namespace serial {

void hadamard(std::span<Complex> amps, int bit, double scale) {
    const std::size_t mask = std::size_t{1} << bit;
    const double s = scale;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & mask) {
            continue;
        }
        const Complex u = amps[i];
        const Complex v = amps[i | mask];
        amps[i] = s * (u + v);
        amps[i | mask] = s * (u - v);
    }
}

void permute_rows(std::span<Complex> amps, std::size_t row_dim, std::size_t row_mask,
                  std::span<const std::uint32_t> perm) {
    std::vector<Complex> scratch(row_dim);
    const std::size_t rows = amps.size() / row_dim;
    for (std::size_t a = 0; a < rows; ++a) {
        if (row_mask != 0 && (a & row_mask) == 0) {
            continue;
        }
        Complex* row = amps.data() + a * row_dim;
        for (std::size_t y = 0; y < row_dim; ++y) {
            scratch[perm[y]] = row[y];
        }
        std::copy(scratch.begin(), scratch.end(), row);
    }
}

void apply_row_matrix(std::span<Complex> amps, std::size_t row_dim, std::size_t row_mask,
                      std::span<const Complex> matrix) {
    std::vector<Complex> scratch(row_dim);
    const std::size_t rows = amps.size() / row_dim;
    for (std::size_t a = 0; a < rows; ++a) {
        if (row_mask != 0 && (a & row_mask) == 0) {
            continue;
        }
        Complex* row = amps.data() + a * row_dim;
        for (std::size_t i = 0; i < row_dim; ++i) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < row_dim; ++k) {
                s += matrix[i * row_dim + k] * row[k];
            }
            scratch[i] = s;
        }
        std::copy(scratch.begin(), scratch.end(), row);
    }
}

void dft_rows(std::span<Complex> amps, std::size_t row_dim, bool inverse) {
    const std::size_t q = amps.size() / row_dim;
    const double sign = inverse ? -1.0 : 1.0;
    std::vector<Complex> twiddle(q);
    for (std::size_t m = 0; m < q; ++m) {
        twiddle[m] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(m) /
                                         static_cast<double>(q));
    }
    const double norm = 1.0 / std::sqrt(static_cast<double>(q));
    std::vector<Complex> out(amps.size());
    for (std::size_t c = 0; c < q; ++c) {
        for (std::size_t a = 0; a < q; ++a) {
            const Complex w = twiddle[(a * c) % q];
            for (std::size_t y = 0; y < row_dim; ++y) {
                out[c * row_dim + y] += w * amps[a * row_dim + y];
            }
        }
    }
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = norm * out[i];
    }
}

void row_norms(std::span<const Complex> amps, std::size_t row_dim, std::span<double> out) {
    const std::size_t rows = amps.size() / row_dim;
    for (std::size_t a = 0; a < rows; ++a) {
        double s = 0.0;
        for (std::size_t y = 0; y < row_dim; ++y) {
            s += std::norm(amps[a * row_dim + y]);
        }
        out[a] = s;
    }
}

void diagonal_phase(std::span<Complex> amps, const ChainTerms& h, double t) {
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] *= std::polar(1.0, t * h.diagonal(i));
    }
}

void xx_rotation(std::span<Complex> amps, int bit, double angle) {
    const std::size_t mask = std::size_t{3} << bit;
    const double c = std::cos(angle);
    const Complex is{0.0, std::sin(angle)};
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const std::size_t j = i ^ mask;
        if (j < i) {
            continue;
        }
        const Complex u = amps[i];
        const Complex v = amps[j];
        amps[i] = c * u + is * v;
        amps[j] = c * v + is * u;
    }
}

void chain_apply(std::span<const Complex> in, std::span<Complex> out, const ChainTerms& h,
                 double scale) {
    const auto couplings = h.couplings();
    for (std::size_t i = 0; i < in.size(); ++i) {
        Complex s = h.diagonal(i) * in[i];
        for (std::size_t b = 0; b < couplings.size(); ++b) {
            s += 2.0 * couplings[b] * in[i ^ (std::size_t{3} << b)];
        }
        out[i] = scale * s;
    }
}

void chebyshev_step(std::span<Complex> prev, std::span<const Complex> cur,
                    std::span<Complex> acc, const ChainTerms& h, double scale,
                    Complex coeff) {
    std::vector<Complex> hv(cur.size());
    chain_apply(cur, hv, h, scale);
    for (std::size_t i = 0; i < cur.size(); ++i) {
        prev[i] = 2.0 * hv[i] - prev[i];
        acc[i] += coeff * prev[i];
    }
}

} // namespace serial
} // namespace shorsim::kernels
