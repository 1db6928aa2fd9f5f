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
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include <Eigen/Core>

#include "shorsim/kernels.hpp"

namespace shorsim::kernels::omp {

namespace {

using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::size_t bit_reverse(std::size_t v, int bits) {
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b) {
        r = (r << 1U) | ((v >> b) & 1U);
    }
    return r;
}

int log2_exact(std::size_t n) {
    int k = 0;
    while ((std::size_t{1} << k) < n) {
        ++k;
    }
    return k;
}

} // namespace

void hadamard(std::span<Complex> amps, int bit, double scale) {
    const std::size_t mask = std::size_t{1} << bit;
    const std::size_t low = mask - 1;
    const double s = scale;
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    Complex* a = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < half; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        const std::size_t i0 = ((ku & ~low) << 1U) | (ku & low);
        const std::size_t i1 = i0 | mask;
        const Complex u = a[i0];
        const Complex v = a[i1];
        a[i0] = s * (u + v);
        a[i1] = s * (u - v);
    }
}

void permute_rows(std::span<Complex> amps, std::size_t row_dim, std::size_t row_mask,
                  std::span<const std::uint32_t> perm) {
    const auto rows = static_cast<std::int64_t>(amps.size() / row_dim);
    Complex* base = amps.data();
#pragma omp parallel
    {
        std::vector<Complex> scratch(row_dim);
#pragma omp for schedule(static)
        for (std::int64_t a = 0; a < rows; ++a) {
            if (row_mask != 0 && (static_cast<std::size_t>(a) & row_mask) == 0) {
                continue;
            }
            Complex* row = base + static_cast<std::size_t>(a) * row_dim;
            for (std::size_t y = 0; y < row_dim; ++y) {
                scratch[perm[y]] = row[y];
            }
            std::copy(scratch.begin(), scratch.end(), row);
        }
    }
}

void apply_row_matrix(std::span<Complex> amps, std::size_t row_dim, std::size_t row_mask,
                      std::span<const Complex> matrix) {
    const auto d = static_cast<Eigen::Index>(row_dim);
    const RowMat ut = Eigen::Map<const RowMat>(matrix.data(), d, d).transpose();
    const std::size_t rows = amps.size() / row_dim;
    const auto tiles = static_cast<std::int64_t>((rows + kRowTile - 1) / kRowTile);
    Complex* base = amps.data();
#pragma omp parallel
    {
        RowMat in(static_cast<Eigen::Index>(kRowTile), d);
        RowMat out(static_cast<Eigen::Index>(kRowTile), d);
        std::size_t selected[kRowTile];
#pragma omp for schedule(static)
        for (std::int64_t t = 0; t < tiles; ++t) {
            const std::size_t first = static_cast<std::size_t>(t) * kRowTile;
            const std::size_t last = std::min(rows, first + kRowTile);
            Eigen::Index n = 0;
            for (std::size_t a = first; a < last; ++a) {
                if (row_mask == 0 || (a & row_mask) != 0) {
                    selected[n] = a;
                    in.row(n) = Eigen::Map<const Eigen::RowVectorXcd>(base + a * row_dim, d);
                    ++n;
                }
            }
            if (n == 0) {
                continue;
            }
            out.topRows(n).noalias() = in.topRows(n) * ut;
            for (Eigen::Index k = 0; k < n; ++k) {
                Eigen::Map<Eigen::RowVectorXcd>(base + selected[k] * row_dim, d) = out.row(k);
            }
        }
    }
}

void dft_rows(std::span<Complex> amps, std::size_t row_dim, bool inverse) {
    const std::size_t q = amps.size() / row_dim;
    const int bits = log2_exact(q);
    Complex* base = amps.data();
    const auto rows = static_cast<std::int64_t>(q);

#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        const std::size_t j = bit_reverse(iu, bits);
        if (iu < j) {
            std::swap_ranges(base + iu * row_dim, base + (iu + 1) * row_dim, base + j * row_dim);
        }
    }

    const double sign = inverse ? -1.0 : 1.0;
    std::vector<Complex> twiddle(q / 2 + 1);
    for (std::size_t m = 0; m < twiddle.size(); ++m) {
        if (4 * m % q == 0) {
            // Quarter turns exactly, so commensurate spectra carry no roundoff.
            constexpr Complex quarter[3] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}};
            const Complex w = quarter[4 * m / q];
            twiddle[m] = {w.real(), sign * w.imag()};
            continue;
        }
        twiddle[m] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(m) /
                                         static_cast<double>(q));
    }

    const auto butterflies = static_cast<std::int64_t>(q / 2);
    for (std::size_t len = 2; len <= q; len <<= 1U) {
        const std::size_t half = len / 2;
        const std::size_t stride = q / len;
#pragma omp parallel for schedule(static)
        for (std::int64_t p = 0; p < butterflies; ++p) {
            const auto pu = static_cast<std::size_t>(p);
            const std::size_t k = pu % half;
            const std::size_t start = (pu / half) * len;
            const Complex w = twiddle[k * stride];
            Complex* u = base + (start + k) * row_dim;
            Complex* v = base + (start + k + half) * row_dim;
            for (std::size_t y = 0; y < row_dim; ++y) {
                const Complex t = w * v[y];
                v[y] = u[y] - t;
                u[y] = u[y] + t;
            }
        }
    }

    const double norm = 1.0 / std::sqrt(static_cast<double>(q));
    const auto total = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
        base[i] *= norm;
    }
}

void row_norms(std::span<const Complex> amps, std::size_t row_dim, std::span<double> out) {
    const auto rows = static_cast<std::int64_t>(amps.size() / row_dim);
    const Complex* base = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t a = 0; a < rows; ++a) {
        const Complex* row = base + static_cast<std::size_t>(a) * row_dim;
        double s = 0.0;
        for (std::size_t y = 0; y < row_dim; ++y) {
            s += row[y].real() * row[y].real() + row[y].imag() * row[y].imag();
        }
        out[static_cast<std::size_t>(a)] = s;
    }
}

void diagonal_phase(std::span<Complex> amps, const ChainTerms& h, double t) {
    const auto n = static_cast<std::int64_t>(amps.size());
    Complex* a = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        a[i] *= std::polar(1.0, t * h.diagonal(static_cast<std::size_t>(i)));
    }
}

void xx_rotation(std::span<Complex> amps, int bit, double angle) {
    const std::size_t mask = std::size_t{3} << bit;
    const double c = std::cos(angle);
    const Complex is{0.0, std::sin(angle)};
    const auto n = static_cast<std::int64_t>(amps.size());
    Complex* a = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        const std::size_t j = iu ^ mask;
        if (j < iu) {
            continue;
        }
        const Complex u = a[iu];
        const Complex v = a[j];
        a[iu] = c * u + is * v;
        a[j] = c * v + is * u;
    }
}

void chain_apply(std::span<const Complex> in, std::span<Complex> out, const ChainTerms& h,
                 double scale) {
    const auto couplings = h.couplings();
    const auto n = static_cast<std::int64_t>(in.size());
    const Complex* src = in.data();
    Complex* dst = out.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        Complex s = h.diagonal(iu) * src[iu];
        for (std::size_t b = 0; b < couplings.size(); ++b) {
            s += 2.0 * couplings[b] * src[iu ^ (std::size_t{3} << b)];
        }
        dst[iu] = scale * s;
    }
}

void chebyshev_step(std::span<Complex> prev, std::span<const Complex> cur,
                    std::span<Complex> acc, const ChainTerms& h, double scale,
                    Complex coeff) {
    const auto couplings = h.couplings();
    const auto n = static_cast<std::int64_t>(cur.size());
    const Complex* c = cur.data();
    Complex* p = prev.data();
    Complex* r = acc.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        Complex s = h.diagonal(iu) * c[iu];
        for (std::size_t b = 0; b < couplings.size(); ++b) {
            s += 2.0 * couplings[b] * c[iu ^ (std::size_t{3} << b)];
        }
        p[iu] = 2.0 * (scale * s) - p[iu];
        r[iu] += coeff * p[iu];
    }
}

} // namespace shorsim::kernels::omp
