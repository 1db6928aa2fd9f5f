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
#include <string>

#include <Eigen/Eigenvalues>

#include "shorsim/error.hpp"
#include "shorsim/imperfections.hpp"

namespace shorsim {

namespace {

// Chebyshev series is cut once k exceeds the spectral bound and the next
// coefficient is below this.
constexpr double kChebyshevCutoff = 1e-17;
constexpr std::size_t kMaxChebyshevTerms = 100000;

} // namespace

std::string_view to_string(FullPropagatorMethod method) {
    switch (method) {
    case FullPropagatorMethod::Chebyshev:
        return "chebyshev";
    case FullPropagatorMethod::Split:
        return "split";
    case FullPropagatorMethod::Dense:
        return "dense";
    }
    return "unknown";
}

double split_error_constant(const kernels::ChainTerms& terms) {
    const auto d = terms.deltas();
    const auto j = terms.couplings();
    // [A,[A, X_b X_{b+1}]] = 4 A_loc^2 X_b X_{b+1} with A_loc the two adjacent Z terms.
    double aab = 0.0;
    for (std::size_t b = 0; b < j.size(); ++b) {
        const double a_loc = std::abs(d[b]) + std::abs(d[b + 1]);
        aab += 2.0 * std::abs(j[b]) * 4.0 * a_loc * a_loc;
    }
    // [B,[B, Z_i]] = 4 B_loc^2 Z_i with B_loc the (at most two) bonds touching i.
    double bba = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        double b_loc = 0.0;
        if (i > 0) {
            b_loc += 2.0 * std::abs(j[i - 1]);
        }
        if (i < j.size()) {
            b_loc += 2.0 * std::abs(j[i]);
        }
        bba += std::abs(d[i]) * 4.0 * b_loc * b_loc;
    }
    return aab / 24.0 + bba / 12.0;
}

FullRegisterPropagator::FullRegisterPropagator(const ImperfectionRealization& realization,
                                               FullPropagatorOptions options)
    : terms_(realization.deltas, realization.couplings), options_(options) {
    identity_ = realization.is_zero();
    if (identity_) {
        return;
    }
    switch (options_.method) {
    case FullPropagatorMethod::Chebyshev: {
        const double bound = terms_.norm_bound();
        scale_ = 1.0 / bound;
        // e^{i b x} = J_0(b) + 2 sum_k i^k J_k(b) T_k(x), x = H / b in [-1, 1].
        Complex ik{1.0, 0.0};
        for (std::size_t k = 0; k < kMaxChebyshevTerms; ++k) {
            const double jk = std::cyl_bessel_j(static_cast<double>(k), bound);
            if (static_cast<double>(k) > bound && 2.0 * std::abs(jk) < kChebyshevCutoff) {
                break;
            }
            cheb_coeffs_.push_back((k == 0 ? 1.0 : 2.0) * jk * ik);
            ik *= Complex{0.0, 1.0};
        }
        if (cheb_coeffs_.size() < 2) {
            cheb_coeffs_.resize(2, Complex{0.0, 0.0});
        }
        break;
    }
    case FullPropagatorMethod::Split: {
        const double c = split_error_constant(terms_);
        split_steps_ = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::ceil(std::sqrt(c / options_.split_tolerance))));
        break;
    }
    case FullPropagatorMethod::Dense: {
        if (terms_.qubits() > options_.dense_limit) {
            throw CapacityError("dense full-register exponential limited to " +
                                std::to_string(options_.dense_limit) + " qubits");
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
            HermitianTermOperator(realization).dense());
        if (eig.info() != Eigen::Success) {
            throw std::runtime_error("eigendecomposition did not converge");
        }
        eigvecs_ = eig.eigenvectors();
        eigvals_ = eig.eigenvalues();
        break;
    }
    }
}

void FullRegisterPropagator::apply(StateVector& state) const {
    if (state.total_qubits() != terms_.qubits()) {
        throw ValidationError("full-register realization has " + std::to_string(terms_.qubits()) +
                              " sites, state has " + std::to_string(state.total_qubits()) +
                              " qubits");
    }
    apply(state.amplitudes());
}

void FullRegisterPropagator::apply(std::span<Complex> amps) const {
    if (amps.size() != (std::size_t{1} << terms_.qubits())) {
        throw ValidationError("amplitude span does not match the chain length");
    }
    if (identity_) {
        return;
    }
    switch (options_.method) {
    case FullPropagatorMethod::Chebyshev:
        apply_chebyshev(amps);
        break;
    case FullPropagatorMethod::Split:
        apply_split(amps);
        break;
    case FullPropagatorMethod::Dense:
        apply_dense(amps);
        break;
    }
}

void FullRegisterPropagator::apply_chebyshev(std::span<Complex> amps) const {
    const std::size_t n = amps.size();
    std::vector<Complex> prev(amps.begin(), amps.end());
    std::vector<Complex> cur(n);
    kernels::omp::chain_apply(prev, cur, terms_, scale_);

    const Complex c0 = cheb_coeffs_[0];
    const Complex c1 = cheb_coeffs_[1];
    const auto count = static_cast<std::int64_t>(n);
    Complex* out = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
        out[i] = c0 * prev[static_cast<std::size_t>(i)] + c1 * cur[static_cast<std::size_t>(i)];
    }
    for (std::size_t k = 2; k < cheb_coeffs_.size(); ++k) {
        kernels::omp::chebyshev_step(prev, cur, amps, terms_, scale_, cheb_coeffs_[k]);
        prev.swap(cur);
    }
}

void FullRegisterPropagator::apply_split(std::span<Complex> amps) const {
    const double dt = 1.0 / static_cast<double>(split_steps_);
    const auto couplings = terms_.couplings();
    // Adjacent half steps of the diagonal part are merged.
    kernels::omp::diagonal_phase(amps, terms_, 0.5 * dt);
    for (std::size_t s = 0; s < split_steps_; ++s) {
        for (std::size_t b = 0; b < couplings.size(); ++b) {
            kernels::omp::xx_rotation(amps, static_cast<int>(b), 2.0 * couplings[b] * dt);
        }
        const double t = (s + 1 == split_steps_) ? 0.5 * dt : dt;
        kernels::omp::diagonal_phase(amps, terms_, t);
    }
}

void FullRegisterPropagator::apply_dense(std::span<Complex> amps) const {
    const auto d = static_cast<Eigen::Index>(amps.size());
    // V is real: rotate real and imaginary parts as two columns.
    Eigen::MatrixXd parts(d, 2);
    for (Eigen::Index i = 0; i < d; ++i) {
        parts(i, 0) = amps[static_cast<std::size_t>(i)].real();
        parts(i, 1) = amps[static_cast<std::size_t>(i)].imag();
    }
    Eigen::MatrixXd coeff = eigvecs_.transpose() * parts;
    for (Eigen::Index m = 0; m < d; ++m) {
        const Complex z = std::polar(1.0, eigvals_(m)) * Complex{coeff(m, 0), coeff(m, 1)};
        coeff(m, 0) = z.real();
        coeff(m, 1) = z.imag();
    }
    parts.noalias() = eigvecs_ * coeff;
    for (Eigen::Index i = 0; i < d; ++i) {
        amps[static_cast<std::size_t>(i)] = {parts(i, 0), parts(i, 1)};
    }
}

void apply_full_propagator(StateVector& state, const ImperfectionRealization& realization,
                           const FullPropagatorOptions& options) {
    if (realization.scope != CouplingScope::FullRegister) {
        throw ValidationError("apply_full_propagator needs a full-register realization");
    }
    FullRegisterPropagator(realization, options).apply(state);
}

} // namespace shorsim
