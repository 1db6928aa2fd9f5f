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
#include "shorsim/imperfections.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "shorsim/error.hpp"

namespace shorsim {

namespace {

constexpr std::uint64_t kCorrelatedTag = 0xc0441e1a7ed00001ULL;
constexpr std::uint64_t kCorrelatedAllTag = 0xc0441e1a7ed00002ULL;

} // namespace

std::string_view to_string(ImperfectionModel model) {
    switch (model) {
    case ImperfectionModel::Generic:
        return "generic";
    case ImperfectionModel::Correlated:
        return "correlated";
    case ImperfectionModel::CorrelatedAll:
        return "correlated-all";
    }
    return "unknown";
}

std::string_view to_string(CouplingScope scope) {
    return scope == CouplingScope::Computational ? "computational" : "full-register";
}

ImperfectionModel parse_model(std::string_view name) {
    if (name == "generic") {
        return ImperfectionModel::Generic;
    }
    if (name == "correlated") {
        return ImperfectionModel::Correlated;
    }
    if (name == "correlated-all") {
        return ImperfectionModel::CorrelatedAll;
    }
    throw ValidationError("unknown imperfection model '" + std::string(name) + "'");
}

bool ImperfectionRealization::is_zero() const noexcept {
    const auto zero = [](double v) { return v == 0.0; };
    return std::all_of(deltas.begin(), deltas.end(), zero) &&
           std::all_of(couplings.begin(), couplings.end(), zero);
}

double ImperfectionRealization::max_abs_coefficient() const noexcept {
    double m = 0.0;
    for (double v : deltas) {
        m = std::max(m, std::abs(v));
    }
    for (double v : couplings) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

ImperfectionRealization sample_realization(int n, double epsilon, Rng& rng, CouplingScope scope,
                                           ImperfectionModel model) {
    if (!(epsilon >= 0.0)) {
        throw DomainError("coupling strength must be >= 0");
    }
    if (n < 1) {
        throw DomainError("realization needs at least one qubit");
    }
    const double half_width = std::sqrt(3.0) * epsilon;
    ImperfectionRealization r;
    r.epsilon = epsilon;
    r.model = model;
    r.scope = scope;
    r.deltas.resize(static_cast<std::size_t>(n));
    r.couplings.resize(static_cast<std::size_t>(n - 1));
    // u in [-1, 1) keeps every coefficient inside the closed interval.
    for (double& d : r.deltas) {
        d = half_width * rng.uniform_pm1();
    }
    for (double& j : r.couplings) {
        j = half_width * rng.uniform_pm1();
    }
    return r;
}

std::uint64_t stream_tag(ImperfectionModel model, std::uint64_t x_value) {
    switch (model) {
    case ImperfectionModel::Generic:
        return x_value;
    case ImperfectionModel::Correlated:
        return kCorrelatedTag;
    case ImperfectionModel::CorrelatedAll:
        return kCorrelatedAllTag;
    }
    return 0;
}

ImperfectionRealization draw_realization(int n, double epsilon, std::uint64_t master_seed,
                                         std::uint64_t realization_index, std::uint64_t tag,
                                         CouplingScope scope, ImperfectionModel model) {
    const std::uint64_t seed = derive_stream_seed(master_seed, realization_index, tag);
    Rng rng(seed);
    ImperfectionRealization r = sample_realization(n, epsilon, rng, scope, model);
    r.provenance = {master_seed, realization_index, tag, seed};
    return r;
}

Propagator Propagator::make_identity(int n) {
    Propagator p;
    p.qubits = n;
    p.identity = true;
    const std::size_t d = p.dim();
    p.matrix.assign(d * d, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < d; ++i) {
        p.matrix[i * d + i] = 1.0;
    }
    return p;
}

double Propagator::unitarity_defect() const {
    const auto d = static_cast<Eigen::Index>(dim());
    using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMat> u(matrix.data(), d, d);
    const Eigen::MatrixXcd defect = u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d);
    return defect.cwiseAbs().maxCoeff();
}

HermitianTermOperator::HermitianTermOperator(const ImperfectionRealization& realization)
    : terms_(realization.deltas, realization.couplings) {}

Eigen::MatrixXd HermitianTermOperator::dense() const {
    const auto d = static_cast<Eigen::Index>(dimension());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    const auto couplings = terms_.couplings();
    for (Eigen::Index i = 0; i < d; ++i) {
        h(i, i) = terms_.diagonal(static_cast<std::size_t>(i));
        for (std::size_t b = 0; b < couplings.size(); ++b) {
            const auto j = static_cast<Eigen::Index>(static_cast<std::size_t>(i) ^
                                                     (std::size_t{3} << b));
            h(j, i) += 2.0 * couplings[b];
        }
    }
    return h;
}

Propagator HermitianTermOperator::exponentiate() const {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense());
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition did not converge");
    }
    const Eigen::MatrixXd& v = eig.eigenvectors();
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    const Eigen::MatrixXd re = v * lambda.array().cos().matrix().asDiagonal() * v.transpose();
    const Eigen::MatrixXd im = v * lambda.array().sin().matrix().asDiagonal() * v.transpose();

    Propagator p;
    p.qubits = qubits();
    const std::size_t d = dimension();
    p.matrix.resize(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const auto ei = static_cast<Eigen::Index>(i);
            const auto ej = static_cast<Eigen::Index>(j);
            p.matrix[i * d + j] = {re(ei, ej), im(ei, ej)};
        }
    }
    return p;
}

Propagator build_propagator(const ImperfectionRealization& realization, int dense_threshold) {
    const int n = realization.qubits();
    if (n < 1) {
        throw DomainError("empty realization");
    }
    if (n > dense_threshold) {
        throw CapacityError("dense propagator for " + std::to_string(n) +
                            " qubits exceeds the threshold of " + std::to_string(dense_threshold));
    }
    if (realization.is_zero()) {
        return Propagator::make_identity(n);
    }
    return HermitianTermOperator(realization).exponentiate();
}

void apply_computational_propagator(StateVector& state, const Propagator& u,
                                    std::optional<int> control_qubit) {
    if (u.qubits != state.computational_qubits()) {
        throw ValidationError("propagator acts on " + std::to_string(u.qubits) +
                              " qubits, computational register has " +
                              std::to_string(state.computational_qubits()));
    }
    if (control_qubit && (*control_qubit < 0 || *control_qubit >= state.control_qubits())) {
        throw ValidationError("control qubit index out of range");
    }
    if (u.identity) {
        return;
    }
    const std::size_t mask = control_qubit ? (std::size_t{1} << *control_qubit) : 0;
    kernels::omp::apply_row_matrix(state.amplitudes(), state.block_dim(), mask, u.matrix);
}

RealizationCache::RealizationCache(int qubits, double epsilon, std::uint64_t master_seed,
                                   std::uint64_t realization_index)
    : qubits_(qubits), epsilon_(epsilon), master_seed_(master_seed),
      realization_index_(realization_index) {}

RealizationCache::Entry& RealizationCache::entry(std::uint64_t x_value) {
    auto it = entries_.find(x_value);
    if (it == entries_.end()) {
        Entry e{draw_realization(qubits_, epsilon_, master_seed_, realization_index_,
                                 stream_tag(ImperfectionModel::Generic, x_value),
                                 CouplingScope::Computational, ImperfectionModel::Generic),
                std::nullopt};
        it = entries_.emplace(x_value, std::move(e)).first;
    }
    return it->second;
}

const ImperfectionRealization& RealizationCache::realization_for_x(std::uint64_t x_value) {
    return entry(x_value).realization;
}

const Propagator& RealizationCache::propagator_for_x(std::uint64_t x_value) {
    Entry& e = entry(x_value);
    if (!e.propagator) {
        e.propagator = build_propagator(e.realization);
    }
    return *e.propagator;
}

} // namespace shorsim
