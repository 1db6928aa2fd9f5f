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

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "shorsim/kernels.hpp"
#include "shorsim/rng.hpp"
#include "shorsim/state_vector.hpp"

namespace shorsim {

enum class ImperfectionModel {
    Generic,       ///< fresh couplings per distinct multiplier value
    Correlated,    ///< one realization for the whole circuit, computational register
    CorrelatedAll  ///< one realization on the full L-qubit chain
};

enum class CouplingScope { Computational, FullRegister };

std::string_view to_string(ImperfectionModel model);
std::string_view to_string(CouplingScope scope);
/// Accepts "generic", "correlated", "correlated-all"; throws ValidationError otherwise.
ImperfectionModel parse_model(std::string_view name);

/// Where a realization's random numbers came from.
struct StreamProvenance {
    std::uint64_t master_seed = 0;
    std::uint64_t realization_index = 0;
    std::uint64_t tag = 0;
    std::uint64_t stream_seed = 0;
    friend bool operator==(const StreamProvenance&, const StreamProvenance&) = default;
};

/// One draw of the one-qubit shifts delta_i and chain couplings J_i, all
/// uniform on [-sqrt(3) eps, sqrt(3) eps].
struct ImperfectionRealization {
    double epsilon = 0.0;
    ImperfectionModel model = ImperfectionModel::Generic;
    CouplingScope scope = CouplingScope::Computational;
    std::vector<double> deltas;
    std::vector<double> couplings;
    StreamProvenance provenance;

    int qubits() const noexcept { return static_cast<int>(deltas.size()); }
    bool is_zero() const noexcept;
    double max_abs_coefficient() const noexcept;
    friend bool operator==(const ImperfectionRealization&,
                           const ImperfectionRealization&) = default;
};

/// Draws n deltas then n-1 couplings from `rng`. Throws DomainError for eps < 0
/// or n < 1.
ImperfectionRealization sample_realization(int n, double epsilon, Rng& rng, CouplingScope scope,
                                           ImperfectionModel model);

/// Stream tag: the multiplier value for the generic model, a per-model
/// constant otherwise.
std::uint64_t stream_tag(ImperfectionModel model, std::uint64_t x_value);

/// sample_realization on the stream derive_stream_seed(master, index, tag),
/// with provenance filled in. The same stream scaled by eps is used for every
/// eps, so sweeps over eps share their disorder.
ImperfectionRealization draw_realization(int n, double epsilon, std::uint64_t master_seed,
                                         std::uint64_t realization_index, std::uint64_t tag,
                                         CouplingScope scope, ImperfectionModel model);

/// Dense unitary on 2^n states, row-major.
struct Propagator {
    int qubits = 0;
    bool identity = false;
    std::vector<Complex> matrix;

    std::size_t dim() const noexcept { return std::size_t{1} << qubits; }
    Complex operator()(std::size_t i, std::size_t j) const { return matrix[i * dim() + j]; }

    static Propagator make_identity(int n);
    /// max |U^dagger U - I|.
    double unitarity_defect() const;
};

/// H = sum_i delta_i Z_i + 2 sum_i J_i X_i X_{i+1}. H is real symmetric.
class HermitianTermOperator {
  public:
    explicit HermitianTermOperator(const ImperfectionRealization& realization);

    int qubits() const noexcept { return terms_.qubits(); }
    std::size_t dimension() const noexcept { return std::size_t{1} << qubits(); }
    const kernels::ChainTerms& terms() const noexcept { return terms_; }

    Eigen::MatrixXd dense() const;

    /// e^{iH} = V e^{i Lambda} V^T from a symmetric eigendecomposition.
    Propagator exponentiate() const;

  private:
    kernels::ChainTerms terms_;
};

inline constexpr int kDenseThreshold = 14;

/// Exact e^{iH} for a register of at most `dense_threshold` qubits; eps = 0
/// gives the identity exactly. Throws CapacityError above the threshold.
Propagator build_propagator(const ImperfectionRealization& realization,
                            int dense_threshold = kDenseThreshold);

/// Applies U to every computational block, or only to blocks whose control
/// qubit `control_qubit` is set.
void apply_computational_propagator(StateVector& state, const Propagator& u,
                                    std::optional<int> control_qubit = std::nullopt);

/// Per-run store of generic-model realizations keyed by multiplier value:
/// equal x values share a realization (and propagator), distinct ones get
/// independent streams.
class RealizationCache {
  public:
    RealizationCache(int qubits, double epsilon, std::uint64_t master_seed,
                     std::uint64_t realization_index);

    const ImperfectionRealization& realization_for_x(std::uint64_t x_value);
    const Propagator& propagator_for_x(std::uint64_t x_value);
    std::size_t size() const noexcept { return entries_.size(); }

  private:
    struct Entry {
        ImperfectionRealization realization;
        std::optional<Propagator> propagator;
    };
    Entry& entry(std::uint64_t x_value);

    int qubits_;
    double epsilon_;
    std::uint64_t master_seed_;
    std::uint64_t realization_index_;
    std::map<std::uint64_t, Entry> entries_;
};

enum class FullPropagatorMethod {
    Chebyshev, ///< Jacobi-Anger expansion of e^{iH}, accurate to ~1e-15
    Split,     ///< symmetric Z / XX splitting with a commutator-bounded step
    Dense      ///< eigendecomposition of the 2^L matrix; small L only
};

std::string_view to_string(FullPropagatorMethod method);

struct FullPropagatorOptions {
    FullPropagatorMethod method = FullPropagatorMethod::Chebyshev;
    /// Target for the splitting error bound.
    double split_tolerance = 1e-9;
    /// Largest register the dense method will accept.
    int dense_limit = kDenseThreshold;
};

/// Matrix-free e^{iH} for a chain spanning the whole L-qubit register
/// (flat bit i is chain site i, so the computational/control boundary is the
/// bond between sites n_q-1 and n_q).
class FullRegisterPropagator {
  public:
    FullRegisterPropagator(const ImperfectionRealization& realization,
                           FullPropagatorOptions options = {});

    void apply(std::span<Complex> amps) const;
    void apply(StateVector& state) const;

    int qubits() const noexcept { return terms_.qubits(); }
    FullPropagatorMethod method() const noexcept { return options_.method; }
    std::size_t split_steps() const noexcept { return split_steps_; }
    std::size_t chebyshev_terms() const noexcept { return cheb_coeffs_.size(); }

  private:
    void apply_chebyshev(std::span<Complex> amps) const;
    void apply_split(std::span<Complex> amps) const;
    void apply_dense(std::span<Complex> amps) const;

    kernels::ChainTerms terms_;
    FullPropagatorOptions options_;
    bool identity_ = false;
    double scale_ = 0.0;
    std::vector<Complex> cheb_coeffs_;
    std::size_t split_steps_ = 0;
    Eigen::MatrixXd eigvecs_;
    Eigen::VectorXd eigvals_;
};

/// Leading-order global error constant of the symmetric splitting,
/// ||[A,[A,B]]||/24 + ||[B,[B,A]]||/12, from local commutator bounds
/// (A = Z part, B = XX part).
double split_error_constant(const kernels::ChainTerms& terms);

/// Builds a FullRegisterPropagator and applies it once.
void apply_full_propagator(StateVector& state, const ImperfectionRealization& realization,
                           const FullPropagatorOptions& options = {});

} // namespace shorsim
