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
#include <vector>

#include "shorsim/imperfections.hpp"
#include "shorsim/numtheory.hpp"
#include "shorsim/state_vector.hpp"

namespace shorsim {

struct CircuitOptions {
    /// Apply the imperfection propagator only on blocks whose control bit j
    /// is set. Default: unconditionally, right before the j-th controlled
    /// multiplication.
    bool controlled_noise = false;
    int max_qubits = kDefaultMaxQubits;
    FullPropagatorOptions full_propagator{};
    /// Run the multiplications for j = n_l-1 .. 0 instead of 0 .. n_l-1.
    bool reverse_multiplier_order = false;
};

/// Final state after init, Hadamards, the n_l controlled multiplications by
/// x^(2^j) mod N and the QFT on the control register.
StateVector run_ideal_state(const ShorInstance& instance, const CircuitOptions& options = {});

MeasurementDistribution run_ideal(const ShorInstance& instance,
                                  const CircuitOptions& options = {});

/// Same pipeline with e^{i dH_eff} inserted before every controlled
/// multiplication. Realizations come from streams keyed by
/// (master_seed, realization_index, tag); eps = 0 reproduces run_ideal bit for bit.
StateVector run_perturbed_state(const ShorInstance& instance, ImperfectionModel model,
                                double epsilon, std::uint64_t master_seed,
                                std::uint64_t realization_index,
                                const CircuitOptions& options = {});

MeasurementDistribution run_perturbed(const ShorInstance& instance, ImperfectionModel model,
                                      double epsilon, std::uint64_t master_seed,
                                      std::uint64_t realization_index,
                                      const CircuitOptions& options = {});

/// P(c, x^k) = Q^-2 sin^2(M_k pi c r / Q) / sin^2(pi c r / Q),
/// M_k = floor((Q - k - 1) / r) + 1; M_k^2 / Q^2 where c r = 0 mod Q.
double closed_form_P(std::uint64_t c, std::uint64_t k, const ShorInstance& instance);

/// sum_{k < r} closed_form_P(c, k).
double closed_form_total(std::uint64_t c, const ShorInstance& instance);

std::vector<double> closed_form_distribution(const ShorInstance& instance);

/// (r/Q)^2 (sin(pi c) / sin(pi c r / Q))^2 in peak-offset coordinates; 1 at c = 0.
double theoretical_G(double c, const ShorInstance& instance);

/// (sin(pi c) / (pi c))^2.
double envelope_W0(double c);

} // namespace shorsim
