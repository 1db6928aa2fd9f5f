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
#include "shorsim/circuit.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "shorsim/error.hpp"

namespace shorsim {

namespace {

using NoiseHook = std::function<void(StateVector&, int j, std::uint64_t multiplier)>;

StateVector run_pipeline(const ShorInstance& instance, const CircuitOptions& options,
                         const NoiseHook& noise) {
    StateVector state = init_psi0(instance.control_qubits(), instance.computational_qubits(),
                                  options.max_qubits);
    hadamard_control(state);
    const int n_l = instance.control_qubits();
    std::vector<std::uint64_t> multipliers(static_cast<std::size_t>(n_l));
    std::uint64_t m = instance.base() % instance.modulus();
    for (int j = 0; j < n_l; ++j) {
        multipliers[static_cast<std::size_t>(j)] = m;
        m = m * m % instance.modulus();
    }
    for (int step = 0; step < n_l; ++step) {
        const int j = options.reverse_multiplier_order ? n_l - 1 - step : step;
        const std::uint64_t mj = multipliers[static_cast<std::size_t>(j)];
        if (noise) {
            noise(state, j, mj);
        }
        controlled_modmul(state, j, mj, instance.modulus());
    }
    qft_control(state);
    return state;
}

} // namespace

StateVector run_ideal_state(const ShorInstance& instance, const CircuitOptions& options) {
    return run_pipeline(instance, options, {});
}

MeasurementDistribution run_ideal(const ShorInstance& instance, const CircuitOptions& options) {
    return control_marginal(run_ideal_state(instance, options));
}

StateVector run_perturbed_state(const ShorInstance& instance, ImperfectionModel model,
                                double epsilon, std::uint64_t master_seed,
                                std::uint64_t realization_index,
                                const CircuitOptions& options) {
    if (!(epsilon >= 0.0)) {
        throw DomainError("coupling strength must be >= 0");
    }
    const int n_q = instance.computational_qubits();
    const auto control_of = [&](int j) -> std::optional<int> {
        return options.controlled_noise ? std::optional<int>(j) : std::nullopt;
    };

    switch (model) {
    case ImperfectionModel::Generic: {
        RealizationCache cache(n_q, epsilon, master_seed, realization_index);
        return run_pipeline(instance, options, [&](StateVector& s, int j, std::uint64_t mj) {
            apply_computational_propagator(s, cache.propagator_for_x(mj), control_of(j));
        });
    }
    case ImperfectionModel::Correlated: {
        const Propagator u = build_propagator(draw_realization(
            n_q, epsilon, master_seed, realization_index, stream_tag(model, 0),
            CouplingScope::Computational, model));
        return run_pipeline(instance, options, [&](StateVector& s, int j, std::uint64_t) {
            apply_computational_propagator(s, u, control_of(j));
        });
    }
    case ImperfectionModel::CorrelatedAll: {
        if (options.controlled_noise) {
            throw ValidationError(
                "controlled noise is undefined for a propagator acting on the control register");
        }
        const FullRegisterPropagator u(
            draw_realization(instance.total_qubits(), epsilon, master_seed, realization_index,
                             stream_tag(model, 0), CouplingScope::FullRegister, model),
            options.full_propagator);
        return run_pipeline(instance, options,
                            [&](StateVector& s, int, std::uint64_t) { u.apply(s); });
    }
    }
    throw ValidationError("unknown imperfection model");
}

MeasurementDistribution run_perturbed(const ShorInstance& instance, ImperfectionModel model,
                                      double epsilon, std::uint64_t master_seed,
                                      std::uint64_t realization_index,
                                      const CircuitOptions& options) {
    return control_marginal(
        run_perturbed_state(instance, model, epsilon, master_seed, realization_index, options));
}

double closed_form_P(std::uint64_t c, std::uint64_t k, const ShorInstance& instance) {
    const std::uint64_t q = instance.control_dim();
    const std::uint64_t r = instance.order();
    if (c >= q || k >= r) {
        throw DomainError("closed_form_P: need 0 <= c < Q and 0 <= k < r");
    }
    const std::uint64_t m_k = (q - k - 1) / r + 1;
    const double qd = static_cast<double>(q);
    // Reduce c r mod Q exactly; the ratio is singular only where it vanishes.
    const auto cr = static_cast<std::uint64_t>(static_cast<unsigned __int128>(c) * r % q);
    if (cr == 0) {
        const double md = static_cast<double>(m_k);
        return md * md / (qd * qd);
    }
    const auto mcr = static_cast<std::uint64_t>(static_cast<unsigned __int128>(m_k) * cr % q);
    const double num = std::sin(std::numbers::pi * static_cast<double>(mcr) / qd);
    const double den = std::sin(std::numbers::pi * static_cast<double>(cr) / qd);
    const double ratio = num / den;
    return ratio * ratio / (qd * qd);
}

double closed_form_total(std::uint64_t c, const ShorInstance& instance) {
    double p = 0.0;
    for (std::uint64_t k = 0; k < instance.order(); ++k) {
        p += closed_form_P(c, k, instance);
    }
    return p;
}

std::vector<double> closed_form_distribution(const ShorInstance& instance) {
    std::vector<double> p(instance.control_dim());
    for (std::uint64_t c = 0; c < p.size(); ++c) {
        p[c] = closed_form_total(c, instance);
    }
    return p;
}

double theoretical_G(double c, const ShorInstance& instance) {
    const double ratio_rq =
        static_cast<double>(instance.order()) / static_cast<double>(instance.control_dim());
    const double den = std::sin(std::numbers::pi * c * ratio_rq);
    if (std::abs(den) < 1e-12) {
        return 1.0;
    }
    const double v = ratio_rq * std::sin(std::numbers::pi * c) / den;
    return v * v;
}

double envelope_W0(double c) {
    if (c == 0.0) {
        return 1.0;
    }
    const double v = std::sin(std::numbers::pi * c) / (std::numbers::pi * c);
    return v * v;
}

} // namespace shorsim
