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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "shorsim/state_vector.hpp"

namespace shorsim {

/// All r peaks of P(c) folded onto one cell of width s = round(Q/r).
/// values[i] is the mass at integer offset lowest_offset() + i.
struct ClashDistribution {
    std::size_t s = 0;
    std::vector<double> values;

    std::int64_t lowest_offset() const noexcept { return -static_cast<std::int64_t>(s / 2); }
    std::int64_t offset(std::size_t i) const noexcept {
        return lowest_offset() + static_cast<std::int64_t>(i);
    }
    double at_offset(std::int64_t c) const;
    double total() const;
};

/// Nearest-peak partition: c' goes to peak j = round(c' r / Q) with ties to the
/// lower j, offset c' - round(j Q / r) folded into [-s/2, s/2).
ClashDistribution clash(std::span<const double> probs, std::uint64_t r);
ClashDistribution clash(const MeasurementDistribution& p, std::uint64_t r);

/// 1 / sum W(c)^2. Throws DomainError for an all-zero W.
double ipr(const ClashDistribution& w);

/// Standard deviation of the folded offset under W.
double width(const ClashDistribution& w);

/// Realization-averaged observables at one coupling strength.
struct ScalarStats {
    double epsilon = 0.0;
    double xi_mean = 0.0;
    double xi_stderr = 0.0;
    double delta_n_mean = 0.0;
    std::size_t realizations = 0;
};

/// Means in index order; the standard error uses the n-1 sample variance and
/// is 0 for a single realization.
ScalarStats summarize(double epsilon, std::span<const double> xi, std::span<const double> delta_n);

struct CurvePoint {
    double epsilon = 0.0;
    double xi = 0.0;
};

/// First upward crossing of 10 xi0 on a curve sorted by epsilon, interpolated
/// linearly in (ln eps, ln xi). Empty when the curve never crosses from below.
std::optional<double> critical_epsilon(std::span<const CurvePoint> curve, double xi0);

/// Threshold factor of the crossing criterion.
inline constexpr double kCriticalRatio = 10.0;

struct PowerLawPoint {
    double log2_n = 0.0;
    double eps_c = 0.0;
};

/// eps_c = B / (log2 N)^beta.
struct FitResult {
    double B = 0.0;
    double beta = 0.0;
    double ln_B = 0.0;
    double ln_B_stderr = 0.0;
    double beta_stderr = 0.0;
    double residual_norm = 0.0;
    std::size_t points = 0;
};

/// OLS of ln eps_c on ln log2 N. Standard errors come from the regression
/// covariance with n-2 degrees of freedom (zero for two points). Throws
/// DomainError for fewer than two points, non-positive inputs or a single
/// distinct abscissa.
FitResult fit_power_law(std::span<const PowerLawPoint> points);

struct WidthPoint {
    std::uint64_t n = 0;
    int n_q = 0;
    double epsilon = 0.0;
    double delta_n = 0.0;
};

/// Delta n = A eps N and Delta n = a eps sqrt(n_q) N, each a least-squares
/// slope through the origin.
struct WidthScalingFit {
    double A = 0.0;
    double a = 0.0;
    double A_stderr = 0.0;
    double a_stderr = 0.0;
    double residual_norm = 0.0;
    std::size_t points = 0;
};

/// Throws DomainError when every abscissa is zero or inputs are not finite.
WidthScalingFit width_scaling_fit(std::span<const WidthPoint> points);

/// Ordinary least-squares slope of ln y on ln x.
double log_log_slope(std::span<const double> x, std::span<const double> y);

} // namespace shorsim
