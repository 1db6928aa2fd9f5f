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
#include "shorsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "shorsim/error.hpp"

namespace shorsim {

double ClashDistribution::at_offset(std::int64_t c) const {
    const std::int64_t i = c - lowest_offset();
    if (i < 0 || i >= static_cast<std::int64_t>(s)) {
        throw DomainError("offset outside the clash cell");
    }
    return values[static_cast<std::size_t>(i)];
}

double ClashDistribution::total() const {
    double t = 0.0;
    for (double v : values) {
        t += v;
    }
    return t;
}

ClashDistribution clash(std::span<const double> probs, std::uint64_t r) {
    const std::uint64_t q = probs.size();
    if (r == 0 || q == 0 || r > q) {
        throw DomainError("clash: need 1 <= r <= Q");
    }
    ClashDistribution w;
    w.s = static_cast<std::size_t>((2 * q + r) / (2 * r));
    w.values.assign(w.s, 0.0);
    const auto s = static_cast<std::int64_t>(w.s);
    const std::int64_t lo = w.lowest_offset();
    using u128 = unsigned __int128;
    for (std::uint64_t c = 0; c < q; ++c) {
        // round(c r / Q), half-way cases down
        const auto j = static_cast<std::uint64_t>((2 * u128{c} * r + q - 1) / (2 * u128{q}));
        // round(j Q / r), half-way cases up
        const auto peak = static_cast<std::int64_t>((2 * u128{j} * q + r) / (2 * u128{r}));
        std::int64_t off = (static_cast<std::int64_t>(c) - peak - lo) % s;
        if (off < 0) {
            off += s;
        }
        w.values[static_cast<std::size_t>(off)] += probs[c];
    }
    return w;
}

ClashDistribution clash(const MeasurementDistribution& p, std::uint64_t r) {
    return clash(std::span<const double>(p.probs), r);
}

double ipr(const ClashDistribution& w) {
    double sum = 0.0;
    for (double v : w.values) {
        sum += v * v;
    }
    if (!(sum > 0.0)) {
        throw DomainError("ipr of an all-zero distribution");
    }
    return 1.0 / sum;
}

double width(const ClashDistribution& w) {
    double mass = 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        mass += w.values[i];
        mean += static_cast<double>(w.offset(i)) * w.values[i];
    }
    if (mass > 0.0) {
        mean /= mass;
    }
    double var = 0.0;
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        const double d = static_cast<double>(w.offset(i)) - mean;
        var += w.values[i] * d * d;
    }
    return std::sqrt(std::max(var, 0.0));
}

ScalarStats summarize(double epsilon, std::span<const double> xi,
                      std::span<const double> delta_n) {
    if (xi.size() != delta_n.size()) {
        throw DomainError("summarize: xi and delta_n lengths differ");
    }
    ScalarStats st;
    st.epsilon = epsilon;
    st.realizations = xi.size();
    if (xi.empty()) {
        return st;
    }
    const auto n = static_cast<double>(xi.size());
    double sx = 0.0;
    double sd = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i) {
        sx += xi[i];
        sd += delta_n[i];
    }
    st.xi_mean = sx / n;
    st.delta_n_mean = sd / n;
    if (xi.size() > 1) {
        double ss = 0.0;
        for (double v : xi) {
            ss += (v - st.xi_mean) * (v - st.xi_mean);
        }
        st.xi_stderr = std::sqrt(ss / (n - 1.0) / n);
    }
    return st;
}

std::optional<double> critical_epsilon(std::span<const CurvePoint> curve, double xi0) {
    if (!(xi0 > 0.0)) {
        throw DomainError("critical_epsilon: xi0 must be positive");
    }
    const double threshold = kCriticalRatio * xi0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const CurvePoint& lo = curve[i - 1];
        const CurvePoint& hi = curve[i];
        if (lo.xi < threshold && hi.xi >= threshold) {
            if (!(lo.epsilon > 0.0) || !(hi.epsilon > lo.epsilon) || !(lo.xi > 0.0)) {
                throw DomainError("critical_epsilon: curve must be positive and sorted");
            }
            const double t = (std::log(threshold) - std::log(lo.xi)) /
                             (std::log(hi.xi) - std::log(lo.xi));
            return std::exp(std::log(lo.epsilon) +
                            t * (std::log(hi.epsilon) - std::log(lo.epsilon)));
        }
    }
    return std::nullopt;
}

namespace {

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double intercept_se = 0.0;
    double slope_se = 0.0;
    double rss = 0.0;
};

LineFit ols(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) {
        throw DomainError("regression needs at least two points");
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
            throw DomainError("regression input is not finite");
        }
        mx += x[i];
        my += y[i];
    }
    const auto nd = static_cast<double>(n);
    mx /= nd;
    my /= nd;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 1e-300)) {
        throw DomainError("degenerate abscissas");
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - f.intercept - f.slope * x[i];
        f.rss += e * e;
    }
    if (n > 2) {
        const double sigma2 = f.rss / (nd - 2.0);
        f.slope_se = std::sqrt(sigma2 / sxx);
        f.intercept_se = std::sqrt(sigma2 * (1.0 / nd + mx * mx / sxx));
    }
    return f;
}

} // namespace

FitResult fit_power_law(std::span<const PowerLawPoint> points) {
    std::vector<double> x;
    std::vector<double> y;
    for (const PowerLawPoint& p : points) {
        if (!(p.log2_n > 0.0) || !(p.eps_c > 0.0)) {
            throw DomainError("fit_power_law: inputs must be positive");
        }
        x.push_back(std::log(p.log2_n));
        y.push_back(std::log(p.eps_c));
    }
    const LineFit f = ols(x, y);
    FitResult r;
    r.ln_B = f.intercept;
    r.B = std::exp(f.intercept);
    r.beta = -f.slope;
    r.ln_B_stderr = f.intercept_se;
    r.beta_stderr = f.slope_se;
    r.residual_norm = std::sqrt(f.rss);
    r.points = points.size();
    return r;
}

namespace {

// Slope through the origin with its standard error and residual norm.
std::tuple<double, double, double> origin_slope(std::span<const double> x,
                                                std::span<const double> y) {
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    if (!(sxx > 0.0)) {
        throw DomainError("width_scaling_fit: all abscissas are zero");
    }
    const double k = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        rss += (y[i] - k * x[i]) * (y[i] - k * x[i]);
    }
    const double se =
        x.size() > 1 ? std::sqrt(rss / static_cast<double>(x.size() - 1) / sxx) : 0.0;
    return {k, se, std::sqrt(rss)};
}

} // namespace

WidthScalingFit width_scaling_fit(std::span<const WidthPoint> points) {
    std::vector<double> en;
    std::vector<double> esn;
    std::vector<double> dn;
    for (const WidthPoint& p : points) {
        if (!std::isfinite(p.epsilon) || !std::isfinite(p.delta_n) || p.n_q < 1) {
            throw DomainError("width_scaling_fit: invalid point");
        }
        en.push_back(p.epsilon * static_cast<double>(p.n));
        esn.push_back(en.back() * std::sqrt(static_cast<double>(p.n_q)));
        dn.push_back(p.delta_n);
    }
    WidthScalingFit f;
    f.points = points.size();
    std::tie(f.A, f.A_stderr, f.residual_norm) = origin_slope(en, dn);
    double unused = 0.0;
    std::tie(f.a, f.a_stderr, unused) = origin_slope(esn, dn);
    return f;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DomainError("log_log_slope: length mismatch");
    }
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw DomainError("log_log_slope: inputs must be positive");
        }
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    return ols(lx, ly).slope;
}

} // namespace shorsim
