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
#include <random>

#include "catch_amalgamated.hpp"
#include "shorsim/analysis.hpp"
#include "shorsim/circuit.hpp"
#include "shorsim/error.hpp"
#include "shorsim/harness.hpp"

using namespace shorsim;

namespace {

// Folding by explicit search over all peaks: nearest peak, lower j on ties.
std::vector<double> clash_by_search(const std::vector<double>& p, std::uint64_t r) {
    const double q = static_cast<double>(p.size());
    const auto s = static_cast<std::int64_t>(std::llround(q / static_cast<double>(r)));
    std::vector<double> w(static_cast<std::size_t>(s), 0.0);
    for (std::size_t c = 0; c < p.size(); ++c) {
        std::uint64_t best = 0;
        double best_d = 1e300;
        for (std::uint64_t j = 0; j <= r; ++j) {
            const double d = std::abs(static_cast<double>(c) - static_cast<double>(j) * q /
                                                                   static_cast<double>(r));
            if (d < best_d - 1e-9) {
                best_d = d;
                best = j;
            }
        }
        const auto centre = static_cast<std::int64_t>(
            std::floor(static_cast<double>(best) * q / static_cast<double>(r) + 0.5));
        std::int64_t off = static_cast<std::int64_t>(c) - centre;
        const std::int64_t lo = -(s / 2);
        while (off < lo) {
            off += s;
        }
        while (off >= lo + s) {
            off -= s;
        }
        w[static_cast<std::size_t>(off - lo)] += p[c];
    }
    return w;
}

std::vector<double> random_probs(std::size_t q, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    std::vector<double> p(q);
    double t = 0.0;
    for (auto& v : p) {
        v = d(gen);
        t += v;
    }
    for (auto& v : p) {
        v /= t;
    }
    return p;
}

ClashDistribution make_w(std::vector<double> v) {
    ClashDistribution w;
    w.s = v.size();
    w.values = std::move(v);
    return w;
}

} // namespace

TEST_CASE("clash examples", "[analysis]") {
    const auto inst = ShorInstance::make(15, 2, 8, 4);
    const auto w = clash(run_ideal(inst), 4);
    CHECK(w.s == 64);
    CHECK(std::abs(w.at_offset(0) - 1.0) < 1e-12);
    for (std::int64_t c = -32; c < 32; ++c) {
        if (c != 0) {
            REQUIRE(std::abs(w.at_offset(c)) < 1e-12);
        }
    }
    const std::vector<double> flat(1024, 1.0 / 1024);
    const auto wf = clash(flat, 6);
    CHECK(wf.s == 171);
    // Cells of width 170 and 171 fold into s = 171 offsets, so an offset can
    // collect two outcomes fewer than the rest.
    for (double v : wf.values) {
        CHECK(std::abs(v - 1.0 / 171) < 2.0 / 1024 + 1e-12);
    }
    CHECK(std::abs(wf.total() - 1.0) < 1e-12);
    const auto wd = clash(flat, 8);
    REQUIRE(wd.s == 128);
    for (double v : wd.values) {
        CHECK(v == 1.0 / 128);
    }
    CHECK_THROWS_AS(clash(flat, 2000), DomainError);
    CHECK_THROWS_AS(clash(flat, 0), DomainError);
}

TEST_CASE("clash matches the search oracle and conserves mass", "[analysis][property]") {
    for (std::uint64_t r : {1ULL, 3ULL, 6ULL, 10ULL, 12ULL, 20ULL, 72ULL, 100ULL}) {
        for (std::size_t q : {256UL, 1000UL, 4096UL}) {
            const auto p = random_probs(q, r * 7 + q);
            const auto w = clash(p, r);
            const auto ref = clash_by_search(p, r);
            REQUIRE(w.values.size() == ref.size());
            for (std::size_t i = 0; i < ref.size(); ++i) {
                REQUIRE(std::abs(w.values[i] - ref[i]) < 1e-15);
            }
            REQUIRE(std::abs(w.total() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("clash is blind to which peak an outcome came from", "[analysis][property]") {
    // Shifting P by a whole number of peak spacings (r | Q) relabels j only.
    const std::size_t q = 1024;
    const std::uint64_t r = 8;
    const auto p = random_probs(q, 3);
    std::vector<double> shifted(q);
    for (std::size_t c = 0; c < q; ++c) {
        shifted[(c + 3 * q / r) % q] = p[c];
    }
    const auto a = clash(p, r);
    const auto b = clash(shifted, r);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        REQUIRE(std::abs(a.values[i] - b.values[i]) < 1e-16);
    }
    CHECK(ipr(a) == Catch::Approx(ipr(b)).epsilon(1e-14));
    CHECK(width(a) == Catch::Approx(width(b)).epsilon(1e-14));
}

TEST_CASE("ipr", "[analysis]") {
    CHECK(ipr(make_w({0.0, 1.0, 0.0})) == 1.0);
    CHECK(ipr(make_w(std::vector<double>(8, 0.125))) == Catch::Approx(8.0));
    CHECK(ipr(make_w({0.5, 0.0, 0.5, 0.0})) == 2.0);
    CHECK_THROWS_AS(ipr(make_w({0.0, 0.0})), DomainError);
}

TEST_CASE("width", "[analysis]") {
    CHECK(width(make_w({0.0, 0.0, 1.0, 0.0, 0.0})) == 0.0);
    // s = 7, offsets -3..3: half at -2, half at +2
    CHECK(width(make_w({0.0, 0.5, 0.0, 0.0, 0.0, 0.5, 0.0})) == Catch::Approx(2.0));
    const std::size_t s = 11;
    CHECK(width(make_w(std::vector<double>(s, 1.0 / s))) ==
          Catch::Approx(std::sqrt((s * s - 1.0) / 12.0)));
}

TEST_CASE("summarize", "[analysis]") {
    const std::vector<double> xi = {1.0, 2.0, 3.0, 4.0};
    const std::vector<double> dn = {0.5, 0.5, 1.0, 1.0};
    const auto st = summarize(0.02, xi, dn);
    CHECK(st.xi_mean == 2.5);
    CHECK(st.delta_n_mean == 0.75);
    CHECK(st.xi_stderr == Catch::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(st.realizations == 4);
    CHECK(summarize(0.1, std::vector<double>{3.0}, std::vector<double>{1.0}).xi_stderr == 0.0);
}

TEST_CASE("critical_epsilon on a synthetic curve", "[analysis]") {
    const double xi0 = 2.0;
    const auto grid = ScanSpec{}.grid();
    std::vector<CurvePoint> curve;
    for (double e : grid) {
        curve.push_back({e, xi0 * (1.0 + std::pow(e / 0.1, 4.0))});
    }
    const auto ec = critical_epsilon(curve, xi0);
    REQUIRE(ec.has_value());
    const double exact = 0.1 * std::pow(9.0, 0.25);
    CHECK(std::abs(*ec - exact) / exact < 0.02);

    std::vector<CurvePoint> flat;
    for (double e : grid) {
        flat.push_back({e, 3.0 * xi0});
    }
    CHECK_FALSE(critical_epsilon(flat, xi0).has_value());
    CHECK_THROWS_AS(critical_epsilon(curve, 0.0), DomainError);
}

TEST_CASE("critical_epsilon is monotone in the curve", "[analysis][property]") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> bump(1.0, 1.5);
    const auto grid = ScanSpec{}.grid();
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<CurvePoint> curve;
        double xi = 1.0;
        for (double e : grid) {
            xi *= bump(gen);
            curve.push_back({e, xi});
        }
        auto raised = curve;
        for (auto& p : raised) {
            p.xi *= bump(gen);
        }
        const auto a = critical_epsilon(curve, 1.0);
        const auto b = critical_epsilon(raised, 1.0);
        if (a && b) {
            REQUIRE(*b <= *a * (1.0 + 1e-12));
        }
        if (a) {
            REQUIRE((b.has_value() || raised.front().xi >= 10.0));
        }
    }
}

TEST_CASE("fit_power_law", "[analysis]") {
    std::vector<PowerLawPoint> pts;
    for (double l2 : {4.0, 5.0, 6.3, 7.1, 8.0, 9.9}) {
        pts.push_back({l2, 2.0 / std::pow(l2, 1.5)});
    }
    const auto f = fit_power_law(pts);
    CHECK(std::abs(f.B - 2.0) < 1e-9);
    CHECK(std::abs(f.beta - 1.5) < 1e-9);
    CHECK(f.residual_norm < 1e-12);
    CHECK(f.points == 6);

    const std::vector<PowerLawPoint> two = {{4.0, 0.2}, {8.0, 0.07}};
    const auto g = fit_power_law(two);
    CHECK(g.residual_norm < 1e-14);
    CHECK(g.beta_stderr == 0.0);
    CHECK(g.B / std::pow(4.0, g.beta) == Catch::Approx(0.2));

    CHECK_THROWS_AS(fit_power_law(std::vector<PowerLawPoint>{{5.0, 0.1}, {5.0, 0.2}}),
                    DomainError);
    CHECK_THROWS_AS(fit_power_law(std::vector<PowerLawPoint>{{5.0, 0.1}}), DomainError);
    CHECK_THROWS_AS(fit_power_law(std::vector<PowerLawPoint>{{5.0, -0.1}, {6.0, 0.1}}),
                    DomainError);
}

TEST_CASE("fit_power_law standard errors match a hand computation", "[analysis]") {
    // y = ln eps, x = ln log2 N; residuals (+d, -d, +d, -d) around y = 1 - 2x.
    const double d = 0.01;
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    std::vector<PowerLawPoint> pts;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double y = 1.0 - 2.0 * x[i] + (i % 2 == 0 ? d : -d);
        pts.push_back({std::exp(x[i]), std::exp(y)});
    }
    const auto f = fit_power_law(pts);
    // slope: sum (x-2.5)(y) / 5 with y residual pattern gives -2 - 0.4 d / 5 * ... computed:
    const double sxx = 5.0;
    const double slope = -2.0 + (-1.5 * d + -0.5 * -d + 0.5 * d + 1.5 * -d) / sxx;
    CHECK(-f.beta == Catch::Approx(slope).epsilon(1e-12));
    double rss = 0.0;
    const double intercept = (1.0 - 2.0 * 2.5) - slope * 2.5;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double y = 1.0 - 2.0 * x[i] + (i % 2 == 0 ? d : -d);
        rss += std::pow(y - intercept - slope * x[i], 2);
    }
    const double sigma2 = rss / 2.0;
    CHECK(f.beta_stderr == Catch::Approx(std::sqrt(sigma2 / sxx)).epsilon(1e-10));
    CHECK(f.ln_B_stderr ==
          Catch::Approx(std::sqrt(sigma2 * (0.25 + 6.25 / sxx))).epsilon(1e-10));
    CHECK(f.ln_B == Catch::Approx(intercept).epsilon(1e-12));
}

TEST_CASE("width_scaling_fit", "[analysis]") {
    std::vector<WidthPoint> pts;
    for (std::uint64_t n : {14ULL, 21ULL, 33ULL}) {
        for (double e : {0.01, 0.02}) {
            pts.push_back({n, 6, e, 14.0 * e * static_cast<double>(n)});
        }
    }
    const auto f = width_scaling_fit(pts);
    CHECK(f.A == Catch::Approx(14.0).epsilon(1e-12));
    CHECK(f.a == Catch::Approx(14.0 / std::sqrt(6.0)).epsilon(1e-12));
    CHECK(f.residual_norm < 1e-12);

    std::vector<WidthPoint> flat;
    for (std::uint64_t n : {14ULL, 21ULL, 33ULL, 55ULL}) {
        flat.push_back({n, 6, 0.0, 3.0});
    }
    CHECK_THROWS_AS(width_scaling_fit(flat), DomainError);
    std::vector<WidthPoint> indep;
    for (std::uint64_t n : {14ULL, 210ULL}) {
        indep.push_back({n, 6, 0.02, 3.0});
    }
    const auto g = width_scaling_fit(indep);
    CHECK(g.residual_norm > 1.0);
}

TEST_CASE("log_log_slope", "[analysis]") {
    const std::vector<double> x = {1.0, 2.0, 4.0, 8.0};
    const std::vector<double> y = {3.0, 12.0, 48.0, 192.0};
    CHECK(log_log_slope(x, y) == Catch::Approx(2.0).epsilon(1e-12));
}
