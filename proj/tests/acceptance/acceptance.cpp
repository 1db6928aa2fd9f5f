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
// Acceptance gate: one PASS/FAIL line per criterion. Run with criterion
// names (c1 .. c8) to select a subset; no arguments runs all of them.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "shorsim/analysis.hpp"
#include "shorsim/circuit.hpp"
#include "shorsim/harness.hpp"

using namespace shorsim;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20260101;
constexpr int kRealizations = 40;

struct Check {
    bool pass = true;
    std::vector<std::string> lines;

    void expect(bool ok, const std::string& what) {
        pass = pass && ok;
        lines.push_back(std::string(ok ? "    ok   " : "    FAIL ") + what);
    }
    void note(const std::string& what) { lines.push_back("    note " + what); }
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h = (h ^ c) * 0x100000001b3ULL;
    }
    return h;
}

InstanceSpec inst(std::uint64_t n, std::uint64_t x) { return {n, x, std::nullopt, std::nullopt}; }

// ---------------------------------------------------------------- C1
Check c1() {
    Check r;
    const OracleReport rep = oracle_check(reference_instances_upto_91());
    double worst = 0.0;
    for (const auto& row : rep.rows) {
        worst = std::max(worst, row.max_deviation);
        r.expect(row.max_deviation < 1e-10,
                 fmt("N=%llu x=%llu L=%d  max|P_sim - P_closed| = %.3e < 1e-10",
                     (unsigned long long)row.n, (unsigned long long)row.x, row.total_qubits,
                     row.max_deviation));
    }
    r.expect(rep.rows.size() == 12, fmt("%zu reference instances with N <= 91", rep.rows.size()));
    r.note(fmt("worst deviation %.3e", worst));
    return r;
}

// ---------------------------------------------------------------- C2
Check c2() {
    Check r;
    for (std::uint64_t n : {15ULL, 21ULL, 323ULL}) {
        const ShorInstance i = ShorInstance::make(n, 2);
        CircuitOptions opt;
        opt.max_qubits = std::max(kDefaultMaxQubits, i.total_qubits());
        const MeasurementDistribution ideal = run_ideal(i, opt);
        std::vector<ImperfectionModel> models = {ImperfectionModel::Generic};
        if (i.total_qubits() <= 21) {
            models.push_back(ImperfectionModel::Correlated);
            models.push_back(ImperfectionModel::CorrelatedAll);
        }
        for (auto m : models) {
            const bool same = run_perturbed(i, m, 0.0, kSeed, 0, opt) == ideal;
            r.expect(same, fmt("N=%llu L=%d %s: eps=0 run bit-identical to ideal run",
                               (unsigned long long)n, i.total_qubits(),
                               std::string(to_string(m)).c_str()));
        }
        if (n == 15) {
            const ClashDistribution w = clash(ideal, i.order());
            r.expect(w.at_offset(0) == 1.0, fmt("N=15: W(0) = %.17g == 1", w.at_offset(0)));
            r.expect(ipr(w) == 1.0, fmt("N=15: xi = %.17g == 1", ipr(w)));
        }
    }
    return r;
}

// ---------------------------------------------------------------- C3 / C8
struct EpscCase {
    std::uint64_t n;
    std::uint64_t x;
    ImperfectionModel model;
    double reference;
    double tolerance;
};

const std::vector<EpscCase>& c3_cases() {
    static const std::vector<EpscCase> cases = {
        {14, 3, ImperfectionModel::Generic, 0.1955, 0.25},
        {21, 2, ImperfectionModel::Generic, 0.1380, 0.25},
        {21, 2, ImperfectionModel::Correlated, 0.132, 0.25},
        {21, 2, ImperfectionModel::CorrelatedAll, 0.031, 0.30},
        {33, 2, ImperfectionModel::Generic, 0.0917, 0.25},
    };
    return cases;
}

ExperimentConfig c3_config(const EpscCase& c, int threads) {
    ExperimentConfig cfg;
    cfg.instance = inst(c.n, c.x);
    cfg.model = c.model;
    cfg.scan = ScanSpec{};
    cfg.realizations = kRealizations;
    cfg.master_seed = kSeed;
    cfg.threads = threads;
    return cfg;
}

std::string case_name(const EpscCase& c) {
    return fmt("N%llu_x%llu_%s", (unsigned long long)c.n, (unsigned long long)c.x,
               std::string(to_string(c.model)).c_str());
}

Check c3() {
    Check r;
    for (const auto& c : c3_cases()) {
        const ExperimentRecord rec = run_experiment(c3_config(c, 0));
        if (!rec.eps_c) {
            r.expect(false, fmt("%s: no crossing found", case_name(c).c_str()));
            continue;
        }
        const double rel = std::abs(*rec.eps_c - c.reference) / c.reference;
        r.expect(rel <= c.tolerance,
                 fmt("%s: eps_c = %.4f vs %.4f (%+.1f%%, tolerance %.0f%%, %d realizations, %.0f s)",
                     case_name(c).c_str(), *rec.eps_c, c.reference,
                     100.0 * (*rec.eps_c - c.reference) / c.reference, 100.0 * c.tolerance,
                     rec.realizations, rec.wall_seconds));
    }
    return r;
}

Check c8(const fs::path& out_dir) {
    Check r;
    fs::create_directories(out_dir);
    for (const auto& c : c3_cases()) {
        std::vector<std::uint64_t> hashes;
        for (int threads : {1, 4}) {
            const ExperimentRecord rec = run_experiment(c3_config(c, threads));
            const fs::path csv = out_dir / (case_name(c) + fmt("_t%d.csv", threads));
            const fs::path json = out_dir / (case_name(c) + fmt("_t%d.json", threads));
            write_atomic(csv, record_to_csv(rec));
            write_atomic(json, record_to_json(rec));
            std::ifstream a(csv, std::ios::binary);
            std::ifstream b(json, std::ios::binary);
            std::stringstream sa;
            std::stringstream sb;
            sa << a.rdbuf();
            sb << b.rdbuf();
            hashes.push_back(fnv1a(sa.str()) ^ (fnv1a(sb.str()) * 31));
        }
        r.expect(hashes[0] == hashes[1],
                 fmt("%s: output files at 1 and 4 threads hash-equal (%016llx / %016llx)",
                     case_name(c).c_str(), (unsigned long long)hashes[0],
                     (unsigned long long)hashes[1]));
    }
    return r;
}

// ---------------------------------------------------------------- C4
Check c4() {
    Check r;
    const std::vector<double> eps = {0.01, 0.02, 0.04};
    const std::vector<std::pair<std::uint64_t, std::uint64_t>> ns = {
        {14, 3}, {21, 2}, {33, 2}, {35, 2}, {55, 2}};
    std::map<std::uint64_t, std::vector<double>> dn;
    std::vector<WidthPoint> pts;
    for (const auto& [n, x] : ns) {
        ExperimentConfig cfg;
        cfg.instance = inst(n, x);
        cfg.epsilons = eps;
        cfg.realizations = kRealizations;
        cfg.master_seed = kSeed;
        const ExperimentRecord rec = run_experiment(cfg);
        std::string row = fmt("N=%llu dn0=%.3f dn(eps)=", (unsigned long long)n, rec.delta_n0);
        for (const auto& p : rec.points) {
            dn[n].push_back(p.stats.delta_n_mean);
            pts.push_back({n, rec.n_q, p.stats.epsilon, p.stats.delta_n_mean});
            row += fmt(" %.3f", p.stats.delta_n_mean);
        }
        r.note(row);
    }
    const auto& d33 = dn[33];
    for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
        const double ratio = d33[i + 1] / d33[i];
        r.expect(std::abs(ratio - 2.0) <= 0.2 * 2.0,
                 fmt("N=33: dn(%.2f)/dn(%.2f) = %.3f, want 2 +- 20%%", eps[i + 1], eps[i], ratio));
    }
    std::vector<double> nvals;
    std::vector<double> dvals;
    for (const auto& [n, x] : ns) {
        nvals.push_back(static_cast<double>(n));
        dvals.push_back(dn[n][1]);
    }
    const double slope = log_log_slope(nvals, dvals);
    r.expect(std::abs(slope - 1.0) <= 0.3,
             fmt("log-log slope of dn vs N at eps=0.02 = %.3f, want 1.0 +- 0.3", slope));
    const WidthScalingFit f = width_scaling_fit(pts);
    r.expect(f.A >= 14.0 / 2.0 && f.A <= 14.0 * 2.0,
             fmt("A = %.2f (a = %.2f), want 14 within x2", f.A, f.a));
    return r;
}

// ---------------------------------------------------------------- C5
Check c5() {
    Check r;
    ExperimentConfig cfg;
    cfg.instance = inst(33, 2);
    cfg.scan = ScanSpec{};
    cfg.realizations = kRealizations;
    cfg.master_seed = kSeed;
    const ExperimentRecord rec = run_experiment(cfg);
    r.expect(rec.eps_c.has_value(), "N=33: xi exceeds 10 xi0 inside the scanned range");
    if (!rec.eps_c) {
        return r;
    }
    double lo = 1e300;
    double hi = 0.0;
    std::string curve;
    for (const auto& p : rec.points) {
        curve += fmt(" %.4g:%.3g", p.stats.epsilon, p.stats.xi_mean);
        if (p.stats.epsilon >= 0.005 && p.stats.epsilon <= *rec.eps_c / 2.0) {
            lo = std::min(lo, p.stats.xi_mean);
            hi = std::max(hi, p.stats.xi_mean);
        }
    }
    r.note(fmt("xi0 = %.4f, eps_c = %.4f", rec.xi0, *rec.eps_c));
    r.note("eps:xi" + curve);
    const double variation = hi / lo - 1.0;
    r.expect(variation < 0.30,
             fmt("xi varies by %.1f%% over eps in [0.005, eps_c/2 = %.4f], want < 30%%",
                 100.0 * variation, *rec.eps_c / 2.0));
    return r;
}

// ---------------------------------------------------------------- C6
Check c6() {
    Check r;
    std::vector<PowerLawPoint> syn;
    for (double l2 : {4.2, 5.0, 6.1, 7.3, 8.0, 9.6}) {
        syn.push_back({l2, 2.0 / std::pow(l2, 1.5)});
    }
    const FitResult s = fit_power_law(syn);
    r.expect(std::abs(s.B - 2.0) < 1e-9 && std::abs(s.beta - 1.5) < 1e-9,
             fmt("synthetic: B = %.12f, beta = %.12f (want 2, 1.5 within 1e-9)", s.B, s.beta));

    const auto rows = read_epsc_table(fs::path(SHORSIM_DATA_DIR) / "erratum_table2.csv");
    for (const ModelFit& m : fit_table(rows)) {
        const FitResult& f = m.fit;
        if (m.model == ImperfectionModel::Generic) {
            r.expect(std::abs(f.ln_B - 0.068) <= 0.105 && std::abs(f.beta - 1.420) <= 0.054,
                     fmt("reference generic column (%zu rows): ln B = %.3f +- %.3f (want 0.068 "
                         "+- 0.105), beta = %.3f +- %.3f (want 1.420 +- 0.054)",
                         f.points, f.ln_B, f.ln_B_stderr, f.beta, f.beta_stderr));
        } else {
            r.note(fmt("%s column: ln B = %.3f +- %.3f, beta = %.3f +- %.3f",
                       std::string(to_string(m.model)).c_str(), f.ln_B, f.ln_B_stderr, f.beta,
                       f.beta_stderr));
        }
    }
    return r;
}

// ---------------------------------------------------------------- C7
Check c7() {
    Check r;
    r.note("L=30 (N=943) and the complete eps_c-vs-log2 N simulation are out of desk scale:");
    r.note("a 30-qubit state is 16 GiB; criteria 3-6 stand in for them.");
    const ShorInstance i = ShorInstance::make(15, 2); // L = 12
    CircuitOptions dense;
    dense.full_propagator.method = FullPropagatorMethod::Dense;
    for (double eps : {0.02, 0.06}) {
        const StateVector ref =
            run_perturbed_state(i, ImperfectionModel::CorrelatedAll, eps, kSeed, 0, dense);
        for (auto method : {FullPropagatorMethod::Chebyshev, FullPropagatorMethod::Split}) {
            CircuitOptions opt;
            opt.full_propagator.method = method;
            const StateVector s =
                run_perturbed_state(i, ImperfectionModel::CorrelatedAll, eps, kSeed, 0, opt);
            double dev = 0.0;
            for (std::size_t k = 0; k < s.size(); ++k) {
                dev = std::max(dev, std::abs(s.amplitudes()[k] - ref.amplitudes()[k]));
            }
            r.expect(dev < 1e-8, fmt("L=12 all-qubit model, eps=%.2f: %s vs dense exponential "
                                     "max amplitude deviation %.2e < 1e-8",
                                     eps, std::string(to_string(method)).c_str(), dev));
        }
    }
    return r;
}

} // namespace

int main(int argc, char** argv) {
    fs::path out_dir = fs::temp_directory_path() / "shorsim_acceptance";
    std::set<std::string> selected;
    for (int a = 1; a < argc; ++a) {
        const std::string arg = argv[a];
        if (arg == "--out-dir" && a + 1 < argc) {
            out_dir = argv[++a];
        } else {
            selected.insert(arg);
        }
    }
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"c1", [] { return c1(); }},
        {"c2", [] { return c2(); }},
        {"c3", [] { return c3(); }},
        {"c4", [] { return c4(); }},
        {"c5", [] { return c5(); }},
        {"c6", [] { return c6(); }},
        {"c7", [] { return c7(); }},
        {"c8", [&] { return c8(out_dir); }},
    };
    const std::map<std::string, std::string> titles = {
        {"c1", "oracle equivalence, reference instances N <= 91"},
        {"c2", "zero-coupling reduction"},
        {"c3", "critical coupling reproduction"},
        {"c4", "width scaling"},
        {"c5", "transition shape"},
        {"c6", "power-law fit machinery"},
        {"c7", "all-qubit propagator vs dense oracle"},
        {"c8", "determinism across thread counts"},
    };
    bool all = true;
    for (const auto& [name, run] : criteria) {
        if (!selected.empty() && !selected.count(name)) {
            continue;
        }
        Check c;
        try {
            c = run();
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        for (const auto& l : c.lines) {
            std::printf("%s\n", l.c_str());
        }
        std::string upper = name;
        std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
        std::printf("%s %s %s\n", c.pass ? "PASS" : "FAIL", upper.c_str(),
                    titles.at(name).c_str());
        std::fflush(stdout);
        all = all && c.pass;
    }
    return all ? 0 : 1;
}
