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
#include "shorsim/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <sstream>

#include <omp.h>

#include "shorsim/error.hpp"

#ifndef SHORSIM_VERSION
#define SHORSIM_VERSION "unknown"
#endif

namespace shorsim {

std::string software_version() { return SHORSIM_VERSION; }

std::vector<double> ScanSpec::grid() const {
    if (!(lo > 0.0) || !(hi > lo) || points < 2) {
        throw ValidationError("scan needs 0 < lo < hi and at least two points");
    }
    std::vector<double> g(static_cast<std::size_t>(points));
    const double step = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
        g[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
    }
    g.back() = hi;
    return g;
}

ScanSpec parse_scan(const std::string& text) {
    ScanSpec spec;
    std::istringstream in(text);
    std::string a;
    std::string b;
    std::string c;
    if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c)) {
        throw ValidationError("scan must look like lo:hi:points, got '" + text + "'");
    }
    try {
        spec.lo = std::stod(a);
        spec.hi = std::stod(b);
        spec.points = std::stoi(c);
    } catch (const std::exception&) {
        throw ValidationError("scan must look like lo:hi:points, got '" + text + "'");
    }
    (void)spec.grid();
    return spec;
}

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") {
        return OutputFormat::Csv;
    }
    if (name == "json") {
        return OutputFormat::Json;
    }
    throw ValidationError("unknown format '" + name + "' (expected csv or json)");
}

ShorInstance make_instance(const InstanceSpec& spec) {
    if (spec.n < 3 || spec.n > kMaxModulus) {
        throw ValidationError("N must lie in [3, 2^20]");
    }
    const std::uint64_t x = spec.x == 0 ? smallest_coprime_base(spec.n) : spec.x;
    return ShorInstance::make(spec.n, x, spec.n_l, spec.n_q);
}

int default_realizations(int total_qubits) {
    if (total_qubits <= 21) {
        return 40;
    }
    if (total_qubits <= 24) {
        return 20;
    }
    if (total_qubits <= 27) {
        return 16;
    }
    return 10;
}

ShorInstance validate(const ExperimentConfig& config) {
    if (config.max_qubits < 1 || config.max_qubits > kHardMaxQubits) {
        throw ValidationError("max qubits must lie in [1, " + std::to_string(kHardMaxQubits) +
                              "]");
    }
    if (config.realizations < 0) {
        throw ValidationError("realizations must be >= 0");
    }
    if (config.threads < 0) {
        throw ValidationError("threads must be >= 0");
    }
    for (double e : config.epsilons) {
        if (!std::isfinite(e) || e < 0.0) {
            throw ValidationError("coupling strengths must be finite and >= 0");
        }
    }
    if (config.scan) {
        (void)config.scan->grid();
        if (config.scan->refine_levels < 0) {
            throw ValidationError("refine levels must be >= 0");
        }
    }
    if (config.epsilons.empty() && !config.scan) {
        throw ValidationError("give coupling strengths or a scan");
    }
    if (config.controlled_noise && config.model == ImperfectionModel::CorrelatedAll) {
        throw ValidationError("controlled noise applies only to computational-register models");
    }
    const ShorInstance inst = make_instance(config.instance);
    if (inst.total_qubits() > config.max_qubits) {
        throw CapacityError("register of " + std::to_string(inst.total_qubits()) +
                            " qubits exceeds the cap of " + std::to_string(config.max_qubits));
    }
    if (config.model != ImperfectionModel::CorrelatedAll &&
        inst.computational_qubits() > kDenseThreshold) {
        throw CapacityError("computational register too large for a dense propagator");
    }
    return inst;
}

namespace {

class ThreadScope {
  public:
    explicit ThreadScope(int threads) : saved_(omp_get_max_threads()) {
        if (threads > 0) {
            omp_set_num_threads(threads);
        }
    }
    ~ThreadScope() { omp_set_num_threads(saved_); }
    ThreadScope(const ThreadScope&) = delete;
    ThreadScope& operator=(const ThreadScope&) = delete;

  private:
    int saved_;
};

// Upper bound on concurrently held state vectors when tasks run in parallel.
constexpr std::size_t kParallelStateBudget = std::size_t{4} << 30;

struct Runner {
    const ExperimentConfig& config;
    const ShorInstance& instance;
    CircuitOptions options;
    int realizations;

    RealizationResult simulate(double eps, std::uint64_t k) const {
        const MeasurementDistribution p =
            run_perturbed(instance, config.model, eps, config.master_seed, k, options);
        const ClashDistribution w = clash(p, instance.order());
        RealizationResult r;
        r.index = k;
        r.xi = ipr(w);
        r.delta_n = width(w);
        if (config.full) {
            r.w = w.values;
            r.p = p.probs;
        }
        return r;
    }

    std::vector<EpsilonResult> evaluate(const std::vector<double>& eps) const {
        const std::size_t nr = static_cast<std::size_t>(realizations);
        const std::size_t tasks = eps.size() * nr;
        std::vector<RealizationResult> results(tasks);
        std::vector<std::exception_ptr> errors(tasks);

        const int threads = omp_get_max_threads();
        const std::size_t state_bytes = (std::size_t{16} << instance.total_qubits()) * 3;
        const bool outer = threads > 1 && tasks > 1 &&
                           state_bytes * static_cast<std::size_t>(threads) <=
                               kParallelStateBudget;

        const auto body = [&](std::size_t t) {
            try {
                results[t] = simulate(eps[t / nr], t % nr);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        };
        if (outer) {
#pragma omp parallel for schedule(dynamic, 1)
            for (std::size_t t = 0; t < tasks; ++t) {
                body(t);
            }
        } else {
            for (std::size_t t = 0; t < tasks; ++t) {
                body(t);
            }
        }
        for (const auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }

        std::vector<EpsilonResult> out(eps.size());
        std::vector<double> xi(nr);
        std::vector<double> dn(nr);
        for (std::size_t i = 0; i < eps.size(); ++i) {
            for (std::size_t k = 0; k < nr; ++k) {
                xi[k] = results[i * nr + k].xi;
                dn[k] = results[i * nr + k].delta_n;
            }
            out[i].stats = summarize(eps[i], xi, dn);
            if (config.full) {
                out[i].realizations.assign(
                    std::make_move_iterator(results.begin() + static_cast<long>(i * nr)),
                    std::make_move_iterator(results.begin() + static_cast<long>((i + 1) * nr)));
            }
        }
        return out;
    }
};

std::vector<CurvePoint> curve_of(const std::vector<EpsilonResult>& points) {
    std::vector<CurvePoint> curve;
    for (const auto& p : points) {
        if (p.stats.epsilon > 0.0) {
            curve.push_back({p.stats.epsilon, p.stats.xi_mean});
        }
    }
    return curve;
}

void merge_sorted(std::vector<EpsilonResult>& into, std::vector<EpsilonResult> extra) {
    for (auto& e : extra) {
        into.push_back(std::move(e));
    }
    std::stable_sort(into.begin(), into.end(), [](const auto& a, const auto& b) {
        return a.stats.epsilon < b.stats.epsilon;
    });
}

} // namespace

ExperimentRecord run_experiment(const ExperimentConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    const ShorInstance inst = validate(config);
    ThreadScope scope(config.threads);

    ExperimentRecord rec;
    rec.config = config;
    rec.version = software_version();
    rec.x = inst.base();
    rec.order = inst.order();
    rec.n_q = inst.computational_qubits();
    rec.n_l = inst.control_qubits();
    rec.realizations =
        config.realizations > 0 ? config.realizations : default_realizations(inst.total_qubits());

    Runner runner{config, inst, {}, rec.realizations};
    runner.options.controlled_noise = config.controlled_noise;
    runner.options.max_qubits = config.max_qubits;
    runner.options.full_propagator.method = config.full_method;

    const MeasurementDistribution ideal = run_ideal(inst, runner.options);
    const ClashDistribution w0 = clash(ideal, inst.order());
    rec.xi0 = ipr(w0);
    rec.delta_n0 = width(w0);
    if (config.full) {
        rec.ideal_probs = ideal.probs;
    }

    std::vector<double> eps = config.epsilons;
    if (config.scan) {
        const std::vector<double> g = config.scan->grid();
        eps.insert(eps.end(), g.begin(), g.end());
    }
    std::sort(eps.begin(), eps.end());
    eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
    rec.points = runner.evaluate(eps);

    if (config.scan) {
        const double threshold = kCriticalRatio * rec.xi0;
        for (int level = 0; level < config.scan->refine_levels; ++level) {
            const std::vector<CurvePoint> curve = curve_of(rec.points);
            std::optional<double> mid;
            for (std::size_t i = 1; i < curve.size(); ++i) {
                if (curve[i - 1].xi < threshold && curve[i].xi >= threshold) {
                    mid = std::sqrt(curve[i - 1].epsilon * curve[i].epsilon);
                    break;
                }
            }
            if (!mid) {
                break;
            }
            merge_sorted(rec.points, runner.evaluate({*mid}));
        }
        const std::vector<CurvePoint> curve = curve_of(rec.points);
        rec.eps_c = critical_epsilon(curve, rec.xi0);
    }

    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::vector<EpscRow> run_epsc(const std::vector<InstanceSpec>& instances,
                              const std::vector<ImperfectionModel>& models,
                              const ExperimentConfig& base) {
    std::vector<EpscRow> rows;
    for (const InstanceSpec& spec : instances) {
        for (ImperfectionModel model : models) {
            ExperimentConfig cfg = base;
            cfg.instance = spec;
            cfg.model = model;
            cfg.epsilons.clear();
            cfg.full = false;
            if (!cfg.scan) {
                cfg.scan = ScanSpec{};
            }
            const ExperimentRecord rec = run_experiment(cfg);
            EpscRow row;
            row.n = spec.n;
            row.x = rec.x;
            row.n_q = rec.n_q;
            row.n_l = rec.n_l;
            row.model = model;
            row.eps_c = rec.eps_c;
            row.status = rec.eps_c ? "ok" : "no-crossing";
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<ModelFit> fit_table(const std::vector<EpscRow>& rows) {
    std::map<ImperfectionModel, std::vector<PowerLawPoint>> by_model;
    std::map<ImperfectionModel, std::size_t> seen;
    for (const EpscRow& row : rows) {
        ++seen[row.model];
        if (row.status == "ok" && row.eps_c && *row.eps_c > 0.0) {
            by_model[row.model].push_back({std::log2(static_cast<double>(row.n)), *row.eps_c});
        }
    }
    if (seen.empty()) {
        throw ValidationError("fit: the table has no rows");
    }
    std::vector<ModelFit> fits;
    for (const auto& [model, count] : seen) {
        const auto& pts = by_model[model];
        if (pts.size() < 3) {
            throw ValidationError("fit: model " + std::string(to_string(model)) + " has " +
                                  std::to_string(pts.size()) + " usable rows, need 3");
        }
        fits.push_back({model, fit_power_law(pts)});
    }
    return fits;
}

bool OracleReport::all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const OracleRow& r) { return r.pass; });
}

OracleReport oracle_check(const std::vector<InstanceSpec>& instances,
                          const OracleOptions& options) {
    OracleReport report;
    report.tolerance = options.tolerance;
    for (const InstanceSpec& spec : instances) {
        const ShorInstance inst = make_instance(spec);
        CircuitOptions copt;
        copt.max_qubits = options.max_qubits;
        MeasurementDistribution sim = run_ideal(inst, copt);
        if (options.corrupt_outcome) {
            sim.probs.at(*options.corrupt_outcome) *= options.corrupt_factor;
        }
        const std::vector<double> ref = closed_form_distribution(inst);
        double dev = 0.0;
        for (std::size_t c = 0; c < ref.size(); ++c) {
            dev = std::max(dev, std::abs(sim.probs[c] - ref[c]));
        }
        report.rows.push_back({spec.n, inst.base(), inst.total_qubits(), dev,
                               dev < options.tolerance});
    }
    return report;
}

std::vector<InstanceSpec> reference_instances_upto_91() {
    const std::pair<std::uint64_t, std::uint64_t> list[] = {
        {14, 3}, {21, 2}, {33, 2}, {35, 4}, {35, 2},  {55, 6},
        {55, 2}, {77, 10}, {77, 6}, {77, 2}, {91, 3}, {91, 2}};
    std::vector<InstanceSpec> out;
    for (const auto& [n, x] : list) {
        out.push_back({n, x, std::nullopt, std::nullopt});
    }
    return out;
}

} // namespace shorsim
