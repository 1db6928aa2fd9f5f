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
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shorsim/error.hpp"
#include "shorsim/harness.hpp"

using namespace shorsim;

namespace {

struct Common {
    std::uint64_t x = 0;
    std::string model = "generic";
    std::vector<double> eps;
    std::string scan;
    int realizations = 0;
    std::uint64_t seed = 1;
    bool controlled_noise = false;
    int max_qubits = kDefaultMaxQubits;
    std::string out;
    std::string format = "csv";
    bool full = false;
    int n_l = 0;
    int n_q = 0;
    std::string method = "chebyshev";
};

void add_common(CLI::App* cmd, Common& c, bool with_model) {
    cmd->add_option("--x", c.x, "base x (default: smallest coprime base > 1)");
    if (with_model) {
        cmd->add_option("--model", c.model, "generic | correlated | correlated-all");
    }
    cmd->add_option("--eps", c.eps, "coupling strengths")->delimiter(',');
    cmd->add_option("--eps-scan", c.scan, "log-spaced scan lo:hi:points");
    cmd->add_option("--realizations", c.realizations, "realizations per coupling strength");
    cmd->add_option("--seed", c.seed, "master seed");
    cmd->add_flag("--controlled-noise", c.controlled_noise,
                  "apply imperfections only where the control bit is set");
    cmd->add_option("--max-qubits", c.max_qubits, "qubit cap (at most 30)");
    cmd->add_option("--out", c.out, "output file (default: stdout)");
    cmd->add_option("--format", c.format, "csv | json");
    cmd->add_option("--nl", c.n_l, "control register size");
    cmd->add_option("--nq", c.n_q, "computational register size");
    cmd->add_option("--full-method", c.method,
                    "all-qubit propagator: chebyshev | split | dense");
}

FullPropagatorMethod parse_method(const std::string& s) {
    if (s == "chebyshev") {
        return FullPropagatorMethod::Chebyshev;
    }
    if (s == "split") {
        return FullPropagatorMethod::Split;
    }
    if (s == "dense") {
        return FullPropagatorMethod::Dense;
    }
    throw ValidationError("unknown propagator method '" + s + "'");
}

InstanceSpec parse_instance(const std::string& text, std::uint64_t default_x) {
    InstanceSpec spec;
    const auto colon = text.find(':');
    try {
        std::size_t pos = 0;
        const std::string n = text.substr(0, colon);
        spec.n = std::stoull(n, &pos);
        if (pos != n.size()) {
            throw std::invalid_argument(text);
        }
        spec.x = colon == std::string::npos ? default_x : std::stoull(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw ValidationError("instance must be N or N:x, got '" + text + "'");
    }
    return spec;
}

ExperimentConfig make_config(const Common& c, int threads) {
    ExperimentConfig cfg;
    cfg.instance.x = c.x;
    if (c.n_l > 0) {
        cfg.instance.n_l = c.n_l;
    }
    if (c.n_q > 0) {
        cfg.instance.n_q = c.n_q;
    }
    cfg.model = parse_model(c.model);
    cfg.epsilons = c.eps;
    if (!c.scan.empty()) {
        cfg.scan = parse_scan(c.scan);
    }
    cfg.realizations = c.realizations;
    cfg.master_seed = c.seed;
    cfg.controlled_noise = c.controlled_noise;
    cfg.max_qubits = c.max_qubits;
    cfg.full = c.full;
    cfg.full_method = parse_method(c.method);
    cfg.threads = threads;
    return cfg;
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
    } else {
        write_atomic(out, text);
    }
}

int env_threads() {
    const char* v = std::getenv("SHORSIM_THREADS");
    if (v == nullptr || *v == '\0') {
        return 0;
    }
    try {
        return std::max(0, std::stoi(v));
    } catch (const std::exception&) {
        throw ValidationError("SHORSIM_THREADS must be an integer");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shor's algorithm with static imperfections"};
    app.set_version_flag("--version", software_version());
    app.require_subcommand(1);
    int threads = -1;
    app.add_option("--threads", threads, "worker threads (default: $SHORSIM_THREADS or all)");

    Common c;
    std::string n_single;
    auto* run = app.add_subcommand("run", "simulate one instance over coupling strengths");
    run->add_option("--n", n_single, "N or N:x")->required();
    add_common(run, c, true);
    run->add_flag("--full", c.full, "include per-realization W(c) and P(c) (JSON)");

    std::vector<std::string> n_list;
    std::vector<std::string> models;
    auto* epsc = app.add_subcommand("epsc", "critical coupling table over instances and models");
    epsc->add_option("--n", n_list, "instances N or N:x")->delimiter(',')->required();
    epsc->add_option("--model", models, "models (comma separated)")->delimiter(',');
    add_common(epsc, c, false);

    std::string table;
    auto* fit = app.add_subcommand("fit", "power-law fit of an eps_c table");
    fit->add_option("table", table, "eps_c table (CSV or JSON)")->required();
    fit->add_option("--out", c.out, "output file (default: stdout)");

    std::vector<std::string> oracle_n;
    bool reference = false;
    std::int64_t corrupt = -1;
    auto* oracle = app.add_subcommand("oracle-check", "ideal simulation against the closed form");
    oracle->add_option("--n", oracle_n, "instances N or N:x")->delimiter(',');
    oracle->add_flag("--reference", reference, "add the reference instances with N <= 91");
    oracle->add_option("--max-qubits", c.max_qubits, "qubit cap (at most 30)");
    oracle->add_option("--corrupt", corrupt, "negative control: distort this outcome");
    oracle->add_option("--out", c.out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (threads < 0) {
            threads = env_threads();
        }
        if (*run) {
            ExperimentConfig cfg = make_config(c, threads);
            cfg.instance = parse_instance(n_single, c.x);
            cfg.instance.n_l = c.n_l > 0 ? std::optional<int>(c.n_l) : std::nullopt;
            cfg.instance.n_q = c.n_q > 0 ? std::optional<int>(c.n_q) : std::nullopt;
            const OutputFormat fmt = parse_format(c.format);
            const ExperimentRecord rec = run_experiment(cfg);
            emit(c.out, fmt == OutputFormat::Csv ? record_to_csv(rec) : record_to_json(rec));
            std::cerr << "run: " << rec.points.size() << " coupling strengths, "
                      << rec.realizations << " realizations, " << rec.wall_seconds << " s\n";
        } else if (*epsc) {
            ExperimentConfig cfg = make_config(c, threads);
            if (!cfg.scan) {
                cfg.scan = ScanSpec{};
            }
            std::vector<InstanceSpec> instances;
            for (const auto& s : n_list) {
                InstanceSpec spec = parse_instance(s, c.x);
                spec.n_l = cfg.instance.n_l;
                spec.n_q = cfg.instance.n_q;
                instances.push_back(spec);
            }
            std::vector<ImperfectionModel> ms;
            for (const auto& m : models.empty() ? std::vector<std::string>{"generic"} : models) {
                ms.push_back(parse_model(m));
            }
            const OutputFormat fmt = parse_format(c.format);
            const auto rows = run_epsc(instances, ms, cfg);
            emit(c.out, fmt == OutputFormat::Csv ? epsc_to_csv(rows, cfg) : epsc_to_json(rows, cfg));
        } else if (*fit) {
            emit(c.out, fits_to_json(fit_table(read_epsc_table(table))));
        } else if (*oracle) {
            std::vector<InstanceSpec> instances;
            if (reference) {
                instances = reference_instances_upto_91();
            }
            for (const auto& s : oracle_n) {
                instances.push_back(parse_instance(s, 0));
            }
            OracleOptions opt;
            opt.max_qubits = c.max_qubits;
            if (corrupt >= 0) {
                opt.corrupt_outcome = static_cast<std::uint64_t>(corrupt);
            }
            const OracleReport report = oracle_check(instances, opt);
            emit(c.out, oracle_to_json(report));
            return report.all_pass() ? 0 : 1;
        }
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
