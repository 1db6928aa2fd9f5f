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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "shorsim/analysis.hpp"
#include "shorsim/circuit.hpp"
#include "shorsim/imperfections.hpp"
#include "shorsim/numtheory.hpp"

namespace shorsim {

inline constexpr const char* kRecordSchema = "shorsim.record/1";
inline constexpr const char* kEpscSchema = "shorsim.epsc/1";
inline constexpr const char* kFitSchema = "shorsim.fit/1";
inline constexpr const char* kOracleSchema = "shorsim.oracle/1";

std::string software_version();

/// Log-spaced grid of `points` values over [lo, hi].
struct ScanSpec {
    double lo = 0.005;
    double hi = 0.5;
    int points = 16;
    /// Bisection levels in ln eps around the detected crossing.
    int refine_levels = 2;

    std::vector<double> grid() const;
};

/// Parses "lo:hi:points". Throws ValidationError.
ScanSpec parse_scan(const std::string& text);

enum class OutputFormat { Csv, Json };
OutputFormat parse_format(const std::string& name);

struct InstanceSpec {
    std::uint64_t n = 0;
    /// 0 picks the smallest base > 1 coprime to N.
    std::uint64_t x = 0;
    std::optional<int> n_l;
    std::optional<int> n_q;
};

ShorInstance make_instance(const InstanceSpec& spec);

/// Realizations per eps when none are requested, by total register size.
int default_realizations(int total_qubits);

struct ExperimentConfig {
    InstanceSpec instance;
    ImperfectionModel model = ImperfectionModel::Generic;
    std::vector<double> epsilons;
    std::optional<ScanSpec> scan;
    /// 0 selects default_realizations.
    int realizations = 0;
    std::uint64_t master_seed = 1;
    bool controlled_noise = false;
    int max_qubits = kDefaultMaxQubits;
    FullPropagatorMethod full_method = FullPropagatorMethod::Chebyshev;
    bool full = false;
    /// Worker threads; 0 keeps the OpenMP default.
    int threads = 0;
};

/// Checks every field and builds the instance; throws ValidationError or
/// CapacityError before any simulation.
ShorInstance validate(const ExperimentConfig& config);

struct RealizationResult {
    std::uint64_t index = 0;
    double xi = 0.0;
    double delta_n = 0.0;
    std::vector<double> w;
    std::vector<double> p;
};

struct EpsilonResult {
    ScalarStats stats;
    /// Filled only with ExperimentConfig::full.
    std::vector<RealizationResult> realizations;
};

struct ExperimentRecord {
    ExperimentConfig config;
    std::uint64_t x = 0;
    std::uint64_t order = 0;
    int n_q = 0;
    int n_l = 0;
    int realizations = 0;
    double xi0 = 0.0;
    double delta_n0 = 0.0;
    std::vector<double> ideal_probs;
    /// Sorted by epsilon.
    std::vector<EpsilonResult> points;
    std::optional<double> eps_c;
    std::string version;
    /// Not serialized, so records of identical runs are byte-identical.
    double wall_seconds = 0.0;
};

/// Simulates every (eps, realization) pair in parallel and aggregates in
/// index order; identical for any thread count. Realization k uses the same
/// disorder stream at every eps. With a scan, the crossing of 10 xi0 is
/// refined by bisection and eps_c is filled in.
ExperimentRecord run_experiment(const ExperimentConfig& config);

struct EpscRow {
    std::uint64_t n = 0;
    std::uint64_t x = 0;
    int n_q = 0;
    int n_l = 0;
    ImperfectionModel model = ImperfectionModel::Generic;
    std::optional<double> eps_c;
    std::string status;
};

/// One scan per (instance, model); rows without a crossing are flagged
/// "no-crossing". `base` supplies seed, realizations, scan and flags.
std::vector<EpscRow> run_epsc(const std::vector<InstanceSpec>& instances,
                              const std::vector<ImperfectionModel>& models,
                              const ExperimentConfig& base);

struct ModelFit {
    ImperfectionModel model = ImperfectionModel::Generic;
    FitResult fit;
};

/// Power-law fit per model over rows with status "ok". Throws ValidationError
/// when a model has fewer than three usable rows or the table is empty.
std::vector<ModelFit> fit_table(const std::vector<EpscRow>& rows);

struct OracleRow {
    std::uint64_t n = 0;
    std::uint64_t x = 0;
    int total_qubits = 0;
    double max_deviation = 0.0;
    bool pass = false;
};

struct OracleReport {
    double tolerance = 1e-10;
    std::vector<OracleRow> rows;
    bool all_pass() const;
};

struct OracleOptions {
    double tolerance = 1e-10;
    int max_qubits = kDefaultMaxQubits;
    /// Negative control: scale this control outcome's simulated probability.
    std::optional<std::uint64_t> corrupt_outcome;
    double corrupt_factor = 1.5;
};

/// run_ideal against closed_form_total for each instance.
OracleReport oracle_check(const std::vector<InstanceSpec>& instances,
                          const OracleOptions& options = {});

/// Instances (N, x) with N <= 91 from the generic-model reference list.
std::vector<InstanceSpec> reference_instances_upto_91();

// Serialization. Every writer goes through a temp file and a rename.
std::string record_to_csv(const ExperimentRecord& record);
std::string record_to_json(const ExperimentRecord& record);
std::string epsc_to_csv(const std::vector<EpscRow>& rows, const ExperimentConfig& base);
std::string epsc_to_json(const std::vector<EpscRow>& rows, const ExperimentConfig& base);
std::string fits_to_json(const std::vector<ModelFit>& fits);
std::string oracle_to_json(const OracleReport& report);
std::string config_to_json(const ExperimentConfig& config);

/// Audit/replay form of a realization: epsilon, model, scope, deltas,
/// couplings and stream provenance.
std::string realization_to_json(const ImperfectionRealization& realization);
ImperfectionRealization realization_from_json(const std::string& text);

void write_atomic(const std::filesystem::path& path, const std::string& contents);

/// Reads an eps_c table (CSV with N, model and eps_c columns, optional x and
/// status; '#' lines are comments) or the JSON written by epsc_to_json.
std::vector<EpscRow> read_epsc_table(const std::filesystem::path& path);
std::vector<EpscRow> parse_epsc_csv(const std::string& text);

} // namespace shorsim
