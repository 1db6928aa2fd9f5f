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
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "json.hpp"
#include "shorsim/error.hpp"
#include "shorsim/harness.hpp"

namespace shorsim {

using nlohmann::json;

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json scan_json(const std::optional<ScanSpec>& scan) {
    if (!scan) {
        return nullptr;
    }
    return {{"lo", scan->lo},
            {"hi", scan->hi},
            {"points", scan->points},
            {"refine_levels", scan->refine_levels}};
}

json config_json(const ExperimentConfig& c) {
    // Thread count is left out on purpose: it must not change the output.
    json j;
    j["N"] = c.instance.n;
    j["x"] = c.instance.x;
    j["n_l"] = c.instance.n_l ? json(*c.instance.n_l) : json(nullptr);
    j["n_q"] = c.instance.n_q ? json(*c.instance.n_q) : json(nullptr);
    j["model"] = std::string(to_string(c.model));
    j["epsilons"] = c.epsilons;
    j["scan"] = scan_json(c.scan);
    j["realizations"] = c.realizations;
    j["seed"] = c.master_seed;
    j["controlled_noise"] = c.controlled_noise;
    j["max_qubits"] = c.max_qubits;
    j["full_register_method"] = std::string(to_string(c.full_method));
    j["full"] = c.full;
    return j;
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        out.push_back(trim(cell));
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

std::uint64_t to_u64(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception&) {
        throw ValidationError(std::string("bad ") + what + " value '" + s + "'");
    }
}

std::optional<double> to_eps(const std::string& s) {
    if (s.empty() || s == "nan" || s == "NaN" || s == "none") {
        return std::nullopt;
    }
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception&) {
        throw ValidationError("bad eps_c value '" + s + "'");
    }
}

} // namespace

std::string config_to_json(const ExperimentConfig& config) { return config_json(config).dump(); }

std::string realization_to_json(const ImperfectionRealization& r) {
    json j;
    j["epsilon"] = r.epsilon;
    j["model"] = std::string(to_string(r.model));
    j["scope"] = std::string(to_string(r.scope));
    j["deltas"] = r.deltas;
    j["couplings"] = r.couplings;
    j["provenance"] = {{"master_seed", r.provenance.master_seed},
                       {"realization_index", r.provenance.realization_index},
                       {"tag", r.provenance.tag},
                       {"stream_seed", r.provenance.stream_seed}};
    return j.dump();
}

ImperfectionRealization realization_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        ImperfectionRealization r;
        r.epsilon = j.at("epsilon").get<double>();
        r.model = parse_model(j.at("model").get<std::string>());
        const auto scope = j.at("scope").get<std::string>();
        if (scope == to_string(CouplingScope::Computational)) {
            r.scope = CouplingScope::Computational;
        } else if (scope == to_string(CouplingScope::FullRegister)) {
            r.scope = CouplingScope::FullRegister;
        } else {
            throw ValidationError("unknown coupling scope '" + scope + "'");
        }
        r.deltas = j.at("deltas").get<std::vector<double>>();
        r.couplings = j.at("couplings").get<std::vector<double>>();
        const json& p = j.at("provenance");
        r.provenance.master_seed = p.at("master_seed").get<std::uint64_t>();
        r.provenance.realization_index = p.at("realization_index").get<std::uint64_t>();
        r.provenance.tag = p.at("tag").get<std::uint64_t>();
        r.provenance.stream_seed = p.at("stream_seed").get<std::uint64_t>();
        if (!r.deltas.empty() && r.couplings.size() + 1 != r.deltas.size()) {
            throw ValidationError("realization needs one coupling fewer than deltas");
        }
        return r;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed realization JSON: ") + e.what());
    }
}

std::string record_to_csv(const ExperimentRecord& r) {
    std::ostringstream o;
    o << "# schema: " << kRecordSchema << "\n";
    o << "# version: " << r.version << "\n";
    o << "# config: " << config_to_json(r.config) << "\n";
    o << "# instance: x=" << r.x << " r=" << r.order << " n_q=" << r.n_q << " n_l=" << r.n_l
      << " realizations=" << r.realizations << " xi0=" << num(r.xi0)
      << " dn0=" << num(r.delta_n0) << "\n";
    o << "# eps_c: " << (r.eps_c ? num(*r.eps_c) : std::string("none")) << "\n";
    o << "N,x,n_q,n_l,model,epsilon,xi_mean,xi_stderr,dn_mean,realizations\n";
    for (const auto& p : r.points) {
        o << r.config.instance.n << ',' << r.x << ',' << r.n_q << ',' << r.n_l << ','
          << to_string(r.config.model) << ',' << num(p.stats.epsilon) << ','
          << num(p.stats.xi_mean) << ',' << num(p.stats.xi_stderr) << ','
          << num(p.stats.delta_n_mean) << ',' << p.stats.realizations << "\n";
    }
    return o.str();
}

std::string record_to_json(const ExperimentRecord& r) {
    json j;
    j["schema"] = kRecordSchema;
    j["version"] = r.version;
    j["config"] = config_json(r.config);
    j["instance"] = {{"N", r.config.instance.n}, {"x", r.x},     {"r", r.order},
                     {"n_q", r.n_q},             {"n_l", r.n_l}, {"realizations", r.realizations}};
    j["xi0"] = r.xi0;
    j["delta_n0"] = r.delta_n0;
    j["eps_c"] = opt_json(r.eps_c);
    json pts = json::array();
    for (const auto& p : r.points) {
        json q = {{"epsilon", p.stats.epsilon},
                  {"xi_mean", p.stats.xi_mean},
                  {"xi_stderr", p.stats.xi_stderr},
                  {"dn_mean", p.stats.delta_n_mean},
                  {"realizations", p.stats.realizations}};
        if (r.config.full) {
            json per = json::array();
            for (const auto& k : p.realizations) {
                per.push_back({{"index", k.index},
                               {"xi", k.xi},
                               {"delta_n", k.delta_n},
                               {"W", k.w},
                               {"P", k.p}});
            }
            q["per_realization"] = std::move(per);
        }
        pts.push_back(std::move(q));
    }
    j["points"] = std::move(pts);
    if (r.config.full) {
        j["ideal_P"] = r.ideal_probs;
    }
    return j.dump(1) + "\n";
}

std::string epsc_to_csv(const std::vector<EpscRow>& rows, const ExperimentConfig& base) {
    std::ostringstream o;
    o << "# schema: " << kEpscSchema << "\n";
    o << "# version: " << software_version() << "\n";
    o << "# config: " << config_to_json(base) << "\n";
    o << "N,x,n_q,n_l,model,eps_c,status\n";
    for (const auto& r : rows) {
        o << r.n << ',' << r.x << ',' << r.n_q << ',' << r.n_l << ',' << to_string(r.model) << ','
          << (r.eps_c ? num(*r.eps_c) : std::string()) << ',' << r.status << "\n";
    }
    return o.str();
}

std::string epsc_to_json(const std::vector<EpscRow>& rows, const ExperimentConfig& base) {
    json j;
    j["schema"] = kEpscSchema;
    j["version"] = software_version();
    j["config"] = config_json(base);
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"N", r.n},
                       {"x", r.x},
                       {"n_q", r.n_q},
                       {"n_l", r.n_l},
                       {"model", std::string(to_string(r.model))},
                       {"eps_c", opt_json(r.eps_c)},
                       {"status", r.status}});
    }
    j["rows"] = std::move(arr);
    return j.dump(1) + "\n";
}

std::string fits_to_json(const std::vector<ModelFit>& fits) {
    json j;
    j["schema"] = kFitSchema;
    j["version"] = software_version();
    json arr = json::array();
    for (const auto& f : fits) {
        arr.push_back({{"model", std::string(to_string(f.model))},
                       {"B", f.fit.B},
                       {"beta", f.fit.beta},
                       {"ln_B", f.fit.ln_B},
                       {"ln_B_stderr", f.fit.ln_B_stderr},
                       {"beta_stderr", f.fit.beta_stderr},
                       {"residual_norm", f.fit.residual_norm},
                       {"points", f.fit.points}});
    }
    j["fits"] = std::move(arr);
    return j.dump(1) + "\n";
}

std::string oracle_to_json(const OracleReport& report) {
    json j;
    j["schema"] = kOracleSchema;
    j["version"] = software_version();
    j["tolerance"] = report.tolerance;
    json arr = json::array();
    for (const auto& r : report.rows) {
        arr.push_back({{"N", r.n},
                       {"x", r.x},
                       {"L", r.total_qubits},
                       {"max_deviation", r.max_deviation},
                       {"pass", r.pass}});
    }
    j["rows"] = std::move(arr);
    j["pass"] = report.all_pass();
    return j.dump(1) + "\n";
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("cannot write " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("cannot move output into place at " + path.string());
    }
}

std::vector<EpscRow> parse_epsc_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::map<std::string, std::size_t> col;
    std::vector<EpscRow> rows;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        const auto cells = split(t);
        if (col.empty()) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                col[cells[i]] = i;
            }
            for (const char* need : {"N", "model", "eps_c"}) {
                if (!col.count(need)) {
                    throw ValidationError(std::string("eps_c table lacks a '") + need +
                                          "' column");
                }
            }
            continue;
        }
        if (cells.size() < col.size()) {
            throw ValidationError("eps_c table line " + std::to_string(lineno) +
                                  " has too few cells");
        }
        const auto cell = [&](const char* name) -> std::string {
            const auto it = col.find(name);
            return it == col.end() ? std::string() : cells[it->second];
        };
        EpscRow row;
        row.n = to_u64(cell("N"), "N");
        if (!cell("x").empty()) {
            row.x = to_u64(cell("x"), "x");
        }
        if (!cell("n_q").empty()) {
            row.n_q = static_cast<int>(to_u64(cell("n_q"), "n_q"));
        }
        if (!cell("n_l").empty()) {
            row.n_l = static_cast<int>(to_u64(cell("n_l"), "n_l"));
        }
        row.model = parse_model(cell("model"));
        row.eps_c = to_eps(cell("eps_c"));
        row.status = cell("status");
        if (row.status.empty()) {
            row.status = row.eps_c ? "ok" : "no-crossing";
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<EpscRow> read_epsc_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
        return parse_epsc_csv(text);
    }
    std::vector<EpscRow> rows;
    try {
        const json j = json::parse(text);
        for (const auto& r : j.at("rows")) {
            EpscRow row;
            row.n = r.at("N").get<std::uint64_t>();
            row.x = r.value("x", std::uint64_t{0});
            row.n_q = r.value("n_q", 0);
            row.n_l = r.value("n_l", 0);
            row.model = parse_model(r.at("model").get<std::string>());
            if (!r.at("eps_c").is_null()) {
                row.eps_c = r.at("eps_c").get<double>();
            }
            row.status = r.value("status", std::string(row.eps_c ? "ok" : "no-crossing"));
            rows.push_back(std::move(row));
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed eps_c JSON: ") + e.what());
    }
    return rows;
}

} // namespace shorsim
