// Copyright 2026 The qrcfb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver for the reservoir experiments.
//
//   qrcfb stm          --config c.json --out dir   short-term memory (R^2 per delay)
//   qrcfb predict      --config c.json --out dir   one-step prediction (NMSE)
//   qrcfb esp          --config c.json --out dir   echo-state divergence curves
//   qrcfb noise        --config c.json --out dir   prediction under depolarizing noise
//   qrcfb oracle-check --config c.json --out dir   shot simulator vs exact Markov law
//
// Exit codes: 0 success, 2 bad configuration, 3 numeric failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qrcfb/qrcfb.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qrcfb;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open config file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error &e) {
        throw InvalidArgument(std::string("config: malformed JSON: ") + e.what());
    }
}

// Fill in what a subcommand implies when the file leaves it out; an explicit
// value that contradicts the subcommand is rejected.
ExperimentConfig load_config(const std::string &path, const std::string &command, unsigned threads_override) {
    json j = read_json_file(path);
    detail::require(j.is_object(), "config: top level must be a JSON object");
    const bool memory = command == "stm";
    const bool prediction = command == "predict" || command == "noise";
    if (memory || prediction) {
        const std::string want = memory ? "r2" : "nmse";
        if (!j.contains("metric")) {
            j["metric"] = want;
        } else if (j["metric"] != want) {
            throw InvalidArgument("config: metric must be '" + want + "' for '" + command + "'");
        }
    }
    if (prediction && !j.contains("tau_list")) {
        j["tau_list"] = json::array({1});
    }
    if (prediction && !j.contains("sweep")) {
        j["sweep"] = {{"a_fb", default_a_fb_grid()}};
    }
    ExperimentConfig c = config_from_json(j);
    if (threads_override > 0) {
        c.threads = threads_override;
    }
    return c;
}

std::ofstream open_out(const fs::path &p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + p.string() + "'");
    }
    return out;
}

void write_summary(const fs::path &dir, const json &j) {
    auto out = open_out(dir / "summary.json");
    write_json(out, j);
    out << '\n';
}

void log_best(const ExperimentResult &r, const std::string &metric, std::optional<int> tau) {
    if (const Aggregate *best = best_aggregate(r, metric, tau)) {
        std::fprintf(stderr, "best %s: %.6g +- %.3g at a_in=%g a_fb=%g\n", metric.c_str(), best->mean, best->std_of_mean,
                     best->point.a_in, best->point.a_fb);
    }
}

int cmd_ensemble(const ExperimentConfig &c, const fs::path &out, const std::string &command) {
    const ExperimentResult r = run_ensemble(c);
    {
        auto f = open_out(out / "results.csv");
        write_results_csv(f, c, r);
    }
    write_summary(out, summary_json(command, c, r));
    if (c.metric == MetricKind::RSquared) {
        log_best(r, "capacity", std::nullopt);
    } else {
        log_best(r, "nmse", c.tau_list.front());
    }
    return kExitOk;
}

int cmd_noise(const ExperimentConfig &c, const fs::path &out) {
    const NoiseSweepResult sweep = run_noise_sweep(c, c.lambda_list);
    json per_lambda = json::array();
    {
        auto f = open_out(out / "results.csv");
        write_results_csv_header(f);
        for (const auto &[lambda, r] : sweep.per_lambda) {
            write_results_csv_rows(f, c, r, lambda_suffix(lambda));
            json e = {{"lambda", lambda}, {"aggregates", aggregates_json(r)}};
            if (const Aggregate *best = best_aggregate(r, "nmse", c.tau_list.front())) {
                e["best_nmse"] = best->mean;
                e["best_a_fb"] = best->point.a_fb;
            }
            per_lambda.push_back(e);
        }
    }
    const ExperimentResult &first = sweep.per_lambda.front().second;
    json s = {{"command", "noise"},
              {"model", to_string(c.model.kind)},
              {"task", to_string(c.task.kind)},
              {"seed", first.seed},
              {"config_hash", first.config_hash},
              {"timestamp", first.timestamp},
              {"n_unitaries", c.n_unitaries},
              {"shots", c.shots},
              {"per_lambda", per_lambda}};
    write_summary(out, s);
    return kExitOk;
}

int cmd_esp(const ExperimentConfig &c, const fs::path &out) {
    const EspResult r = run_esp_experiment(c);
    {
        auto f = open_out(out / "divergence.csv");
        write_divergence_csv(f, r.mean_curve);
    }
    {
        auto f = open_out(out / "divergence_by_instance.csv");
        f << "instance,t,mean_abs_diff\n";
        for (size_t u = 0; u < r.curves.size(); ++u) {
            for (size_t t = 0; t < r.curves[u].size(); ++t) {
                f << u << ',' << t << ',' << format_double(r.curves[u][t]) << '\n';
            }
        }
    }
    {
        auto f = open_out(out / "traces.csv");
        f << "run,t,x1\n";
        for (size_t run = 0; run < r.traces.size(); ++run) {
            for (size_t t = 0; t < r.traces[run].size(); ++t) {
                f << run << ',' << t << ',' << format_double(r.traces[run][t]) << '\n';
            }
        }
    }
    const double d0 = r.mean_curve.front(), d1 = r.mean_curve.back();
    json s = {{"command", "esp"},
              {"model", to_string(c.model.kind)},
              {"seed", c.master_seed},
              {"config_hash", config_hash(c)},
              {"timestamp", utc_timestamp()},
              {"n_runs", c.esp.n_runs},
              {"length", c.esp.length},
              {"n_unitaries", c.esp.n_unitaries},
              {"initial_divergence", d0},
              {"final_divergence", d1}};
    s["final_over_initial"] = d0 > 0.0 ? json(d1 / d0) : json(nullptr);
    write_summary(out, s);
    std::fprintf(stderr, "divergence %.6g -> %.6g\n", d0, d1);
    return kExitOk;
}

int cmd_oracle_check(const ExperimentConfig &c, const fs::path &out) {
    constexpr double kThreshold = 4.0, kRequiredFraction = 0.99;
    const OracleCheckResult r = run_oracle_check(c, kThreshold);
    {
        auto f = open_out(out / "results.csv");
        write_results_csv_header(f);
        for (const auto &rec : r.records) {
            const std::string prefix = std::string(to_string(c.model.kind)) + ",uniform,," + format_double(rec.point.a_in) +
                                       ',' + format_double(rec.point.a_fb) + ',' + std::to_string(c.shots) + ',' +
                                       std::to_string(rec.unitary_index) + ',';
            f << prefix << "max_standardized_deviation," << format_double(rec.max_abs_z) << '\n';
            f << prefix << "fraction_within," << format_double(double(rec.within) / double(rec.total)) << '\n';
        }
    }
    const double frac = r.fraction_within();
    json s = {{"command", "oracle-check"},
              {"seed", c.master_seed},
              {"config_hash", config_hash(c)},
              {"timestamp", utc_timestamp()},
              {"threshold", r.threshold},
              {"fraction_within", frac},
              {"required_fraction", kRequiredFraction},
              {"passed", frac >= kRequiredFraction}};
    write_summary(out, s);
    std::fprintf(stderr, "fraction within %g sigma: %.4f\n", kThreshold, frac);
    if (frac < kRequiredFraction) {
        std::fprintf(stderr, "error: shot simulator disagrees with the exact law\n");
        return kExitNumeric;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum reservoir computing with measurement feedback"};
    app.require_subcommand(1);
    std::string config_path, out_dir;
    unsigned threads = 0;
    for (const char *name : {"stm", "predict", "esp", "noise", "oracle-check"}) {
        auto *sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON experiment configuration")->required();
        sub->add_option("--out", out_dir, "output directory (created if missing)")->required();
        sub->add_option("--threads", threads, "worker threads, overrides the config (0 = keep)");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        const ExperimentConfig c = load_config(config_path, command, threads);
        const fs::path out(out_dir);
        std::error_code ec;
        fs::create_directories(out, ec);
        if (ec) {
            throw IoError("cannot create '" + out.string() + "': " + ec.message());
        }
        if (command == "stm" || command == "predict") return cmd_ensemble(c, out, command);
        if (command == "noise") return cmd_noise(c, out);
        if (command == "esp") return cmd_esp(c, out);
        return cmd_oracle_check(c, out);
    } catch (const InvalidArgument &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const Unsupported &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const json::exception &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const NumericError &e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return kExitNumeric;
    } catch (const IoError &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitNumeric;
    }
}
