// Copyright 2026 The guided-drill-sim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "gds/fault.hpp"
#include "gds/metrics.hpp"
#include "gds/report_io.hpp"
#include "gds/scenario_io.hpp"

namespace gds::cli {
namespace {

namespace fs = std::filesystem;

std::shared_ptr<spdlog::logger> g_log = spdlog::default_logger();

struct Job {
  Scenario scenario;
  fs::path dir;        // per-run output directory; empty = write nothing
  std::string label;   // e.g. "with seed=3"
};

struct JobResult {
  Metrics metrics;
  bool complete = false;
  std::string fault;
  std::uint64_t config_digest = 0;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
  if (!f) throw ConfigError(path.string(), "cannot write file");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ConfigError(dir.string(), "cannot create output directory");
  }
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::vector<Condition> selected(ConditionSelector sel, const Scenario& base) {
  switch (sel) {
    case ConditionSelector::kScenario: return {base.condition};
    case ConditionSelector::kWith: return {Condition::kWithGuidance};
    case ConditionSelector::kWithout: return {Condition::kWithoutGuidance};
    case ConditionSelector::kBoth:
      return {Condition::kWithGuidance, Condition::kWithoutGuidance};
  }
  return {base.condition};
}

std::vector<std::uint64_t> seeds_of(const RunManifest& m, const Scenario& base) {
  return m.seeds.empty() ? std::vector<std::uint64_t>{base.op.seed} : m.seeds;
}

std::string seed_dir(std::uint64_t seed) { return "seed_" + std::to_string(seed); }

/// Runs every job, writing per-run outputs as soon as each run ends so that
/// traces are not all held in memory. Results keep the job order.
std::vector<JobResult> execute(const std::vector<Job>& jobs, const RunManifest& m) {
  std::vector<JobResult> results(jobs.size());
  unsigned workers = m.jobs != 0 ? m.jobs : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(jobs.size()));
  g_log->info("executing {} run(s) on {} worker(s)", jobs.size(), workers);

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  const auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        const Job& job = jobs[i];
        Trace trace = run(job.scenario);
        JobResult& r = results[i];
        r.metrics = compute_metrics(trace, build_targets(job.scenario));
        r.complete = trace.complete && !r.metrics.partial;
        r.fault = trace.fault;
        r.config_digest = trace.config_digest;
        if (!job.dir.empty()) {
          ensure_dir(job.dir);
          write_file(job.dir / "events.json", events_json(trace));
          if (m.emit_metrics) write_file(job.dir / "metrics.json", metrics_json(r.metrics));
          if (m.emit_trace) {
            std::ostringstream csv;
            write_trace_csv(csv, trace);
            write_file(job.dir / "trace.csv", csv.str());
          }
        }
        g_log->debug("{}: {} samples, complete={}", job.label, trace.samples.size(), r.complete);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  if (error) std::rethrow_exception(error);
  return results;
}

void print_summary(std::ostream& out, const std::string& label, const JobResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%s t_tot=%.3f s E_tot=%.4f J eps_phi=%.3f deg eps_theta=%.3f deg", label.c_str(),
                r.metrics.t_tot, r.metrics.e_tot, r.metrics.eps_phi_avg,
                r.metrics.eps_theta_avg);
  out << buf << (r.complete ? " complete" : " INCOMPLETE");
  if (!r.fault.empty()) out << " (" << r.fault << ")";
  out << '\n';
}

Scenario load_checked(const RunManifest& m) {
  Scenario base = load_scenario(m.scenario);
  build_targets(base);  // surfaces geometry errors before anything runs
  m.validate();
  return base;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Fault& e) {
    err << "fault: " << e.what() << '\n';
    return kExitFault;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

void configure_logging(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  g_log = std::make_shared<spdlog::logger>("gds", sink);
  g_log->set_pattern("[gds %l] %v");
  g_log->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("GDS_LOG")) {
    const std::string name(env);
    const auto level = spdlog::level::from_str(name);
    if (level == spdlog::level::off && name != "off") {
      g_log->warn("ignoring unknown GDS_LOG level '{}'", name);
    } else {
      g_log->set_level(level);
    }
  }
}

}  // namespace

void RunManifest::validate() const {
  std::set<std::uint64_t> unique(seeds.begin(), seeds.end());
  if (unique.size() != seeds.size()) throw ConfigError("--seeds", "seeds must be distinct");
  if (!dry_run) ensure_dir(out_dir);
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  const auto parse = [&](std::string_view s) {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
      throw ConfigError("--seeds", "malformed seed '" + std::string(s) + "'");
    }
    return v;
  };
  while (std::getline(ss, item, ',')) {
    std::erase_if(item, [](unsigned char c) { return std::isspace(c); });
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      out.push_back(parse(item));
      continue;
    }
    const std::uint64_t lo = parse(std::string_view(item).substr(0, dash));
    const std::uint64_t hi = parse(std::string_view(item).substr(dash + 1));
    if (hi < lo || hi - lo > 100000) throw ConfigError("--seeds", "bad range '" + item + "'");
    for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
  }
  if (out.empty()) throw ConfigError("--seeds", "empty seed list");
  return out;
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::erase_if(item, [](unsigned char c) { return std::isspace(c); });
    if (item.empty()) continue;
    double v = 0.0;
    const auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || p != item.data() + item.size() || !std::isfinite(v)) {
      throw ConfigError("--values", "malformed value '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("--values", "empty value list");
  return out;
}

int cmd_validate(const fs::path& scenario, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = load_scenario(scenario);
    const auto targets = build_targets(s);
    out << scenario.string() << ": ok (" << targets.size() << " targets, digest "
        << hex64(scenario_digest(s)) << ")\n";
    return kExitOk;
  });
}

int cmd_run(const RunManifest& m, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario base = load_checked(m);
    std::vector<Job> jobs;
    for (const Condition c : selected(m.conditions, base)) {
      for (const std::uint64_t seed : seeds_of(m, base)) {
        Job job{base, m.out_dir / std::string(to_string(c)) / seed_dir(seed),
                std::string(to_string(c)) + " seed=" + std::to_string(seed)};
        job.scenario.condition = c;
        job.scenario.op.seed = seed;
        job.scenario.validate();
        jobs.push_back(std::move(job));
      }
    }
    if (m.dry_run) {
      out << "dry run: " << jobs.size() << " run(s) validated, nothing executed\n";
      return kExitOk;
    }
    const auto results = execute(jobs, m);
    bool ok = true;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      print_summary(out, jobs[i].label, results[i]);
      ok = ok && results[i].complete;
    }
    return ok ? kExitOk : kExitFault;
  });
}

int cmd_compare(const RunManifest& m, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario base = load_checked(m);
    // Self-comparison when a single condition is selected explicitly.
    std::array<Condition, 2> sides{Condition::kWithGuidance, Condition::kWithoutGuidance};
    std::array<std::string, 2> names{"with", "without"};
    if (m.conditions == ConditionSelector::kWith || m.conditions == ConditionSelector::kWithout) {
      const Condition c = selected(m.conditions, base).front();
      sides = {c, c};
      names = {std::string(to_string(c)), std::string(to_string(c)) + "_repeat"};
    }
    const auto seeds = seeds_of(m, base);
    std::vector<Job> jobs;
    for (std::size_t side = 0; side < 2; ++side) {
      for (const std::uint64_t seed : seeds) {
        Job job{base, m.out_dir / "runs" / names[side] / seed_dir(seed),
                names[side] + " seed=" + std::to_string(seed)};
        job.scenario.condition = sides[side];
        job.scenario.op.seed = seed;
        job.scenario.validate();
        jobs.push_back(std::move(job));
      }
    }
    if (m.dry_run) {
      out << "dry run: " << jobs.size() << " run(s) validated, nothing executed\n";
      return kExitOk;
    }
    const auto results = execute(jobs, m);

    std::array<std::vector<Metrics>, 2> per_side;
    std::vector<std::string> failed;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      print_summary(out, jobs[i].label, results[i]);
      if (results[i].complete) {
        per_side[i / seeds.size()].push_back(results[i].metrics);
      } else {
        failed.push_back(jobs[i].label);
      }
    }
    if (!failed.empty()) {
      std::string doc = "{\n  \"schema\": \"gds.comparison/1\",\n  \"partial\": true,\n"
                        "  \"failed_runs\": [";
      for (std::size_t i = 0; i < failed.size(); ++i) {
        doc += (i ? ", \"" : "\"") + failed[i] + "\"";
      }
      doc += "]\n}\n";
      write_file(m.out_dir / "comparison.json", doc);
      err << "error: " << failed.size() << " run(s) did not complete; report marked partial\n";
      return kExitFault;
    }
    const ComparisonReport report = compare(summarize(per_side[0]), summarize(per_side[1]));
    write_file(m.out_dir / "comparison.json", comparison_json(report));
    if (m.emit_comparison_csv) {
      std::ostringstream csv;
      write_comparison_csv(csv, report);
      write_file(m.out_dir / "comparison.csv", csv.str());
    }
    for (std::size_t i = 0; i < kNumMetricFields; ++i) {
      const auto& d = report.percent_diff[i];
      out << "  " << metric_field_names()[i] << ": "
          << (d ? fmt_double(*d) + " %" : std::string("undefined")) << '\n';
    }
    return kExitOk;
  });
}

int cmd_sweep(const RunManifest& m, const std::string& parameter,
              const std::vector<double>& values, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (values.empty()) throw ConfigError("--values", "empty value list");
    const Scenario base = load_checked(m);
    {
      Scenario probe = base;
      set_field(probe, parameter, values.front());
    }
    const auto conditions = selected(m.conditions, base);
    const auto seeds = seeds_of(m, base);
    std::vector<Job> jobs;
    for (const double value : values) {
      for (const Condition c : conditions) {
        for (const std::uint64_t seed : seeds) {
          Job job{base, {}, parameter + "=" + fmt_double(value) + " " +
                                std::string(to_string(c)) + " seed=" + std::to_string(seed)};
          set_field(job.scenario, parameter, value);
          job.scenario.condition = c;
          if (parameter != "operator.seed") job.scenario.op.seed = seed;
          job.scenario.validate();
          if (m.emit_trace) {
            job.dir = m.out_dir / "runs" / (parameter + "=" + fmt_double(value)) /
                      std::string(to_string(c)) / seed_dir(seed);
          }
          jobs.push_back(std::move(job));
        }
      }
    }
    if (m.dry_run) {
      out << "dry run: " << jobs.size() << " run(s) validated, nothing executed\n";
      return kExitOk;
    }
    const auto results = execute(jobs, m);

    std::string metric_cols;
    for (const auto name : metric_field_names()) metric_cols += "," + std::string(name);
    std::string runs_csv = "parameter,value,condition,seed,complete" + metric_cols + "\n";
    std::string table = "parameter,value,condition" + metric_cols + ",runs,complete_runs\n";
    bool ok = true;
    std::size_t i = 0;
    for (const double value : values) {
      for (const Condition c : conditions) {
        std::vector<Metrics> complete;
        for (const std::uint64_t seed : seeds) {
          const JobResult& r = results[i];
          print_summary(out, jobs[i].label, r);
          runs_csv += parameter + "," + fmt_double(value) + "," + std::string(to_string(c)) +
                      "," + std::to_string(seed) + "," + (r.complete ? "1" : "0");
          for (const double v : metric_values(r.metrics)) runs_csv += "," + fmt_double(v);
          runs_csv += "\n";
          if (r.complete) complete.push_back(r.metrics);
          ok = ok && r.complete;
          ++i;
        }
        table += parameter + "," + fmt_double(value) + "," + std::string(to_string(c));
        if (complete.empty()) {
          for (std::size_t k = 0; k < kNumMetricFields; ++k) table += ",";
        } else {
          for (const double v : metric_values(summarize(complete).mean)) {
            table += "," + fmt_double(v);
          }
        }
        table += "," + std::to_string(seeds.size()) + "," + std::to_string(complete.size()) + "\n";
      }
    }
    write_file(m.out_dir / "sweep.csv", table);
    write_file(m.out_dir / "sweep_runs.csv", runs_csv);
    return ok ? kExitOk : kExitFault;
  });
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  configure_logging(err);

  CLI::App app{"Guided collaborative drilling simulator", "gds"};
  app.require_subcommand(1);

  RunManifest m;
  std::string scenario;
  std::string out_dir = "gds_out";
  std::string seeds;
  std::string condition = "scenario";
  std::string parameter;
  std::string values;
  bool trace_flag = false;
  bool no_trace_flag = false;
  bool no_csv = false;

  const auto common = [&](CLI::App* sub, bool with_out) {
    sub->add_option("--scenario", scenario, "Scenario JSON document")->required();
    if (!with_out) return;
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seeds", seeds, "Seed list, e.g. 1,2,3 or 1-10");
    sub->add_option("--condition", condition, "with | without | both")
        ->check(CLI::IsMember({"scenario", "with", "without", "both"}));
    sub->add_flag("--dry-run", m.dry_run, "Validate the configuration and exit");
    sub->add_option("--jobs", m.jobs, "Parallel runs (0 = all cores)");
    sub->add_flag("--trace", trace_flag, "Write trace.csv per run");
    sub->add_flag("--no-trace", no_trace_flag, "Do not write trace.csv");
    sub->add_flag("--no-metrics", [&m](std::int64_t) { m.emit_metrics = false; },
                  "Do not write metrics.json per run");
  };
  CLI::App* run_cmd = app.add_subcommand("run", "Run single trials");
  common(run_cmd, true);
  CLI::App* compare_cmd = app.add_subcommand("compare", "Compare the two conditions");
  common(compare_cmd, true);
  compare_cmd->add_flag("--no-csv", no_csv, "Skip comparison.csv");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Sweep one numeric scenario field");
  common(sweep_cmd, true);
  sweep_cmd->add_option("--param", parameter, "Field to sweep, e.g. operator.angular_noise")
      ->required();
  sweep_cmd->add_option("--values", values, "Comma-separated values")->required();
  CLI::App* validate_cmd = app.add_subcommand("validate", "Check a scenario document");
  common(validate_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  m.scenario = scenario;
  m.out_dir = out_dir;
  if (condition == "with") m.conditions = ConditionSelector::kWith;
  if (condition == "without") m.conditions = ConditionSelector::kWithout;
  if (condition == "both") m.conditions = ConditionSelector::kBoth;
  m.emit_comparison_csv = !no_csv;

  if (validate_cmd->parsed()) return cmd_validate(m.scenario, out, err);

  const int seed_status = guarded(err, [&] {
    if (!seeds.empty()) m.seeds = parse_seed_list(seeds);
    return kExitOk;
  });
  if (seed_status != kExitOk) return seed_status;

  if (run_cmd->parsed()) {
    m.emit_trace = !no_trace_flag;
    return cmd_run(m, out, err);
  }
  m.emit_trace = trace_flag && !no_trace_flag;
  if (compare_cmd->parsed()) return cmd_compare(m, out, err);

  std::vector<double> value_list;
  const int value_status = guarded(err, [&] {
    value_list = parse_value_list(values);
    return kExitOk;
  });
  if (value_status != kExitOk) return value_status;
  return cmd_sweep(m, parameter, value_list, out, err);
}

}  // namespace gds::cli
