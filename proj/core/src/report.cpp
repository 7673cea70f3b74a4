// Copyright 2026 The FANoS Bench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fanos/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fanos {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10e", value);
  return buf;
}

std::string format_real(const std::optional<double>& value) {
  return value ? format_real(*value) : std::string("--");
}

std::string integrator_name(Integrator integrator) {
  return integrator == Integrator::kSemiImplicit ? "semi_implicit"
                                                 : "explicit_euler";
}

namespace {

// RFC 4180: quote fields containing separators, quotes or line breaks.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((os_ << (first ? "" : ",") << csv_field(fields), first = false), ...);
    os_ << "\r\n";
  }

 private:
  std::ostream& os_;
};

void write_file(const fs::path& path, const std::string& content,
                SweepFiles& files) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
  files.written.push_back(path);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create directory " + dir.string() + ": " +
                             ec.message());
  }
}

std::string kappa_text(const std::optional<double>& k) {
  return k ? format_real(*k) : std::string();
}

ordered_json optional_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json summary_json(const SweepSummary& s) {
  ordered_json j;
  j["method"] = s.method;
  j["lr"] = s.lr;
  if (s.kappa) j["kappa"] = *s.kappa;
  j["n_seeds"] = s.n_seeds;
  j["mean"] = optional_json(s.mean);
  j["std"] = optional_json(s.stddev);
  j["ci_low"] = s.ci ? ordered_json(s.ci->low) : ordered_json(nullptr);
  j["ci_high"] = s.ci ? ordered_json(s.ci->high) : ordered_json(nullptr);
  j["div_rate"] = s.divergence_rate;
  return j;
}

ordered_json trial_json(const TrialRecord& r) {
  ordered_json j;
  j["method"] = r.method;
  j["lr"] = r.lr;
  if (r.kappa) j["kappa"] = *r.kappa;
  j["seed"] = r.seed;
  j["final_loss"] = optional_json(r.final_loss);
  j["divergent"] = r.divergent();
  j["eval_count"] = r.eval_count;
  ordered_json trace = ordered_json::array();
  for (const auto& [step, loss] : r.loss_trace) {
    trace.push_back(ordered_json::array(
        {step, std::isfinite(loss) ? ordered_json(loss) : ordered_json(nullptr)}));
  }
  j["loss_trace"] = std::move(trace);
  return j;
}

std::string summary_csv(const std::vector<SweepSummary>& rows, bool with_kappa,
                        bool with_lr) {
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      os << (i ? "," : "") << csv_field(fields[i]);
    }
    os << "\r\n";
  };
  std::vector<std::string> header{"method"};
  if (with_lr) header.push_back("lr");
  if (with_kappa) header.push_back("kappa");
  for (const char* h : {"mean", "std", "ci_low", "ci_high", "div_rate"}) {
    header.push_back(h);
  }
  emit(header);
  for (const auto& s : rows) {
    std::vector<std::string> f{s.method};
    if (with_lr) f.push_back(format_real(s.lr));
    if (with_kappa) f.push_back(kappa_text(s.kappa));
    f.push_back(format_real(s.mean));
    f.push_back(format_real(s.stddev));
    f.push_back(s.ci ? format_real(s.ci->low) : "--");
    f.push_back(s.ci ? format_real(s.ci->high) : "--");
    f.push_back(format_real(s.divergence_rate));
    emit(f);
  }
  return os.str();
}

std::vector<SweepSummary> best_rows(const SweepResult& r) {
  std::vector<SweepSummary> rows;
  for (const auto& [method, s] : r.best) rows.push_back(s);
  return rows;
}

// gnuplot "index" blocks: one block per method (and kappa), separated by two
// blank lines. Columns: x mean ci_low ci_high div_rate.
std::string gnuplot_data(const SweepResult& r, Benchmark benchmark) {
  std::ostringstream os;
  const bool quadratic = benchmark == Benchmark::kQuadratic;
  os << "# columns: " << (quadratic ? "kappa" : "lr")
     << " mean ci_low ci_high div_rate; '--' marks fully divergent cells\n";
  std::map<std::string, std::vector<const SweepSummary*>> by_method;
  for (const auto& s : r.summaries) by_method[s.method].push_back(&s);
  bool first = true;
  for (const auto& [method, cells] : by_method) {
    if (!first) os << "\n\n";
    first = false;
    os << "# " << method << "\n";
    for (const auto* s : cells) {
      os << format_real(quadratic ? s->kappa.value_or(0.0) : s->lr) << ' '
         << format_real(s->mean) << ' '
         << (s->ci ? format_real(s->ci->low) : "--") << ' '
         << (s->ci ? format_real(s->ci->high) : "--") << ' '
         << format_real(s->divergence_rate) << '\n';
    }
  }
  return os.str();
}

std::string timings_csv(const SweepResult& r) {
  std::ostringstream os;
  CsvWriter w(os);
  w.row(std::string("method"), std::string("lr"), std::string("kappa"),
        std::string("seed"), std::string("wall_time_s"));
  for (const auto& t : r.trials) {
    w.row(t.method, format_real(t.lr), kappa_text(t.kappa),
          std::to_string(t.seed), format_real(t.wall_time));
  }
  return os.str();
}

}  // namespace

SweepFiles write_sweep(const SweepResult& result, Benchmark benchmark,
                       const fs::path& out_dir, OutputFormat format,
                       bool with_traces) {
  ensure_dir(out_dir);
  SweepFiles files;
  const bool quadratic = benchmark == Benchmark::kQuadratic;
  if (format == OutputFormat::kJson) {
    ordered_json j;
    j["benchmark"] = benchmark_name(benchmark);
    ordered_json trials = ordered_json::array();
    for (const auto& t : result.trials) trials.push_back(trial_json(t));
    j["trials"] = std::move(trials);
    ordered_json summary = ordered_json::array();
    for (const auto& s : result.summaries) summary.push_back(summary_json(s));
    j["summary"] = std::move(summary);
    if (!quadratic) {
      ordered_json best = ordered_json::array();
      for (const auto& s : best_rows(result)) best.push_back(summary_json(s));
      j["best"] = std::move(best);
    }
    write_file(out_dir / "results.json", j.dump(2) + "\n", files);
  } else {
    std::ostringstream os;
    CsvWriter w(os);
    if (quadratic) {
      w.row(std::string("method"), std::string("lr"), std::string("kappa"),
            std::string("seed"), std::string("final_loss"),
            std::string("divergent"), std::string("eval_count"));
    } else {
      w.row(std::string("method"), std::string("lr"), std::string("seed"),
            std::string("final_loss"), std::string("divergent"),
            std::string("eval_count"));
    }
    for (const auto& t : result.trials) {
      const std::string div = t.divergent() ? "1" : "0";
      if (quadratic) {
        w.row(t.method, format_real(t.lr), kappa_text(t.kappa),
              std::to_string(t.seed), format_real(t.final_loss), div,
              std::to_string(t.eval_count));
      } else {
        w.row(t.method, format_real(t.lr), std::to_string(t.seed),
              format_real(t.final_loss), div, std::to_string(t.eval_count));
      }
    }
    write_file(out_dir / "trials.csv", os.str(), files);
    write_file(out_dir / "summary.csv",
               summary_csv(result.summaries, quadratic, true), files);
    if (!quadratic) {
      write_file(out_dir / "best_lr.csv",
                 summary_csv(best_rows(result), false, true), files);
    }
    if (with_traces) {
      std::ostringstream ts;
      CsvWriter tw(ts);
      tw.row(std::string("method"), std::string("lr"), std::string("kappa"),
             std::string("seed"), std::string("step"), std::string("loss"));
      for (const auto& t : result.trials) {
        for (const auto& [step, loss] : t.loss_trace) {
          tw.row(t.method, format_real(t.lr), kappa_text(t.kappa),
                 std::to_string(t.seed), std::to_string(step), format_real(loss));
        }
      }
      write_file(out_dir / "traces.csv", ts.str(), files);
    }
  }
  write_file(out_dir / "sweep.dat", gnuplot_data(result, benchmark), files);
  write_file(out_dir / "timings.csv", timings_csv(result), files);
  return files;
}

SweepFiles write_ablations(const SweepResult& result, const fs::path& out_dir,
                           OutputFormat format) {
  ensure_dir(out_dir);
  SweepFiles files;
  if (format == OutputFormat::kJson) {
    ordered_json j;
    ordered_json summary = ordered_json::array();
    for (const auto& s : result.summaries) summary.push_back(summary_json(s));
    j["summary"] = std::move(summary);
    ordered_json trials = ordered_json::array();
    for (const auto& t : result.trials) trials.push_back(trial_json(t));
    j["trials"] = std::move(trials);
    write_file(out_dir / "ablations.json", j.dump(2) + "\n", files);
  } else {
    std::ostringstream os;
    CsvWriter w(os);
    w.row(std::string("variant"), std::string("mean"), std::string("std"),
          std::string("ci_low"), std::string("ci_high"), std::string("div_rate"));
    for (const auto& s : result.summaries) {
      w.row(s.method, format_real(s.mean), format_real(s.stddev),
            s.ci ? format_real(s.ci->low) : std::string("--"),
            s.ci ? format_real(s.ci->high) : std::string("--"),
            format_real(s.divergence_rate));
    }
    write_file(out_dir / "ablations.csv", os.str(), files);
  }
  write_file(out_dir / "timings.csv", timings_csv(result), files);
  return files;
}

SweepFiles write_thermostat_diagnostics(const DiagnosticsResult& result,
                                        const fs::path& out_dir) {
  ensure_dir(out_dir);
  SweepFiles files;
  auto emit = [&](const TrialRecord& rec, const char* name) {
    std::ostringstream os;
    CsvWriter w(os);
    w.row(std::string("step"), std::string("zeta"), std::string("t_inst"),
          std::string("t_ema"), std::string("t_target"));
    for (const auto& s : rec.thermostat_trace) {
      w.row(std::to_string(s.step), format_real(s.zeta), format_real(s.t_inst),
            format_real(s.t_ema), format_real(s.t_target));
    }
    write_file(out_dir / name, os.str(), files);
  };
  emit(result.good, "thermostat_good.csv");
  emit(result.bad, "thermostat_bad.csv");
  return files;
}

SweepFiles write_stability_report(const std::vector<StabilityRow>& rows,
                                  const fs::path& out_dir, OutputFormat format) {
  ensure_dir(out_dir);
  SweepFiles files;
  if (format == OutputFormat::kJson) {
    ordered_json j = ordered_json::array();
    for (const auto& r : rows) {
      j.push_back({{"h_omega", r.h_omega},
                   {"integrator", integrator_name(r.integrator)},
                   {"det", r.spectrum.det},
                   {"trace", r.spectrum.trace},
                   {"spectral_radius", r.spectrum.spectral_radius}});
    }
    write_file(out_dir / "stability.json", j.dump(2) + "\n", files);
    return files;
  }
  std::ostringstream os;
  CsvWriter w(os);
  w.row(std::string("h_omega"), std::string("integrator"), std::string("det"),
        std::string("trace"), std::string("spectral_radius"));
  for (const auto& r : rows) {
    w.row(format_real(r.h_omega), integrator_name(r.integrator),
          format_real(r.spectrum.det), format_real(r.spectrum.trace),
          format_real(r.spectrum.spectral_radius));
  }
  write_file(out_dir / "stability.csv", os.str(), files);
  return files;
}

std::string render_summary_table(const std::vector<SweepSummary>& rows,
                                 bool with_kappa, bool with_lr) {
  std::ostringstream os;
  auto short_real = [](const std::optional<double>& v) {
    if (!v) return std::string("--");
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", *v);
    return std::string(buf);
  };
  os << std::left << std::setw(20) << "Method";
  if (with_lr) os << std::setw(10) << "LR";
  if (with_kappa) os << std::setw(10) << "kappa";
  os << std::setw(12) << "Mean" << std::setw(12) << "Std" << std::setw(26)
     << "95% CI" << "Div. rate\n";
  for (const auto& s : rows) {
    os << std::setw(20) << s.method;
    if (with_lr) os << std::setw(10) << short_real(s.lr);
    if (with_kappa) os << std::setw(10) << short_real(s.kappa);
    const std::string ci =
        s.ci ? "[" + short_real(s.ci->low) + ", " + short_real(s.ci->high) + "]"
             : "--";
    os << std::setw(12) << short_real(s.mean) << std::setw(12)
       << short_real(s.stddev) << std::setw(26) << ci
       << short_real(100.0 * s.divergence_rate) << "%\n";
  }
  return os.str();
}

}  // namespace fanos
