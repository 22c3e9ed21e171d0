// SPDX-License-Identifier: Apache-2.0
#include "qsarbench/report.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "qsarbench/csv.hpp"
#include "qsarbench/error.hpp"
#include "qsarbench/metrics.hpp"

namespace qsarbench {
namespace {

using nlohmann::ordered_json;

constexpr double kAggregationTolerance = 1e-12;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex64(const std::string& s) {
  std::size_t used = 0;
  const auto v = std::stoull(s, &used, 16);
  if (used != s.size()) throw Error(ErrorCode::InvalidArgument, "bad hex value " + s);
  return v;
}

void check_emittable(const ExperimentReport& report) {
  if (report.groups.empty()) throw Error(ErrorCode::InvariantViolation, "report has no results");
  for (const auto& g : report.groups) {
    if (g.trials.empty()) throw Error(ErrorCode::InvariantViolation, "report group has no trials");
  }
  const double err = aggregation_error(report);
  if (!(err <= kAggregationTolerance)) {
    throw Error(ErrorCode::InvariantViolation, "aggregates disagree with the raw trials");
  }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string row(std::initializer_list<std::string> fields) {
  std::string line;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) line += ',';
    line += csv::escape(f);
    first = false;
  }
  return line + '\n';
}

std::string num(double v) { return csv::format_double(v); }

ModelKind parse_model(const std::string& s) {
  if (s == "classical") return ModelKind::Classical;
  if (s == "quantum") return ModelKind::Quantum;
  throw Error(ErrorCode::InvalidArgument, "unknown model '" + s + "'");
}

Protocol parse_protocol(const std::string& s) {
  if (s == "features") return Protocol::Features;
  if (s == "fractions") return Protocol::Fractions;
  if (s == "clusters") return Protocol::Clusters;
  throw Error(ErrorCode::InvalidArgument, "unknown protocol '" + s + "'");
}

}  // namespace

std::string report_to_json(const ExperimentReport& report) {
  check_emittable(report);
  ordered_json j;
  j["version"] = report.version;
  j["protocol"] = std::string(to_string(report.protocol));
  j["dataset"] = std::string(to_string(report.dataset));
  j["embedding"] = std::string(to_string(report.embedding));
  j["x_variable"] = report.x_variable;
  j["dataset_rows"] = report.dataset_rows;
  j["skipped_rows"] = report.skipped_rows;
  j["config"] = ordered_json::parse(report.config_json.empty() ? "{}" : report.config_json);
  j["warnings"] = report.warnings;
  ordered_json groups = ordered_json::array();
  for (const auto& g : report.groups) {
    ordered_json jg;
    jg["model"] = std::string(to_string(g.model));
    jg["n"] = g.n;
    jg["x_value"] = g.x_value;
    jg["mean_accuracy"] = g.mean_accuracy;
    jg["spread"] = g.spread;
    jg["resplit_means"] = g.resplit_means;
    ordered_json trials = ordered_json::array();
    for (const auto& t : g.trials) {
      ordered_json jt;
      jt["split_index"] = t.split_index;
      jt["rep_index"] = t.rep_index;
      jt["split_seed"] = hex64(t.split_seed);
      jt["rep_seed"] = hex64(t.rep_seed);
      jt["best_test_accuracy"] = t.best_test_accuracy;
      jt["best_epoch"] = t.best_epoch;
      jt["final_train_loss"] = t.final_train_loss;
      jt["test_recall_at_best"] =
          t.test_recall_at_best ? ordered_json(*t.test_recall_at_best) : ordered_json(nullptr);
      jt["batch_hash"] = hex64(t.batch_hash);
      jt["train_size"] = t.train_size;
      jt["test_size"] = t.test_size;
      jt["pca_components"] = t.pca_components;
      trials.push_back(std::move(jt));
    }
    jg["trials"] = std::move(trials);
    groups.push_back(std::move(jg));
  }
  j["groups"] = std::move(groups);
  return j.dump(2) + "\n";
}

ExperimentReport report_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::UnreadableFile, std::string("malformed report: ") + e.what());
  }
  try {
    ExperimentReport r;
    r.version = j.at("version").get<std::string>();
    r.protocol = parse_protocol(j.at("protocol").get<std::string>());
    const auto kind = parse_dataset_kind(j.at("dataset").get<std::string>());
    if (!kind) throw Error(ErrorCode::UnreadableFile, "unknown dataset in report");
    r.dataset = *kind;
    r.embedding = j.at("embedding").get<std::string>() == "IMGMOL" ? Embedding::ImgMol : Embedding::Mgfp;
    r.x_variable = j.at("x_variable").get<std::string>();
    r.dataset_rows = j.at("dataset_rows").get<std::size_t>();
    r.skipped_rows = j.at("skipped_rows").get<std::size_t>();
    r.config_json = j.at("config").dump(2);
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    for (const auto& jg : j.at("groups")) {
      GroupResult g;
      g.model = parse_model(jg.at("model").get<std::string>());
      g.n = jg.at("n").get<int>();
      g.x_value = jg.at("x_value").get<double>();
      g.mean_accuracy = jg.at("mean_accuracy").get<double>();
      g.spread = jg.at("spread").get<double>();
      g.resplit_means = jg.at("resplit_means").get<std::vector<double>>();
      for (const auto& jt : jg.at("trials")) {
        TrialResult t;
        t.model = g.model;
        t.n = g.n;
        t.x_value = g.x_value;
        t.split_index = jt.at("split_index").get<int>();
        t.rep_index = jt.at("rep_index").get<int>();
        t.split_seed = parse_hex64(jt.at("split_seed").get<std::string>());
        t.rep_seed = parse_hex64(jt.at("rep_seed").get<std::string>());
        t.best_test_accuracy = jt.at("best_test_accuracy").get<double>();
        t.best_epoch = jt.at("best_epoch").get<int>();
        t.final_train_loss = jt.at("final_train_loss").get<double>();
        if (!jt.at("test_recall_at_best").is_null()) {
          t.test_recall_at_best = jt.at("test_recall_at_best").get<double>();
        }
        t.batch_hash = parse_hex64(jt.at("batch_hash").get<std::string>());
        t.train_size = jt.at("train_size").get<std::size_t>();
        t.test_size = jt.at("test_size").get<std::size_t>();
        t.pca_components = jt.at("pca_components").get<std::size_t>();
        g.trials.push_back(t);
      }
      r.groups.push_back(std::move(g));
    }
    return r;
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::UnreadableFile, std::string("malformed report: ") + e.what());
  }
}

ExperimentReport load_report(const std::filesystem::path& results_json) {
  std::ifstream in(results_json, std::ios::binary);
  if (!in) throw Error(ErrorCode::UnreadableFile, "cannot read " + results_json.string());
  std::ostringstream text;
  text << in.rdbuf();
  return report_from_json(text.str());
}

std::string plot_table_csv(const ExperimentReport& report) {
  check_emittable(report);
  std::string out =
      row({"dataset", "embedding", "n", "model", "x_variable", "x_value", "mean", "spread"});
  for (const auto& g : report.groups) {
    out += row({std::string(to_string(report.dataset)), std::string(to_string(report.embedding)),
                std::to_string(g.n), std::string(to_string(g.model)), report.x_variable,
                num(g.x_value), num(g.mean_accuracy), num(g.spread)});
  }
  return out;
}

std::string partitions_csv(const ExperimentReport& report) {
  check_emittable(report);
  std::string out = row({"dataset", "embedding", "n", "model", "x_variable", "x_value",
                         "split_index", "split_seed", "reps", "mean_accuracy", "mean_recall"});
  for (const auto& g : report.groups) {
    std::map<int, std::vector<const TrialResult*>> by_split;
    for (const auto& t : g.trials) by_split[t.split_index].push_back(&t);
    for (const auto& [split, trials] : by_split) {
      std::vector<double> accs;
      std::vector<double> recalls;
      for (const TrialResult* t : trials) {
        accs.push_back(t->best_test_accuracy);
        if (t->test_recall_at_best) recalls.push_back(*t->test_recall_at_best);
      }
      out += row({std::string(to_string(report.dataset)),
                  std::string(to_string(report.embedding)), std::to_string(g.n),
                  std::string(to_string(g.model)), report.x_variable, num(g.x_value),
                  std::to_string(split), hex64(trials.front()->split_seed),
                  std::to_string(trials.size()), num(mean(accs)),
                  recalls.empty() ? std::string() : num(mean(recalls))});
    }
  }
  return out;
}

ReportFiles emit_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  check_emittable(report);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
  ReportFiles files{dir / "results.json", dir / "plot_table.csv", dir / "partitions.csv"};
  write_file(files.results, report_to_json(report));
  write_file(files.plot_table, plot_table_csv(report));
  write_file(files.partitions, partitions_csv(report));
  return files;
}

}  // namespace qsarbench
