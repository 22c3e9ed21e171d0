// SPDX-License-Identifier: Apache-2.0
//
// qsarbench command line: experiment protocols plus module-level utilities.
// Exit codes: 0 success, 1 config error, 2 data error, 3 invariant violation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsarbench/clustering.hpp"
#include "qsarbench/csv.hpp"
#include "qsarbench/dataset.hpp"
#include "qsarbench/error.hpp"
#include "qsarbench/experiment.hpp"
#include "qsarbench/fingerprint.hpp"
#include "qsarbench/kernels.hpp"
#include "qsarbench/pca.hpp"
#include "qsarbench/report.hpp"
#include "qsarbench/smiles.hpp"

namespace {

using namespace qsarbench;

constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitInvariant = 3;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidArgument:
      return kExitConfig;
    case ErrorCode::InvariantViolation:
      return kExitInvariant;
    default:
      return kExitData;
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  return out;
}

int run_experiment_command(Protocol protocol, const std::string& config_path,
                           const std::string& output_dir, bool quiet) {
  ExperimentConfig config = load_config(config_path);
  if (!output_dir.empty()) config.output_dir = output_dir;
  std::size_t last_percent = 101;
  const ProgressFn progress = [&](std::size_t done, std::size_t total) {
    if (quiet) return;
    const std::size_t percent = done * 100 / total;
    if (percent != last_percent) {
      std::fprintf(stderr, "\r[%s] %zu/%zu trials (%zu%%)", std::string(to_string(protocol)).c_str(),
                   done, total, percent);
      last_percent = percent;
    }
    if (done == total) std::fprintf(stderr, "\n");
  };
  if (!quiet) {
    std::fprintf(stderr, "kernels: %s, workers: %d\n", std::string(kernels::active().name).c_str(),
                 effective_workers(config));
  }
  const Dataset data = prepare_dataset(config);
  const ExperimentReport report = run_experiment(data, config, protocol, progress);
  for (const auto& w : report.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  const ReportFiles files = emit_report(report, config.output_dir);
  std::cout << plot_table_csv(report);
  if (!quiet) {
    std::fprintf(stderr, "wrote %s, %s, %s\n", files.results.string().c_str(),
                 files.plot_table.string().c_str(), files.partitions.string().c_str());
  }
  return 0;
}

int fingerprint_command(const std::string& input, const std::string& smiles_col, int radius,
                        std::size_t bits, const std::string& output) {
  const csv::Table table = csv::read(input);
  const auto col = table.column(smiles_col);
  if (!col) throw Error(ErrorCode::MissingColumn, "no column '" + smiles_col + "' in " + input);
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "radius must be >= 0");
  auto out = open_output(output);
  out << "row,fingerprint\n";
  std::size_t skipped = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& fields = table.rows[r];
    try {
      if (*col >= fields.size()) throw Error(ErrorCode::InvalidSyntax, "short row");
      const Fingerprint fp = morgan_fingerprint(parse_smiles(fields[*col]), radius, bits);
      out << r << ',' << fp.to_hex() << '\n';
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidArgument) throw;
      ++skipped;
      std::fprintf(stderr, "row %zu skipped: %s\n", r, e.what());
    }
  }
  std::fprintf(stderr, "%zu rows, %zu skipped\n", table.rows.size(), skipped);
  return 0;
}

Matrix read_numeric_csv(const std::string& path) {
  const csv::Table table = csv::read(path);
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (table.header[c] != "id") cols.push_back(c);
  }
  Matrix m(table.rows.size(), cols.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != table.header.size()) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(r) + " is ragged");
    }
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const auto v = csv::parse_double(table.rows[r][cols[j]]);
      if (!v) {
        throw Error(ErrorCode::DimensionMismatch,
                    "non-numeric value at row " + std::to_string(r) + ", column " +
                        table.header[cols[j]]);
      }
      m(r, j) = *v;
    }
  }
  return m;
}

std::vector<std::size_t> read_index_file(const std::string& path, std::size_t limit) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::UnreadableFile, "cannot read " + path);
  std::vector<std::size_t> indices;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto v = csv::parse_double(line);
    if (!v || *v < 0 || *v != static_cast<double>(static_cast<std::size_t>(*v)) ||
        static_cast<std::size_t>(*v) >= limit) {
      throw Error(ErrorCode::DimensionMismatch, "bad row index '" + line + "' in " + path);
    }
    indices.push_back(static_cast<std::size_t>(*v));
  }
  return indices;
}

int pca_command(const std::string& input, std::size_t k, const std::string& fit_rows,
                const std::string& output, const std::string& projected) {
  const Matrix x = read_numeric_csv(input);
  Matrix fit = x;
  if (!fit_rows.empty()) fit = x.select_rows(read_index_file(fit_rows, x.rows()));
  const PcaModel model = fit_pca(fit, k);
  write_pca_csv(model, output);
  if (!projected.empty()) {
    const Matrix scores = transform(model, x);
    auto out = open_output(projected);
    for (std::size_t j = 0; j < scores.cols(); ++j) out << (j ? "," : "") << "pc" << j;
    out << '\n';
    for (std::size_t r = 0; r < scores.rows(); ++r) {
      for (std::size_t j = 0; j < scores.cols(); ++j) {
        out << (j ? "," : "") << csv::format_double(scores(r, j));
      }
      out << '\n';
    }
  }
  return 0;
}

int cluster_command(const std::string& input, double cutoff, const std::string& output) {
  const csv::Table table = csv::read(input);
  const auto col = table.column("fingerprint");
  if (!col) throw Error(ErrorCode::MissingColumn, "no 'fingerprint' column in " + input);
  std::vector<Fingerprint> fps;
  for (const auto& fields : table.rows) {
    if (*col >= fields.size()) throw Error(ErrorCode::DimensionMismatch, "short fingerprint row");
    fps.push_back(Fingerprint::from_hex(fields[*col]));
  }
  const Clustering clustering = butina_cluster(fps, cutoff);
  std::vector<std::pair<std::size_t, bool>> assignment(fps.size());
  for (std::size_t c = 0; c < clustering.clusters.size(); ++c) {
    const auto& members = clustering.clusters[c];
    for (std::size_t i = 0; i < members.size(); ++i) assignment[members[i]] = {c, i == 0};
  }
  auto out = open_output(output);
  out << "index,cluster_id,is_centroid\n";
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    out << i << ',' << assignment[i].first << ',' << (assignment[i].second ? 1 : 0) << '\n';
  }
  std::fprintf(stderr, "%zu items, %zu clusters\n", fps.size(), clustering.clusters.size());
  return 0;
}

int ingest_command(const std::string& dataset, const std::string& schema_name,
                   const std::string& smiles_col, const std::string& label_col,
                   const std::string& id_col, bool do_undersample, std::uint64_t seed,
                   const std::string& output) {
  const auto kind = parse_dataset_kind(schema_name);
  if (!kind) throw Error(ErrorCode::ConfigError, "unknown schema preset '" + schema_name + "'");
  Schema schema = preset_schema(*kind);
  if (!smiles_col.empty()) schema.smiles_column = smiles_col;
  if (!label_col.empty()) schema.label_column = label_col;
  if (!id_col.empty()) schema.id_column = id_col;
  Dataset data = load_dataset(dataset, schema);
  if (do_undersample) data = undersample(data, seed);
  std::cout << "rows," << data.size() << "\nskipped," << data.skipped_rows << "\nlabel_0,"
            << data.count_label(0) << "\nlabel_1," << data.count_label(1) << '\n';
  if (!output.empty()) {
    auto out = open_output(output);
    out << "id,smiles,label\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
      out << csv::escape(data.ids[i]) << ',' << csv::escape(data.smiles[i]) << ','
          << data.labels[i] << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QSAR benchmark: classical perceptron vs. parameterized quantum circuit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  bool quiet = false;
  auto add_protocol = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON experiment config")->required();
    sub->add_option("--output-dir", output_dir, "Override the config's output_dir");
    sub->add_flag("--quiet", quiet, "No progress output");
    return sub;
  };
  auto* run = add_protocol("run", "Feature sweep over n_list (resplits x reps x epochs)");
  auto* fractions = add_protocol("fractions", "Training-fraction sweep");
  auto* clusters = add_protocol("clusters", "Cluster-sampling protocol over cluster_k");

  std::string input, output, smiles_col = "smiles";
  int radius = kDefaultRadius;
  std::size_t bits = kDefaultBits;
  auto* fp = app.add_subcommand("fingerprint", "Hex-encoded Morgan fingerprint per row");
  fp->add_option("--input", input)->required();
  fp->add_option("--smiles-col", smiles_col);
  fp->add_option("--radius", radius);
  fp->add_option("--bits", bits);
  fp->add_option("--output", output)->required();

  std::size_t k = 0;
  std::string fit_rows, projected;
  auto* pca = app.add_subcommand("pca", "Fit PCA and write the model CSV");
  pca->add_option("--input", input, "Numeric CSV with header (an 'id' column is ignored)")->required();
  pca->add_option("--k", k)->required();
  pca->add_option("--fit-rows", fit_rows, "File with one 0-based row index per line");
  pca->add_option("--output", output)->required();
  pca->add_option("--projected", projected, "Also write projected scores of every row");

  double cutoff = kDefaultCutoff;
  auto* cluster = app.add_subcommand("cluster", "Butina clustering of fingerprint CSV");
  cluster->add_option("--fingerprints", input, "CSV with a 'fingerprint' hex column")->required();
  cluster->add_option("--cutoff", cutoff);
  cluster->add_option("--output", output)->required();

  std::string dataset, schema = "BACE", label_col, id_col, ingest_smiles;
  bool do_undersample = false;
  std::uint64_t seed = 0;
  auto* ingest = app.add_subcommand("ingest", "Load a dataset CSV and report its contents");
  ingest->add_option("--dataset", dataset)->required();
  ingest->add_option("--schema", schema, "BACE, BBBP, HIV or custom");
  ingest->add_option("--smiles-col", ingest_smiles);
  ingest->add_option("--label-col", label_col);
  ingest->add_option("--id-col", id_col);
  ingest->add_flag("--undersample", do_undersample);
  ingest->add_option("--seed", seed);
  ingest->add_option("--output", output, "Write the cleaned id,smiles,label table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return run_experiment_command(Protocol::Features, config_path, output_dir, quiet);
    if (*fractions) return run_experiment_command(Protocol::Fractions, config_path, output_dir, quiet);
    if (*clusters) return run_experiment_command(Protocol::Clusters, config_path, output_dir, quiet);
    if (*fp) return fingerprint_command(input, smiles_col, radius, bits, output);
    if (*pca) return pca_command(input, k, fit_rows, output, projected);
    if (*cluster) return cluster_command(input, cutoff, output);
    if (*ingest) {
      return ingest_command(dataset, schema, ingest_smiles, label_col, id_col, do_undersample, seed,
                            output);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInvariant;
  }
  return 0;
}
