// SPDX-License-Identifier: Apache-2.0
//
// Benchmark protocols. Every protocol runs `resplits` data partitions; inside
// each partition both classifiers are trained `reps` times from shared seeds and
// batch schedules, and the best test accuracy over the epochs is kept.
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsarbench/dataset.hpp"
#include "qsarbench/optimizer.hpp"
#include "qsarbench/quantum_model.hpp"

namespace qsarbench {

inline constexpr std::string_view kToolkitVersion = "0.1.0";

enum class Embedding { Mgfp, ImgMol };
enum class Protocol { Features, Fractions, Clusters };
enum class ModelKind { Classical, Quantum };

std::string_view to_string(Embedding e) noexcept;
std::string_view to_string(Protocol p) noexcept;
std::string_view to_string(ModelKind m) noexcept;

struct ExperimentConfig {
  DatasetKind dataset = DatasetKind::Bace;
  std::filesystem::path dataset_path;
  std::optional<Schema> schema;  // preset for the dataset kind when absent
  Embedding embedding = Embedding::Mgfp;
  std::filesystem::path embedding_path;  // IMGMOL only
  std::vector<int> n_list{2, 3, 4, 8};
  int reps = 20;
  int resplits = 5;
  OptimizerConfig optimizer;  // epochs live here (default 100)
  std::vector<double> fractions{0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<int> cluster_k{1, 2, 3, 4, 5, 6, 7};
  double cluster_cutoff = 0.65;
  std::size_t cluster_min_size = 21;
  int radius = 2;
  std::size_t nbits = 512;
  std::optional<bool> undersample;  // dataset default when absent
  GradientMethod gradient = GradientMethod::Adjoint;
  std::uint64_t master_seed = 0;
  int workers = 0;  // 0 = hardware concurrency
  std::filesystem::path output_dir = "results";

  bool undersampling() const noexcept {
    return undersample.value_or(undersampled_by_default(dataset));
  }
  /// Throws Error(ConfigError) on any out-of-range field.
  void validate() const;
};

/// Reads a JSON config; relative paths resolve against the file's directory.
/// Unknown keys are rejected.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(std::string_view json_text,
                              const std::filesystem::path& base_dir = {});
/// Canonical JSON echo of every field (stable key order).
std::string config_to_json(const ExperimentConfig& config);

/// Worker count after applying QSARBENCH_WORKERS.
int effective_workers(const ExperimentConfig& config);

struct TrialResult {
  ModelKind model = ModelKind::Classical;
  int n = 0;
  double x_value = 0.0;  // n, fraction or k depending on the protocol
  int split_index = 0;
  int rep_index = 0;
  std::uint64_t split_seed = 0;
  std::uint64_t rep_seed = 0;
  double best_test_accuracy = 0.0;
  int best_epoch = 0;
  double final_train_loss = 0.0;
  std::optional<double> test_recall_at_best;  // absent when the test set has no positives
  std::uint64_t batch_hash = 0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::size_t pca_components = 0;  // fitted axes; < 2^n means zero padding
};

/// Aggregate for one (model, n, x) cell.
struct GroupResult {
  ModelKind model = ModelKind::Classical;
  int n = 0;
  double x_value = 0.0;
  double mean_accuracy = 0.0;
  double spread = 0.0;                 // population std of the resplit means
  std::vector<double> resplit_means;   // by split index
  std::vector<TrialResult> trials;     // canonical order: split, rep
};

struct ExperimentReport {
  Protocol protocol = Protocol::Features;
  DatasetKind dataset = DatasetKind::Bace;
  Embedding embedding = Embedding::Mgfp;
  std::string x_variable;  // "n", "fraction" or "k"
  std::string config_json;
  std::string version{kToolkitVersion};
  std::size_t dataset_rows = 0;  // after skipping, before undersampling
  std::size_t skipped_rows = 0;
  std::vector<std::string> warnings;
  std::vector<GroupResult> groups;  // sorted by (x, n, model)
};

/// Loads the dataset and attaches the configured embedding.
Dataset prepare_dataset(const ExperimentConfig& config);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Runs `protocol` on an already-prepared dataset.
ExperimentReport run_experiment(const Dataset& data, const ExperimentConfig& config,
                                Protocol protocol, const ProgressFn& progress = {});

ExperimentReport run_protocol(const ExperimentConfig& config, const ProgressFn& progress = {});
ExperimentReport run_fraction_sweep(const ExperimentConfig& config,
                                    const ProgressFn& progress = {});
ExperimentReport run_cluster_protocol(const ExperimentConfig& config,
                                      const ProgressFn& progress = {});

/// Recomputes mean and spread of every group from its raw trials and
/// returns the largest absolute deviation from the stored aggregates.
double aggregation_error(const ExperimentReport& report);

/// Seed hierarchy: master -> split s -> rep r. Reps do not depend on n, so the
/// feature sweep compares models on identical partitions and batches.
std::uint64_t split_seed(std::uint64_t master, int split_index) noexcept;
std::uint64_t rep_seed(std::uint64_t split, int rep_index) noexcept;

}  // namespace qsarbench
