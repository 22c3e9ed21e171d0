// SPDX-License-Identifier: Apache-2.0
#include "qsarbench/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>

#include "qsarbench/clustering.hpp"
#include "qsarbench/csv.hpp"
#include "qsarbench/error.hpp"
#include "qsarbench/metrics.hpp"
#include "qsarbench/mlp.hpp"
#include "qsarbench/pca.hpp"
#include "qsarbench/rng.hpp"
#include "qsarbench/training.hpp"

namespace qsarbench {
namespace {

std::string strip_code(const Error& e) {
  const std::string what = e.what();
  const std::string prefix = std::string(to_string(e.code())) + ": ";
  return what.starts_with(prefix) ? what.substr(prefix.size()) : what;
}

[[noreturn]] void rethrow_with_context(const std::string& context) {
  try {
    throw;
  } catch (const Error& e) {
    throw Error(e.code(), context + ": " + strip_code(e));
  } catch (const std::exception& e) {
    throw Error(ErrorCode::InvariantViolation, context + ": " + e.what());
  }
}

/// Runs fn(0..count-1) on up to `workers` threads. The exception of the
/// lowest failing index is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  const std::size_t threads =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(workers, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// One data partition at one x value, with features prepared for every n.
struct Partition {
  int split_index = 0;
  std::uint64_t seed = 0;
  double x_value = 0.0;
  std::vector<TrainingData> per_n;  // parallel to config.n_list
  std::size_t pca_components = 0;
};

struct Task {
  std::size_t partition = 0;
  std::size_t n_slot = 0;
  int rep = 0;
};

std::string x_variable_for(Protocol p) {
  switch (p) {
    case Protocol::Features: return "n";
    case Protocol::Fractions: return "fraction";
    case Protocol::Clusters: return "k";
  }
  return "n";
}

std::string describe(const ExperimentConfig& config, int split, std::uint64_t seed) {
  return "dataset " + std::string(to_string(config.dataset)) + ", split " +
         std::to_string(split) + " (seed " + std::to_string(seed) + ")";
}

}  // namespace

std::string_view to_string(Embedding e) noexcept { return e == Embedding::Mgfp ? "MGFP" : "IMGMOL"; }

std::string_view to_string(Protocol p) noexcept {
  switch (p) {
    case Protocol::Features: return "features";
    case Protocol::Fractions: return "fractions";
    case Protocol::Clusters: return "clusters";
  }
  return "features";
}

std::string_view to_string(ModelKind m) noexcept {
  return m == ModelKind::Classical ? "classical" : "quantum";
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); };
  if (dataset_path.empty()) fail("dataset_path is required");
  if (embedding == Embedding::ImgMol && embedding_path.empty()) {
    fail("embedding_path is required for IMGMOL");
  }
  if (n_list.empty()) fail("n_list must not be empty");
  if (!std::has_single_bit(nbits) || nbits < 2) fail("nbits must be a power of two >= 2");
  const std::size_t width = embedding == Embedding::Mgfp ? nbits : kEmbeddingDim;
  for (int n : n_list) {
    if (n < 1 || n > 20) fail("n_list entries must lie in [1, 20]");
    if ((std::size_t{1} << n) > width) {
      fail("2^" + std::to_string(n) + " features exceed the embedding width " +
           std::to_string(width));
    }
  }
  if (std::set<int>(n_list.begin(), n_list.end()).size() != n_list.size()) {
    fail("n_list entries must be distinct");
  }
  if (reps < 1) fail("reps must be >= 1");
  if (resplits < 1) fail("resplits must be >= 1");
  if (optimizer.epochs < 1) fail("epochs must be >= 1");
  if (optimizer.batch_size < 1) fail("batch_size must be >= 1");
  if (!(optimizer.learning_rate > 0.0)) fail("learning_rate must be > 0");
  if (!(optimizer.beta1 >= 0.0 && optimizer.beta1 < 1.0) ||
      !(optimizer.beta2 >= 0.0 && optimizer.beta2 < 1.0)) {
    fail("Adam betas must lie in [0, 1)");
  }
  if (!(optimizer.epsilon > 0.0)) fail("epsilon must be > 0");
  for (double f : fractions) {
    if (!(f > 0.0 && f <= 1.0)) fail("fractions must lie in (0, 1]");
  }
  for (int k : cluster_k) {
    if (k < 1 || k > kMaxPerCluster) fail("cluster_k entries must lie in 1..7");
  }
  if (!(cluster_cutoff > 0.0 && cluster_cutoff <= 1.0)) fail("cluster_cutoff must lie in (0, 1]");
  if (cluster_min_size < 1) fail("cluster_min_size must be >= 1");
  if (radius < 0) fail("radius must be >= 0");
  if (workers < 0) fail("workers must be >= 0");
}

int effective_workers(const ExperimentConfig& config) {
  if (const char* env = std::getenv("QSARBENCH_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  if (config.workers > 0) return config.workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::uint64_t split_seed(std::uint64_t master, int split_index) noexcept {
  return derive_seed(master, "split", static_cast<std::uint64_t>(split_index));
}

std::uint64_t rep_seed(std::uint64_t split, int rep_index) noexcept {
  return derive_seed(split, "rep", static_cast<std::uint64_t>(rep_index));
}

Dataset prepare_dataset(const ExperimentConfig& config) {
  config.validate();
  Dataset data = load_dataset(config.dataset_path, config.schema.value_or(preset_schema(config.dataset)));
  if (config.embedding == Embedding::Mgfp) {
    embed_fingerprints(data, config.radius, config.nbits);
  } else {
    const std::set<std::string> ignored(data.skipped_ids.begin(), data.skipped_ids.end());
    data.features = load_embeddings(config.embedding_path, data.ids, ignored);
  }
  data.validate();
  return data;
}

ExperimentReport run_experiment(const Dataset& data, const ExperimentConfig& config,
                                Protocol protocol, const ProgressFn& progress) {
  config.validate();
  if (!data.features) throw Error(ErrorCode::InvalidArgument, "dataset has no feature matrix");
  if (protocol == Protocol::Clusters && data.fingerprints.size() != data.size()) {
    throw Error(ErrorCode::ConfigError, "cluster protocol requires the MGFP embedding");
  }
  if (protocol == Protocol::Fractions && config.fractions.empty()) {
    throw Error(ErrorCode::ConfigError, "fraction sweep needs at least one fraction");
  }
  if (protocol == Protocol::Clusters && config.cluster_k.empty()) {
    throw Error(ErrorCode::ConfigError, "cluster protocol needs at least one k");
  }
  const std::size_t width = data.features->cols();
  int max_n = 0;
  for (int n : config.n_list) {
    if ((std::size_t{1} << n) > width) {
      throw Error(ErrorCode::DimensionMismatch, "2^" + std::to_string(n) +
                                                    " exceeds the feature width " +
                                                    std::to_string(width));
    }
    max_n = std::max(max_n, n);
  }
  const std::size_t max_features = std::size_t{1} << max_n;
  const int workers = effective_workers(config);

  ExperimentReport report;
  report.protocol = protocol;
  report.dataset = config.dataset;
  report.embedding = config.embedding;
  report.x_variable = x_variable_for(protocol);
  report.config_json = config_to_json(config);
  report.dataset_rows = data.size();
  report.skipped_rows = data.skipped_rows;

  std::vector<double> x_values;
  switch (protocol) {
    case Protocol::Features: x_values = {0.0}; break;  // x is n itself
    case Protocol::Fractions: x_values = config.fractions; break;
    case Protocol::Clusters:
      for (int k : config.cluster_k) x_values.push_back(static_cast<double>(k));
      break;
  }

  // Partitions: one per (split, x). PCA is fitted on the training rows only.
  const std::size_t partition_count = static_cast<std::size_t>(config.resplits) * x_values.size();
  std::vector<Partition> partitions(partition_count);
  std::vector<std::string> partition_warnings(partition_count);
  parallel_for(partition_count, workers, [&](std::size_t index) {
    const int s = static_cast<int>(index / x_values.size());
    const double x = x_values[index % x_values.size()];
    const std::uint64_t seed = split_seed(config.master_seed, s);
    try {
      const Dataset base =
          config.undersampling() ? undersample(data, derive_seed(seed, "undersample")) : data;
      SplitPlan plan;
      switch (protocol) {
        case Protocol::Features: plan = make_split(base.size(), seed); break;
        case Protocol::Fractions:
          plan = subsample_fraction(make_split(base.size(), seed), x,
                                    derive_seed(seed, "fraction"));
          break;
        case Protocol::Clusters: {
          const Clustering clustering = butina_cluster(base.fingerprints, config.cluster_cutoff);
          plan = cluster_training_plan(clustering, config.cluster_min_size, static_cast<int>(x),
                                       derive_seed(seed, "cluster-sample"));
          break;
        }
      }
      if (plan.train_indices.empty()) throw Error(ErrorCode::EmptyTrainSet, "no training rows");
      const Matrix train_rows = base.features->select_rows(plan.train_indices);
      if (train_rows.rows() < 2) {
        throw Error(ErrorCode::DegenerateInput,
                    "PCA needs at least two training rows, got " +
                        std::to_string(train_rows.rows()));
      }
      const std::size_t fit_k = std::min({max_features, train_rows.rows() - 1, width});
      const PcaModel pca = fit_pca(train_rows, fit_k);
      const Matrix projected = transform(pca, *base.features);

      Partition& part = partitions[index];
      part.split_index = s;
      part.seed = seed;
      part.x_value = x;
      part.pca_components = fit_k;
      if (fit_k < max_features) {
        partition_warnings[index] =
            "split " + std::to_string(s) + ", " + report.x_variable + "=" + csv::format_double(x) +
            ": PCA rank limited to " + std::to_string(fit_k) + " axes by " +
            std::to_string(train_rows.rows()) + " training rows; trailing features are zero";
      }
      for (int n : config.n_list) {
        const Matrix features = projected.leading_columns(std::size_t{1} << n);
        part.per_n.push_back(make_training_data(features, base.labels, plan));
      }
    } catch (...) {
      rethrow_with_context(describe(config, s, seed));
    }
  });
  for (const auto& w : partition_warnings) {
    if (!w.empty()) report.warnings.push_back(w);
  }

  std::vector<Task> tasks;
  for (std::size_t p = 0; p < partitions.size(); ++p) {
    for (int r = 0; r < config.reps; ++r) {
      for (std::size_t slot = 0; slot < config.n_list.size(); ++slot) tasks.push_back({p, slot, r});
    }
  }

  std::vector<std::array<TrialResult, 2>> results(tasks.size());
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  parallel_for(tasks.size(), workers, [&](std::size_t t) {
    const Task& task = tasks[t];
    const Partition& part = partitions[task.partition];
    const int n = config.n_list[task.n_slot];
    const TrainingData& train = part.per_n[task.n_slot];
    const std::uint64_t rseed = rep_seed(part.seed, task.rep);
    try {
      const BatchSchedule schedule(train.train_x.rows(), config.optimizer.batch_size,
                                   config.optimizer.epochs, derive_seed(rseed, "batches"));
      const MlpTrainResult classical =
          train_mlp(train, config.optimizer, derive_seed(rseed, "init/classical"), schedule);
      const QuantumTrainResult quantum = train_quantum(
          train, config.optimizer, derive_seed(rseed, "init/quantum"), schedule, config.gradient);
      if (classical.trace.batch_hash != quantum.trace.batch_hash) {
        throw Error(ErrorCode::InvariantViolation, "classifiers consumed different batches");
      }
      if (train.train_x.cols() != (std::size_t{1} << n) ||
          classical.params.inputs != train.train_x.cols()) {
        throw Error(ErrorCode::InvariantViolation, "feature count differs from 2^n");
      }
      const double x = protocol == Protocol::Features ? static_cast<double>(n) : part.x_value;
      auto fill = [&](ModelKind kind, const TrainTrace& trace) {
        TrialResult r;
        r.model = kind;
        r.n = n;
        r.x_value = x;
        r.split_index = part.split_index;
        r.rep_index = task.rep;
        r.split_seed = part.seed;
        r.rep_seed = rseed;
        r.best_epoch = trace.best_epoch();
        r.best_test_accuracy = trace.best().test_accuracy;
        r.test_recall_at_best = trace.best().test_recall;
        r.final_train_loss = trace.epochs.back().train_loss;
        r.batch_hash = trace.batch_hash;
        r.train_size = train.train_x.rows();
        r.test_size = train.test_x.rows();
        r.pca_components = part.pca_components;
        return r;
      };
      results[t] = {fill(ModelKind::Classical, classical.trace),
                    fill(ModelKind::Quantum, quantum.trace)};
    } catch (...) {
      rethrow_with_context(describe(config, part.split_index, part.seed) + ", n=" +
                           std::to_string(n) + ", rep " + std::to_string(task.rep));
    }
    const std::size_t finished = done.fetch_add(1) + 1;
    if (progress) {
      std::lock_guard lock(progress_mutex);
      progress(finished, tasks.size());
    }
  });

  // Group in canonical order: (x, n, model), trials by (split, rep).
  std::map<std::tuple<double, int, int>, GroupResult> groups;
  for (const auto& pair : results) {
    for (const TrialResult& r : pair) {
      auto& g = groups[{r.x_value, r.n, static_cast<int>(r.model)}];
      g.model = r.model;
      g.n = r.n;
      g.x_value = r.x_value;
      g.trials.push_back(r);
    }
  }
  for (auto& [key, g] : groups) {
    std::stable_sort(g.trials.begin(), g.trials.end(), [](const TrialResult& a, const TrialResult& b) {
      return std::tie(a.split_index, a.rep_index) < std::tie(b.split_index, b.rep_index);
    });
    std::vector<std::vector<double>> by_split(static_cast<std::size_t>(config.resplits));
    for (const auto& r : g.trials) {
      by_split[static_cast<std::size_t>(r.split_index)].push_back(r.best_test_accuracy);
    }
    for (const auto& accs : by_split) g.resplit_means.push_back(mean(accs));
    g.mean_accuracy = mean(g.resplit_means);
    g.spread = stddev(g.resplit_means);
    report.groups.push_back(std::move(g));
  }
  return report;
}

ExperimentReport run_protocol(const ExperimentConfig& config, const ProgressFn& progress) {
  return run_experiment(prepare_dataset(config), config, Protocol::Features, progress);
}

ExperimentReport run_fraction_sweep(const ExperimentConfig& config, const ProgressFn& progress) {
  return run_experiment(prepare_dataset(config), config, Protocol::Fractions, progress);
}

ExperimentReport run_cluster_protocol(const ExperimentConfig& config, const ProgressFn& progress) {
  if (config.embedding != Embedding::Mgfp) {
    throw Error(ErrorCode::ConfigError, "cluster protocol requires the MGFP embedding");
  }
  return run_experiment(prepare_dataset(config), config, Protocol::Clusters, progress);
}

double aggregation_error(const ExperimentReport& report) {
  double worst = 0.0;
  for (const auto& g : report.groups) {
    if (g.trials.empty()) return std::numeric_limits<double>::infinity();
    std::map<int, std::vector<double>> by_split;
    for (const auto& r : g.trials) by_split[r.split_index].push_back(r.best_test_accuracy);
    std::vector<double> means;
    for (const auto& [s, accs] : by_split) means.push_back(mean(accs));
    worst = std::max(worst, std::abs(mean(means) - g.mean_accuracy));
    worst = std::max(worst, std::abs(stddev(means) - g.spread));
    if (means.size() != g.resplit_means.size()) return std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < means.size(); ++i) {
      worst = std::max(worst, std::abs(means[i] - g.resplit_means[i]));
    }
  }
  return worst;
}

}  // namespace qsarbench
