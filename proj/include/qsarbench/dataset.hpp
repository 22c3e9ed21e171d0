// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsarbench/fingerprint.hpp"
#include "qsarbench/matrix.hpp"

namespace qsarbench {

enum class DatasetKind { Bace, Bbbp, Hiv, Custom };

std::string_view to_string(DatasetKind kind) noexcept;
std::optional<DatasetKind> parse_dataset_kind(std::string_view name) noexcept;

/// Column names inside a dataset CSV. An empty id column means "use the
/// 0-based data row number".
struct Schema {
  std::string smiles_column;
  std::string label_column;
  std::string id_column;
};

/// BACE: mol/Class/CID, BBBP: smiles/p_np/num, HIV: smiles/HIV_active/(row).
Schema preset_schema(DatasetKind kind);

/// Whether the experiment protocol balances classes for this dataset.
bool undersampled_by_default(DatasetKind kind) noexcept;

struct Dataset {
  std::vector<std::string> ids;
  std::vector<std::string> smiles;             // empty when features came first
  std::optional<Matrix> features;              // rows x M
  std::vector<Fingerprint> fingerprints;       // filled by fingerprint embedding
  std::vector<int> labels;                     // 0 / 1
  std::size_t skipped_rows = 0;
  std::vector<std::string> skipped_ids;

  std::size_t size() const noexcept { return labels.size(); }

  /// Rows at `indices`, in order; skip bookkeeping is carried over.
  Dataset subset(std::span<const std::size_t> indices) const;

  std::size_t count_label(int label) const noexcept;

  /// Throws Error(InvariantViolation) on ragged sequences or non-binary labels.
  void validate() const;
};

/// Label text to {0,1}: numeric 0/1 (also "0.0"/"1.0"), true/false, and the
/// DTP screen classes (CI -> 0; CM, CA -> 1).
std::optional<int> coerce_label(std::string_view text) noexcept;

/// Loads a dataset CSV. Rows whose SMILES fail to parse are counted in
/// skipped_rows and dropped.
Dataset load_dataset(const std::filesystem::path& path, const Schema& schema);

inline constexpr std::size_t kEmbeddingDim = 512;

/// Reads `id,e0,...,e511` and returns rows aligned to `ids`. Ids listed in
/// `ignored` (e.g. rows skipped at load time) may appear and are dropped.
Matrix load_embeddings(const std::filesystem::path& path, std::span<const std::string> ids,
                       const std::set<std::string>& ignored = {},
                       std::size_t expected_dim = kEmbeddingDim);

/// Sets `fingerprints` and `features` (0/1 bits) from the SMILES column.
void embed_fingerprints(Dataset& data, int radius = kDefaultRadius,
                        std::size_t nbits = kDefaultBits);

/// Randomly drops majority-class rows until both classes have the minority
/// count. Selected rows keep their original relative order.
Dataset undersample(const Dataset& data, std::uint64_t seed);

struct SplitPlan {
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
  std::uint64_t seed = 0;
  double train_fraction = 0.8;

  friend bool operator==(const SplitPlan&, const SplitPlan&) = default;
};

inline constexpr double kTrainFraction = 0.8;

/// Unstratified random split; |train| = round(0.8 * size).
SplitPlan make_split(std::size_t size, std::uint64_t seed, double train_fraction = kTrainFraction);

/// Keeps round(fraction * |train|) random training indices; test untouched.
SplitPlan subsample_fraction(const SplitPlan& plan, double fraction, std::uint64_t seed);

}  // namespace qsarbench
