// SPDX-License-Identifier: Apache-2.0
#include "qsarbench/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "qsarbench/csv.hpp"
#include "qsarbench/error.hpp"
#include "qsarbench/rng.hpp"
#include "qsarbench/smiles.hpp"

namespace qsarbench {

std::string_view to_string(DatasetKind kind) noexcept {
  switch (kind) {
    case DatasetKind::Bace: return "BACE";
    case DatasetKind::Bbbp: return "BBBP";
    case DatasetKind::Hiv: return "HIV";
    case DatasetKind::Custom: return "CUSTOM";
  }
  return "CUSTOM";
}

std::optional<DatasetKind> parse_dataset_kind(std::string_view name) noexcept {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "BACE") return DatasetKind::Bace;
  if (upper == "BBBP") return DatasetKind::Bbbp;
  if (upper == "HIV") return DatasetKind::Hiv;
  if (upper == "CUSTOM") return DatasetKind::Custom;
  return std::nullopt;
}

Schema preset_schema(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::Bace: return {"mol", "Class", "CID"};
    case DatasetKind::Bbbp: return {"smiles", "p_np", "num"};
    case DatasetKind::Hiv: return {"smiles", "HIV_active", ""};
    case DatasetKind::Custom: break;
  }
  return {"smiles", "label", ""};
}

bool undersampled_by_default(DatasetKind kind) noexcept {
  return kind == DatasetKind::Bbbp || kind == DatasetKind::Hiv;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out;
  out.skipped_rows = skipped_rows;
  out.skipped_ids = skipped_ids;
  out.ids.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) {
    out.ids.push_back(ids[i]);
    out.labels.push_back(labels[i]);
    if (!smiles.empty()) out.smiles.push_back(smiles[i]);
    if (!fingerprints.empty()) out.fingerprints.push_back(fingerprints[i]);
  }
  if (features) out.features = features->select_rows(indices);
  return out;
}

std::size_t Dataset::count_label(int label) const noexcept {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

void Dataset::validate() const {
  const std::size_t n = labels.size();
  if (ids.size() != n || (!smiles.empty() && smiles.size() != n) ||
      (features && features->rows() != n) || (!fingerprints.empty() && fingerprints.size() != n)) {
    throw Error(ErrorCode::InvariantViolation, "dataset columns have different lengths");
  }
  for (int label : labels) {
    if (label != 0 && label != 1) throw Error(ErrorCode::InvariantViolation, "non-binary label");
  }
}

std::optional<int> coerce_label(std::string_view text) noexcept {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "true" || lower == "ca" || lower == "cm") return 1;
  if (lower == "false" || lower == "ci") return 0;
  if (const auto value = csv::parse_double(text)) {
    if (*value == 0.0) return 0;
    if (*value == 1.0) return 1;
  }
  return std::nullopt;
}

Dataset load_dataset(const std::filesystem::path& path, const Schema& schema) {
  const csv::Table table = csv::read(path);
  const auto smiles_col = table.column(schema.smiles_column);
  if (!smiles_col) {
    throw Error(ErrorCode::MissingColumn,
                "column '" + schema.smiles_column + "' not found in " + path.string());
  }
  const auto label_col = table.column(schema.label_column);
  if (!label_col) {
    throw Error(ErrorCode::MissingColumn,
                "column '" + schema.label_column + "' not found in " + path.string());
  }
  const auto id_col =
      schema.id_column.empty() ? std::nullopt : table.column(schema.id_column);

  Dataset data;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string id =
        id_col && *id_col < row.size() ? row[*id_col] : std::to_string(r);
    if (*smiles_col >= row.size() || *label_col >= row.size()) {
      ++data.skipped_rows;
      data.skipped_ids.push_back(id);
      continue;
    }
    const auto label = coerce_label(row[*label_col]);
    if (!label) {
      throw Error(ErrorCode::NonBinaryLabel, "row " + std::to_string(r + 1) + ": label '" +
                                                 row[*label_col] + "' is not binary");
    }
    try {
      (void)parse_smiles(row[*smiles_col]);
    } catch (const SmilesError&) {
      ++data.skipped_rows;
      data.skipped_ids.push_back(id);
      continue;
    }
    data.ids.push_back(id);
    data.smiles.push_back(row[*smiles_col]);
    data.labels.push_back(*label);
  }
  return data;
}

Matrix load_embeddings(const std::filesystem::path& path, std::span<const std::string> ids,
                       const std::set<std::string>& ignored, std::size_t expected_dim) {
  const csv::Table table = csv::read(path);
  if (table.header.size() != expected_dim + 1) {
    throw Error(ErrorCode::DimensionMismatch,
                path.string() + " has " +
                    std::to_string(table.header.empty() ? 0 : table.header.size() - 1) +
                    " embedding columns, expected " + std::to_string(expected_dim));
  }
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < ids.size(); ++i) position.emplace(ids[i], i);

  Matrix out(ids.size(), expected_dim);
  std::vector<bool> filled(ids.size(), false);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != expected_dim + 1) {
      throw Error(ErrorCode::DimensionMismatch,
                  "embedding row " + std::to_string(r + 1) + " has " +
                      std::to_string(row.size()) + " fields");
    }
    const auto it = position.find(row[0]);
    if (it == position.end()) {
      if (ignored.contains(row[0])) continue;
      throw Error(ErrorCode::UnknownId, "embedding id '" + row[0] + "' is not in the dataset");
    }
    if (filled[it->second]) {
      throw Error(ErrorCode::UnknownId, "embedding id '" + row[0] + "' appears twice");
    }
    for (std::size_t c = 0; c < expected_dim; ++c) {
      const auto value = csv::parse_double(row[c + 1]);
      if (!value || !std::isfinite(*value)) {
        throw Error(ErrorCode::DimensionMismatch, "embedding row " + std::to_string(r + 1) +
                                                      " has a non-numeric value");
      }
      out(it->second, c) = *value;
    }
    filled[it->second] = true;
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!filled[i]) {
      throw Error(ErrorCode::UnknownId, "no embedding for dataset id '" + ids[i] + "'");
    }
  }
  return out;
}

void embed_fingerprints(Dataset& data, int radius, std::size_t nbits) {
  if (data.smiles.size() != data.size()) {
    throw Error(ErrorCode::InvariantViolation, "fingerprint embedding needs SMILES for every row");
  }
  data.fingerprints.clear();
  data.fingerprints.reserve(data.size());
  Matrix features(data.size(), nbits);
  for (std::size_t i = 0; i < data.size(); ++i) {
    Fingerprint fp = morgan_fingerprint(parse_smiles(data.smiles[i]), radius, nbits);
    for (std::size_t b = 0; b < nbits; ++b) features(i, b) = fp.test(b) ? 1.0 : 0.0;
    data.fingerprints.push_back(std::move(fp));
  }
  data.features = std::move(features);
}

Dataset undersample(const Dataset& data, std::uint64_t seed) {
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < data.size(); ++i) by_class[data.labels[i]].push_back(i);
  if (by_class[0].empty() || by_class[1].empty()) {
    throw Error(ErrorCode::SingleClass, "undersampling needs both classes present");
  }
  const int majority = by_class[1].size() > by_class[0].size() ? 1 : 0;
  const std::vector<std::size_t>& minority_rows = by_class[1 - majority];
  const std::vector<std::size_t>& majority_rows = by_class[majority];

  Rng rng(seed);
  std::vector<std::size_t> keep = minority_rows;
  for (std::size_t pick : rng.sample(majority_rows.size(), minority_rows.size())) {
    keep.push_back(majority_rows[pick]);
  }
  std::sort(keep.begin(), keep.end());
  return data.subset(keep);
}

SplitPlan make_split(std::size_t size, std::uint64_t seed, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "train fraction must lie in (0, 1]");
  }
  std::vector<std::size_t> order(size);
  for (std::size_t i = 0; i < size; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(size)));
  if (n_train == 0) throw Error(ErrorCode::EmptyTrainSet, "split leaves no training rows");

  SplitPlan plan;
  plan.seed = seed;
  plan.train_fraction = train_fraction;
  plan.train_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  plan.test_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  std::sort(plan.train_indices.begin(), plan.train_indices.end());
  std::sort(plan.test_indices.begin(), plan.test_indices.end());
  return plan;
}

SplitPlan subsample_fraction(const SplitPlan& plan, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "fraction must lie in (0, 1]");
  }
  if (fraction == 1.0) return plan;
  const auto keep = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(plan.train_indices.size())));
  if (keep == 0) throw Error(ErrorCode::EmptyTrainSet, "subsample leaves no training rows");
  Rng rng(seed);
  SplitPlan out = plan;
  out.train_indices.clear();
  for (std::size_t pick : rng.sample(plan.train_indices.size(), keep)) {
    out.train_indices.push_back(plan.train_indices[pick]);
  }
  std::sort(out.train_indices.begin(), out.train_indices.end());
  out.train_fraction = plan.train_fraction * fraction;
  return out;
}

}  // namespace qsarbench
