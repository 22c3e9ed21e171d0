// SPDX-License-Identifier: Apache-2.0
//
// Synthetic stand-in for a BACE-style file: homologous series built from a
// handful of ring cores, chain lengths and terminal groups. Members of one
// series share most circular substructures, so Butina yields large clusters.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace fixture {

struct Molecule {
  std::string id;
  std::string smiles;
  int label = 0;
  int family = 0;
};

/// Deterministic list; labels depend on the terminal group and the core.
std::vector<Molecule> homologous_series();

/// Writes `CID,mol,Class` (the BACE preset columns). Optionally appends
/// `extra_bad` rows with unparseable SMILES.
void write_bace_csv(const std::filesystem::path& path, const std::vector<Molecule>& mols,
                    int extra_bad = 0);

/// `id,e0..e{dim-1}` with seeded pseudo-random values, in `mols` order.
void write_embeddings_csv(const std::filesystem::path& path, const std::vector<Molecule>& mols,
                          std::size_t dim, std::uint64_t seed);

}  // namespace fixture
