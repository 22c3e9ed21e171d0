// SPDX-License-Identifier: Apache-2.0
#include "fixture.hpp"

#include <fstream>
#include <stdexcept>

#include "qsarbench/csv.hpp"
#include "qsarbench/rng.hpp"

namespace fixture {

std::vector<Molecule> homologous_series() {
  const std::vector<std::string> cores{"c1ccccc1", "c1ccncc1", "C1CCCCC1",
                                       "C1CCNCC1", "c1ccc2ccccc2c1", "C1CCOC1"};
  const std::vector<std::string> terminals{"", "O", "N", "Cl", "F", "C(=O)O", "C#N", "S"};
  const std::vector<bool> polar{false, true, true, false, false, true, false, true};
  std::vector<Molecule> out;
  for (std::size_t c = 0; c < cores.size(); ++c) {
    for (int chain = 1; chain <= 6; ++chain) {
      for (std::size_t t = 0; t < terminals.size(); ++t) {
        Molecule m;
        m.family = static_cast<int>(c);
        m.smiles = cores[c] + std::string(static_cast<std::size_t>(chain), 'C') + terminals[t];
        // polar terminals bind, flipped for the saturated cores
        const bool flip = c == 2 || c == 3;
        m.label = (polar[t] != flip) ? 1 : 0;
        m.id = "F" + std::to_string(c) + "-" + std::to_string(chain) + "-" + std::to_string(t);
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

void write_bace_csv(const std::filesystem::path& path, const std::vector<Molecule>& mols,
                    int extra_bad) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "CID,mol,Class\n";
  for (const auto& m : mols) out << m.id << ',' << m.smiles << ',' << m.label << '\n';
  for (int i = 0; i < extra_bad; ++i) out << "BAD" << i << ",C1CC(,1\n";
}

void write_embeddings_csv(const std::filesystem::path& path, const std::vector<Molecule>& mols,
                          std::size_t dim, std::uint64_t seed) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "id";
  for (std::size_t j = 0; j < dim; ++j) out << ",e" << j;
  out << '\n';
  qsarbench::Rng rng(seed);
  for (const auto& m : mols) {
    out << m.id;
    for (std::size_t j = 0; j < dim; ++j) {
      // weak label signal in the first few coordinates
      const double signal = j < 8 ? (m.label ? 0.4 : -0.4) : 0.0;
      out << ',' << qsarbench::csv::format_double(rng.uniform(-1.0, 1.0) + signal);
    }
    out << '\n';
  }
}

}  // namespace fixture
