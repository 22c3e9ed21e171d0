// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace qsarbench {

struct Atom {
  int atomic_number = 0;
  int formal_charge = 0;
  int explicit_h = 0;  // bracket atoms only
  bool aromatic = false;
  int isotope = 0;     // 0 = unspecified
  bool bracket = false;
};

enum class BondOrder : std::uint8_t { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

struct Bond {
  std::size_t a = 0;
  std::size_t b = 0;
  BondOrder order = BondOrder::Single;
};

/// Parsed molecule. Disconnected fragments ('.') live in one graph.
struct MolecularGraph {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  std::vector<bool> atom_in_ring;
  std::vector<bool> bond_in_ring;
  std::vector<int> implicit_h;

  std::size_t atom_count() const noexcept { return atoms.size(); }

  /// Bond indices incident to each atom, in bond order.
  std::vector<std::vector<std::size_t>> incident_bonds() const;

  int total_h(std::size_t atom) const { return implicit_h[atom] + atoms[atom].explicit_h; }
};

/// Parses the supported SMILES subset (branches, ring closures incl. %nn, bond
/// symbols, bracket atoms, lowercase aromatics, '.' fragments). Stereo marks
/// are accepted and dropped. Throws SmilesError with the byte offset.
MolecularGraph parse_smiles(std::string_view text);

/// Marks every atom and bond lying on a cycle (all non-bridge bonds and their
/// endpoints). Idempotent.
MolecularGraph perceive_rings(MolecularGraph graph);

/// Atomic number for an element symbol, 0 if unknown.
int element_number(std::string_view symbol) noexcept;

std::string_view element_symbol(int atomic_number) noexcept;

}  // namespace qsarbench
