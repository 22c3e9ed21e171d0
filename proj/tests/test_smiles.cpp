// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "qsarbench/error.hpp"
#include "qsarbench/rng.hpp"
#include "qsarbench/smiles.hpp"
#include "support/random_molecules.hpp"

using namespace qsarbench;

namespace {

ErrorCode code_of(std::string_view text, std::size_t* offset = nullptr) {
  try {
    parse_smiles(text);
  } catch (const SmilesError& e) {
    if (offset) *offset = e.offset();
    return e.code();
  }
  ADD_FAILURE() << "no error for '" << text << "'";
  return ErrorCode::InvariantViolation;
}

int bond_sum(const MolecularGraph& g, std::size_t atom) {
  int sum = 0;
  for (const Bond& b : g.bonds) {
    if (b.a == atom || b.b == atom) sum += b.order == BondOrder::Aromatic ? 1 : static_cast<int>(b.order);
  }
  return sum;
}

}  // namespace

TEST(Smiles, Methane) {
  const auto g = parse_smiles("C");
  ASSERT_EQ(g.atoms.size(), 1U);
  EXPECT_TRUE(g.bonds.empty());
  EXPECT_EQ(g.atoms[0].atomic_number, 6);
  EXPECT_EQ(g.implicit_h[0], 4);
}

TEST(Smiles, Ethanol) {
  const auto g = parse_smiles("CCO");
  ASSERT_EQ(g.atoms.size(), 3U);
  ASSERT_EQ(g.bonds.size(), 2U);
  for (const auto& b : g.bonds) EXPECT_EQ(b.order, BondOrder::Single);
  EXPECT_EQ(g.implicit_h, (std::vector<int>{3, 2, 1}));
}

TEST(Smiles, Benzene) {
  const auto g = parse_smiles("c1ccccc1");
  ASSERT_EQ(g.atoms.size(), 6U);
  ASSERT_EQ(g.bonds.size(), 6U);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_TRUE(g.atoms[i].aromatic);
    EXPECT_TRUE(g.atom_in_ring[i]);
    EXPECT_EQ(g.implicit_h[i], 1);
  }
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(g.bonds[i].order, BondOrder::Aromatic);
    EXPECT_TRUE(g.bond_in_ring[i]);
  }
}

TEST(Smiles, AromaticHeteroatoms) {
  const auto pyridine = parse_smiles("c1ccncc1");
  EXPECT_EQ(pyridine.implicit_h[3], 0);
  const auto pyrrole = parse_smiles("c1cc[nH]c1");
  EXPECT_EQ(pyrrole.atoms[3].explicit_h, 1);
  EXPECT_EQ(pyrrole.total_h(3), 1);
}

TEST(Smiles, BondSymbolsAndBranches) {
  const auto g = parse_smiles("CC(=O)C#N");
  ASSERT_EQ(g.atoms.size(), 5U);
  EXPECT_EQ(g.bonds[1].order, BondOrder::Double);
  EXPECT_EQ(g.bonds[3].order, BondOrder::Triple);
  EXPECT_EQ(g.implicit_h, (std::vector<int>{3, 0, 0, 0, 0}));
}

TEST(Smiles, RingClosureOrderFromEitherDigit) {
  for (const char* text : {"C=1CCCCC1", "C1CCCCC=1"}) {
    const auto g = parse_smiles(text);
    int doubles = 0;
    for (const auto& b : g.bonds) doubles += b.order == BondOrder::Double;
    EXPECT_EQ(doubles, 1) << text;
  }
  EXPECT_EQ(code_of("C=1CCCCC#1"), ErrorCode::InvalidSyntax);
}

TEST(Smiles, TwoDigitRingClosures) {
  const auto g = parse_smiles("C%12CCC%12");
  EXPECT_EQ(g.bonds.size(), 4U);
  for (bool r : g.atom_in_ring) EXPECT_TRUE(r);
}

TEST(Smiles, BracketAtoms) {
  const auto g = parse_smiles("[13CH3][N+](C)(C)C.[Cl-]");
  EXPECT_EQ(g.atoms[0].isotope, 13);
  EXPECT_EQ(g.atoms[0].explicit_h, 3);
  EXPECT_EQ(g.implicit_h[0], 0);
  EXPECT_EQ(g.atoms[1].formal_charge, 1);
  EXPECT_EQ(g.atoms[5].atomic_number, 17);
  EXPECT_EQ(g.atoms[5].formal_charge, -1);
  EXPECT_EQ(g.bonds.size(), 4U);  // '.' separates fragments

  EXPECT_EQ(parse_smiles("[Fe+++]").atoms[0].formal_charge, 3);
  EXPECT_EQ(parse_smiles("[O-2]").atoms[0].formal_charge, -2);
  EXPECT_EQ(parse_smiles("[CH3-]").atoms[0].formal_charge, -1);
}

TEST(Smiles, StereoIsDropped) {
  const auto a = parse_smiles("F/C=C/F");
  const auto b = parse_smiles("FC=CF");
  EXPECT_EQ(a.atoms.size(), b.atoms.size());
  EXPECT_EQ(a.bonds.size(), b.bonds.size());
  const auto c = parse_smiles("N[C@@H](C)C(=O)O");
  EXPECT_EQ(c.atoms[1].explicit_h, 1);
  EXPECT_EQ(c.atoms.size(), 6U);
}

TEST(Smiles, ErrorsCarryOffsets) {
  std::size_t offset = 0;
  EXPECT_EQ(code_of("C1CC", &offset), ErrorCode::UnclosedRingBond);
  EXPECT_EQ(offset, 1U);
  EXPECT_EQ(code_of("CC(C", &offset), ErrorCode::UnbalancedParenthesis);
  EXPECT_EQ(offset, 2U);
  EXPECT_EQ(code_of("CC)C", &offset), ErrorCode::UnbalancedParenthesis);
  EXPECT_EQ(offset, 2U);
  EXPECT_EQ(code_of("CXC", &offset), ErrorCode::UnknownElement);
  EXPECT_EQ(offset, 1U);
  EXPECT_EQ(code_of("C[Xx]", &offset), ErrorCode::UnknownElement);
  EXPECT_EQ(code_of("[C+-]"), ErrorCode::InvalidCharge);
  EXPECT_EQ(code_of("[C+99]"), ErrorCode::InvalidCharge);
  EXPECT_EQ(code_of("C1C1"), ErrorCode::InvalidSyntax);
}

TEST(Smiles, EmptyInputIsAnError) {
  EXPECT_THROW(parse_smiles(""), SmilesError);
}

TEST(Rings, Examples) {
  const auto chain = parse_smiles("CCCC");
  for (bool r : chain.atom_in_ring) EXPECT_FALSE(r);
  for (bool r : chain.bond_in_ring) EXPECT_FALSE(r);

  const auto square = parse_smiles("C1CCC1");
  for (bool r : square.atom_in_ring) EXPECT_TRUE(r);
  for (bool r : square.bond_in_ring) EXPECT_TRUE(r);

  const auto g = parse_smiles("C1CC1C");
  EXPECT_EQ(g.atom_in_ring, (std::vector<bool>{true, true, true, false}));
  // cross-check against brute-force cycle search on the same 4-vertex graph
  std::vector<std::pair<int, int>> edges;
  for (const auto& b : g.bonds) edges.emplace_back(static_cast<int>(b.a), static_cast<int>(b.b));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    EXPECT_EQ(g.bond_in_ring[e], oracle::edge_on_cycle(4, edges, e));
  }
}

TEST(Rings, SpiroAndFusedSystems) {
  const auto spiro = parse_smiles("C1CCC12CCC2");
  for (bool r : spiro.atom_in_ring) EXPECT_TRUE(r);
  const auto linked = parse_smiles("C1CC1CCC1CC1");
  EXPECT_FALSE(linked.atom_in_ring[4]);
  EXPECT_FALSE(linked.bond_in_ring[3]);
}

TEST(Smiles, RandomMoleculesRoundTrip) {
  Rng rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const int atoms = 1 + static_cast<int>(rng.below(14));
    const auto m = oracle::random_molecule(rng, atoms, static_cast<int>(rng.below(4)));
    const auto g = parse_smiles(m.smiles);
    ASSERT_EQ(g.atoms.size(), static_cast<std::size_t>(atoms)) << m.smiles;
    EXPECT_EQ(static_cast<int>(g.atoms.size()), oracle::count_atom_tokens(m.smiles));
    ASSERT_EQ(g.bonds.size(), m.edges.size()) << m.smiles;

    // atoms are renumbered in writer order, so compare the order multiset
    std::vector<int> expected(m.orders), got;
    std::vector<std::pair<int, int>> parsed_edges;
    for (const auto& b : g.bonds) {
      parsed_edges.emplace_back(static_cast<int>(b.a), static_cast<int>(b.b));
      got.push_back(static_cast<int>(b.order));
    }
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expected) << m.smiles;
    for (std::size_t e = 0; e < parsed_edges.size(); ++e) {
      EXPECT_EQ(g.bond_in_ring[e], oracle::edge_on_cycle(atoms, parsed_edges, e)) << m.smiles;
    }
    for (std::size_t a = 0; a < g.atoms.size(); ++a) {
      bool on_cycle = false;
      for (std::size_t e = 0; e < parsed_edges.size(); ++e) {
        if ((g.bonds[e].a == a || g.bonds[e].b == a) && g.bond_in_ring[e]) on_cycle = true;
      }
      EXPECT_EQ(g.atom_in_ring[a], on_cycle) << m.smiles;
    }
  }
}

TEST(Smiles, ValenceRuleForOrganicSubset) {
  const std::map<int, std::vector<int>> valences{{5, {3}},     {6, {4}},  {7, {3, 5}}, {8, {2}},
                                                 {15, {3, 5}}, {16, {2, 4, 6}}, {9, {1}},
                                                 {17, {1}},    {35, {1}}, {53, {1}}};
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = oracle::random_molecule(rng, 1 + static_cast<int>(rng.below(12)), 2);
    const auto g = parse_smiles(m.smiles);
    for (std::size_t a = 0; a < g.atoms.size(); ++a) {
      ASSERT_FALSE(g.atoms[a].bracket);
      const int sum = bond_sum(g, a);
      const int h = g.implicit_h[a];
      ASSERT_GE(h, 0);
      const auto& allowed = valences.at(g.atoms[a].atomic_number);
      const bool standard = std::find(allowed.begin(), allowed.end(), sum + h) != allowed.end();
      const bool overfull = h == 0 && sum > allowed.back();
      EXPECT_TRUE(standard || overfull) << m.smiles << " atom " << a;
      if (standard) {
        // smallest standard valence that accommodates the bonds
        for (int v : allowed) {
          if (v >= sum) {
            EXPECT_EQ(sum + h, v);
            break;
          }
        }
      }
    }
  }
}

TEST(Rings, PerceptionIsIdempotent) {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = oracle::random_molecule(rng, 2 + static_cast<int>(rng.below(12)), 3);
    const auto g = parse_smiles(m.smiles);
    const auto once = perceive_rings(g);
    const auto twice = perceive_rings(once);
    EXPECT_EQ(once.atom_in_ring, g.atom_in_ring);
    EXPECT_EQ(twice.atom_in_ring, once.atom_in_ring);
    EXPECT_EQ(twice.bond_in_ring, once.bond_in_ring);
  }
}

TEST(Smiles, FuzzNeverCrashes) {
  Rng rng(1234);
  const std::string alphabet = "CNOSPFBrclnos()[]=#:-+@/\\%.0123456789Hh*Xx \x01\xff";
  std::size_t parsed = 0, rejected = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    std::string text;
    const std::size_t len = rng.below(24);
    for (std::size_t i = 0; i < len; ++i) {
      text += rng.below(8) == 0 ? static_cast<char>(rng.below(256))
                                : alphabet[rng.below(alphabet.size())];
    }
    try {
      const auto g = parse_smiles(text);
      ++parsed;
      for (int h : g.implicit_h) EXPECT_GE(h, 0);
      EXPECT_EQ(g.atom_in_ring.size(), g.atoms.size());
      EXPECT_EQ(g.bond_in_ring.size(), g.bonds.size());
    } catch (const SmilesError& e) {
      ++rejected;
      EXPECT_LE(e.offset(), text.size());
    }
  }
  EXPECT_GT(parsed, 0U);
  EXPECT_GT(rejected, 0U);
}

TEST(Elements, SymbolTable) {
  EXPECT_EQ(element_number("C"), 6);
  EXPECT_EQ(element_number("Cl"), 17);
  EXPECT_EQ(element_number("Xx"), 0);
  EXPECT_EQ(element_symbol(35), "Br");
}
