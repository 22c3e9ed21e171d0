// SPDX-License-Identifier: Apache-2.0
#include "qsarbench/smiles.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <string>

#include "qsarbench/error.hpp"

namespace qsarbench {
namespace {

constexpr std::array<std::string_view, 119> kSymbols = {
    "",   "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg", "Al", "Si",
    "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr", "Mn", "Fe", "Co", "Ni", "Cu",
    "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru",
    "Rh", "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
    "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W",
    "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac",
    "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf",
    "Db", "Sg", "Bh", "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};

// Default valences for the unbracketed organic subset.
std::vector<int> standard_valences(int atomic_number) {
  switch (atomic_number) {
    case 5: return {3};
    case 6: return {4};
    case 7: return {3, 5};
    case 8: return {2};
    case 15: return {3, 5};
    case 16: return {2, 4, 6};
    case 9:
    case 17:
    case 35:
    case 53: return {1};
    default: return {};
  }
}

int bond_valence(BondOrder order) {
  switch (order) {
    case BondOrder::Single: return 1;
    case BondOrder::Double: return 2;
    case BondOrder::Triple: return 3;
    case BondOrder::Aromatic: return 1;
  }
  return 1;
}

struct PendingBond {
  BondOrder order = BondOrder::Single;
  std::size_t offset = 0;
};

struct RingOpening {
  std::size_t atom;
  std::optional<BondOrder> order;
  std::size_t offset;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  MolecularGraph run() {
    if (text_.empty()) throw SmilesError(ErrorCode::InvalidSyntax, 0, "empty SMILES");
    while (pos_ < text_.size()) step();
    if (!branches_.empty()) {
      throw SmilesError(ErrorCode::UnbalancedParenthesis, branches_.back().second,
                        "unclosed branch");
    }
    if (!rings_.empty()) {
      throw SmilesError(ErrorCode::UnclosedRingBond, rings_.begin()->second.offset,
                        "ring bond " + std::to_string(rings_.begin()->first) + " never closed");
    }
    if (pending_) throw SmilesError(ErrorCode::InvalidSyntax, pending_->offset, "dangling bond");
    if (graph_.atoms.empty()) throw SmilesError(ErrorCode::InvalidSyntax, 0, "no atoms");
    assign_implicit_hydrogens();
    return perceive_rings(std::move(graph_));
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void step() {
    const char c = peek();
    switch (c) {
      case '(':
        if (!prev_) throw SmilesError(ErrorCode::InvalidSyntax, pos_, "branch without atom");
        if (pending_) throw SmilesError(ErrorCode::InvalidSyntax, pos_, "bond before branch");
        branches_.emplace_back(*prev_, pos_);
        ++pos_;
        return;
      case ')':
        if (branches_.empty()) {
          throw SmilesError(ErrorCode::UnbalancedParenthesis, pos_, "unmatched ')'");
        }
        if (pending_) throw SmilesError(ErrorCode::InvalidSyntax, pos_, "dangling bond");
        prev_ = branches_.back().first;
        branches_.pop_back();
        ++pos_;
        return;
      case '-': set_pending(BondOrder::Single); return;
      case '/':
      case '\\': set_pending(BondOrder::Single); return;
      case '=': set_pending(BondOrder::Double); return;
      case '#': set_pending(BondOrder::Triple); return;
      case ':': set_pending(BondOrder::Aromatic); return;
      case '.':
        if (pending_) throw SmilesError(ErrorCode::InvalidSyntax, pos_, "bond before '.'");
        prev_.reset();
        ++pos_;
        return;
      case '[': bracket_atom(); return;
      case '%': ring_closure(); return;
      default: break;
    }
    if (c >= '0' && c <= '9') {
      ring_closure();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '*') {
      organic_atom();
      return;
    }
    throw SmilesError(ErrorCode::InvalidSyntax, pos_,
                      std::string("unexpected character '") + c + "'");
  }

  void set_pending(BondOrder order) {
    if (pending_) throw SmilesError(ErrorCode::InvalidSyntax, pos_, "consecutive bond symbols");
    if (!prev_) throw SmilesError(ErrorCode::InvalidSyntax, pos_, "bond without preceding atom");
    pending_ = PendingBond{order, pos_};
    ++pos_;
  }

  void ring_closure() {
    const std::size_t start = pos_;
    if (!prev_) throw SmilesError(ErrorCode::InvalidSyntax, pos_, "ring bond without atom");
    int number = 0;
    if (peek() == '%') {
      if (!std::isdigit(static_cast<unsigned char>(peek(1))) ||
          !std::isdigit(static_cast<unsigned char>(peek(2)))) {
        throw SmilesError(ErrorCode::InvalidSyntax, pos_, "'%' needs two digits");
      }
      number = (peek(1) - '0') * 10 + (peek(2) - '0');
      pos_ += 3;
    } else {
      number = peek() - '0';
      ++pos_;
    }
    std::optional<BondOrder> here;
    if (pending_) here.emplace(pending_->order);
    pending_.reset();

    auto it = rings_.find(number);
    if (it == rings_.end()) {
      rings_.emplace(number, RingOpening{*prev_, here, start});
      return;
    }
    const RingOpening open = it->second;
    rings_.erase(it);
    if (open.order && here && *open.order != *here) {
      throw SmilesError(ErrorCode::InvalidSyntax, start, "conflicting ring bond orders");
    }
    if (open.atom == *prev_) {
      throw SmilesError(ErrorCode::InvalidSyntax, start, "ring bond to the same atom");
    }
    const std::optional<BondOrder> order = open.order ? open.order : here;
    add_bond(open.atom, *prev_, order, start);
  }

  void organic_atom() {
    const std::size_t start = pos_;
    const char c = peek();
    Atom atom;
    if (c == 'C' && peek(1) == 'l') {
      atom.atomic_number = 17;
      pos_ += 2;
    } else if (c == 'B' && peek(1) == 'r') {
      atom.atomic_number = 35;
      pos_ += 2;
    } else {
      switch (c) {
        case 'B': atom.atomic_number = 5; break;
        case 'C': atom.atomic_number = 6; break;
        case 'N': atom.atomic_number = 7; break;
        case 'O': atom.atomic_number = 8; break;
        case 'P': atom.atomic_number = 15; break;
        case 'S': atom.atomic_number = 16; break;
        case 'F': atom.atomic_number = 9; break;
        case 'I': atom.atomic_number = 53; break;
        case 'b': atom.atomic_number = 5; atom.aromatic = true; break;
        case 'c': atom.atomic_number = 6; atom.aromatic = true; break;
        case 'n': atom.atomic_number = 7; atom.aromatic = true; break;
        case 'o': atom.atomic_number = 8; atom.aromatic = true; break;
        case 'p': atom.atomic_number = 15; atom.aromatic = true; break;
        case 's': atom.atomic_number = 16; atom.aromatic = true; break;
        default:
          throw SmilesError(ErrorCode::UnknownElement, start,
                            std::string("unknown element '") + c + "'");
      }
      ++pos_;
    }
    add_atom(atom, start);
  }

  int read_number() {
    int value = 0;
    int digits = 0;
    while (std::isdigit(static_cast<unsigned char>(peek())) && digits < 6) {
      value = value * 10 + (peek() - '0');
      ++pos_;
      ++digits;
    }
    return value;
  }

  void bracket_atom() {
    const std::size_t start = pos_;
    ++pos_;  // '['
    Atom atom;
    atom.bracket = true;
    if (std::isdigit(static_cast<unsigned char>(peek()))) atom.isotope = read_number();

    const std::size_t symbol_at = pos_;
    const char c = peek();
    if (std::islower(static_cast<unsigned char>(c))) {
      // aromatic symbols
      static constexpr std::array<std::pair<std::string_view, int>, 9> kAromatic = {{
          {"se", 34}, {"as", 33}, {"te", 52}, {"b", 5}, {"c", 6},
          {"n", 7},   {"o", 8},   {"p", 15},  {"s", 16},
      }};
      bool found = false;
      for (const auto& [sym, z] : kAromatic) {
        if (text_.substr(pos_, sym.size()) == sym) {
          atom.atomic_number = z;
          atom.aromatic = true;
          pos_ += sym.size();
          found = true;
          break;
        }
      }
      if (!found) throw SmilesError(ErrorCode::UnknownElement, symbol_at, "unknown aromatic atom");
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      int z = 0;
      if (std::islower(static_cast<unsigned char>(peek(1)))) {
        z = element_number(text_.substr(pos_, 2));
        if (z != 0) pos_ += 2;
      }
      if (z == 0) {
        z = element_number(text_.substr(pos_, 1));
        if (z == 0) throw SmilesError(ErrorCode::UnknownElement, symbol_at, "unknown element");
        ++pos_;
      }
      atom.atomic_number = z;
    } else {
      throw SmilesError(ErrorCode::UnknownElement, symbol_at, "missing element symbol");
    }

    // chirality, discarded
    if (peek() == '@') {
      ++pos_;
      if (peek() == '@') {
        ++pos_;
      } else if (std::isupper(static_cast<unsigned char>(peek())) &&
                 std::isupper(static_cast<unsigned char>(peek(1)))) {
        pos_ += 2;
        read_number();
      }
    }

    if (peek() == 'H') {
      ++pos_;
      atom.explicit_h = std::isdigit(static_cast<unsigned char>(peek())) ? read_number() : 1;
    }

    if (peek() == '+' || peek() == '-') {
      const std::size_t charge_at = pos_;
      const char sign = peek();
      ++pos_;
      int magnitude = 1;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        magnitude = read_number();
      } else {
        while (peek() == sign) {
          ++magnitude;
          ++pos_;
        }
      }
      if (peek() == '+' || peek() == '-' || magnitude > 15) {
        throw SmilesError(ErrorCode::InvalidCharge, charge_at, "malformed charge");
      }
      atom.formal_charge = sign == '+' ? magnitude : -magnitude;
    }

    if (peek() == ':') {  // atom class
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        throw SmilesError(ErrorCode::InvalidSyntax, pos_, "atom class needs digits");
      }
      read_number();
    }

    if (peek() != ']') {
      if (pos_ >= text_.size()) {
        throw SmilesError(ErrorCode::InvalidSyntax, start, "unterminated bracket atom");
      }
      if (peek() == '+' || peek() == '-') {
        throw SmilesError(ErrorCode::InvalidCharge, pos_, "malformed charge");
      }
      throw SmilesError(ErrorCode::InvalidSyntax, pos_, "unexpected character in bracket atom");
    }
    ++pos_;
    add_atom(atom, start);
  }

  void add_atom(const Atom& atom, std::size_t offset) {
    const std::size_t index = graph_.atoms.size();
    graph_.atoms.push_back(atom);
    if (prev_) {
      std::optional<BondOrder> order;
      if (pending_) order.emplace(pending_->order);
      add_bond(*prev_, index, order, offset);
    } else if (pending_) {
      throw SmilesError(ErrorCode::InvalidSyntax, pending_->offset, "bond without preceding atom");
    }
    pending_.reset();
    prev_ = index;
  }

  void add_bond(std::size_t a, std::size_t b, std::optional<BondOrder> order, std::size_t offset) {
    for (const Bond& existing : graph_.bonds) {
      if ((existing.a == a && existing.b == b) || (existing.a == b && existing.b == a)) {
        throw SmilesError(ErrorCode::InvalidSyntax, offset, "duplicate bond");
      }
    }
    const bool both_aromatic = graph_.atoms[a].aromatic && graph_.atoms[b].aromatic;
    Bond bond{a, b, both_aromatic ? BondOrder::Aromatic : BondOrder::Single};
    if (order.has_value()) bond.order = order.value();
    graph_.bonds.push_back(bond);
  }

  void assign_implicit_hydrogens() {
    const std::size_t n = graph_.atoms.size();
    std::vector<int> valence_sum(n, 0);
    std::vector<int> aromatic_bonds(n, 0);
    std::vector<bool> has_multiple(n, false);
    for (const Bond& bond : graph_.bonds) {
      for (std::size_t end : {bond.a, bond.b}) {
        valence_sum[end] += bond_valence(bond.order);
        if (bond.order == BondOrder::Aromatic) ++aromatic_bonds[end];
        if (bond.order == BondOrder::Double || bond.order == BondOrder::Triple) {
          has_multiple[end] = true;
        }
      }
    }
    graph_.implicit_h.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const Atom& atom = graph_.atoms[i];
      if (atom.bracket) continue;
      const std::vector<int> valences = standard_valences(atom.atomic_number);
      int target = -1;
      for (int v : valences) {
        if (v >= valence_sum[i]) {
          target = v;
          break;
        }
      }
      if (target < 0) continue;
      int h = target - valence_sum[i];
      // One aromatic pi bond is implied by lowercase notation.
      if (atom.aromatic && aromatic_bonds[i] > 0 && !has_multiple[i]) --h;
      graph_.implicit_h[i] = std::max(h, 0);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  MolecularGraph graph_;
  std::optional<std::size_t> prev_;
  std::optional<PendingBond> pending_;
  std::vector<std::pair<std::size_t, std::size_t>> branches_;  // (atom, offset of '(')
  std::map<int, RingOpening> rings_;
};

}  // namespace

int element_number(std::string_view symbol) noexcept {
  for (std::size_t z = 1; z < kSymbols.size(); ++z) {
    if (kSymbols[z] == symbol) return static_cast<int>(z);
  }
  return 0;
}

std::string_view element_symbol(int atomic_number) noexcept {
  if (atomic_number <= 0 || atomic_number >= static_cast<int>(kSymbols.size())) return "";
  return kSymbols[static_cast<std::size_t>(atomic_number)];
}

std::vector<std::vector<std::size_t>> MolecularGraph::incident_bonds() const {
  std::vector<std::vector<std::size_t>> incident(atoms.size());
  for (std::size_t i = 0; i < bonds.size(); ++i) {
    incident[bonds[i].a].push_back(i);
    incident[bonds[i].b].push_back(i);
  }
  return incident;
}

MolecularGraph parse_smiles(std::string_view text) { return Parser(text).run(); }

MolecularGraph perceive_rings(MolecularGraph graph) {
  const std::size_t n = graph.atoms.size();
  const auto incident = graph.incident_bonds();
  graph.atom_in_ring.assign(n, false);
  graph.bond_in_ring.assign(graph.bonds.size(), true);

  // Iterative Tarjan bridge finding; bridges are the only acyclic bonds.
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> disc(n, kUnvisited), low(n, 0);
  struct Frame {
    std::size_t atom;
    std::size_t parent_bond;
    std::size_t next;
  };
  std::vector<Frame> stack;
  std::size_t timer = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] != kUnvisited) continue;
    disc[root] = low[root] = timer++;
    stack.push_back({root, kUnvisited, 0});
    while (!stack.empty()) {
      Frame& frame = stack.back();
      const std::size_t v = frame.atom;
      if (frame.next < incident[v].size()) {
        const std::size_t bond = incident[v][frame.next++];
        if (bond == frame.parent_bond) continue;
        const Bond& b = graph.bonds[bond];
        const std::size_t w = b.a == v ? b.b : b.a;
        if (disc[w] == kUnvisited) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, bond, 0});
        } else {
          low[v] = std::min(low[v], disc[w]);
        }
        continue;
      }
      const std::size_t parent_bond = frame.parent_bond;
      stack.pop_back();
      if (!stack.empty()) {
        const std::size_t parent = stack.back().atom;
        low[parent] = std::min(low[parent], low[v]);
        if (low[v] > disc[parent]) graph.bond_in_ring[parent_bond] = false;
      }
    }
  }
  for (std::size_t i = 0; i < graph.bonds.size(); ++i) {
    if (graph.bond_in_ring[i]) {
      graph.atom_in_ring[graph.bonds[i].a] = true;
      graph.atom_in_ring[graph.bonds[i].b] = true;
    }
  }
  return graph;
}

}  // namespace qsarbench
