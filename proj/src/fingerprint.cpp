// SPDX-License-Identifier: Apache-2.0
#include "qsarbench/fingerprint.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <tuple>

#include "qsarbench/error.hpp"
#include "qsarbench/kernels.hpp"
#include "qsarbench/rng.hpp"

namespace qsarbench {

Fingerprint::Fingerprint(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {
  if (nbits == 0 || !std::has_single_bit(nbits)) {
    throw Error(ErrorCode::InvalidArgument, "fingerprint length must be a power of two");
  }
}

std::size_t Fingerprint::popcount() const noexcept {
  std::size_t count = 0;
  for (std::uint64_t w : words_) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

std::vector<double> Fingerprint::to_dense() const {
  std::vector<double> dense(nbits_, 0.0);
  for (std::size_t i = 0; i < nbits_; ++i) dense[i] = test(i) ? 1.0 : 0.0;
  return dense;
}

std::string Fingerprint::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  const std::size_t bytes = (nbits_ + 7) / 8;
  out.reserve(2 * bytes);
  for (std::size_t i = 0; i < bytes; ++i) {
    const auto byte = static_cast<unsigned>((words_[i / 8] >> (8 * (i % 8))) & 0xffU);
    out.push_back(kDigits[byte >> 4]);
    out.push_back(kDigits[byte & 0xf]);
  }
  return out;
}

Fingerprint Fingerprint::from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0 || hex.empty()) {
    throw Error(ErrorCode::InvalidArgument, "hex fingerprint has odd or zero length");
  }
  auto nibble = [](char c) -> unsigned {
    if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
    throw Error(ErrorCode::InvalidArgument, "invalid hex digit in fingerprint");
  };
  Fingerprint fp(hex.size() * 4);
  for (std::size_t i = 0; i < hex.size() / 2; ++i) {
    const std::uint64_t byte = (nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]);
    fp.words_[i / 8] |= byte << (8 * (i % 8));
  }
  return fp;
}

std::uint64_t hash_words(std::span<const std::uint64_t> words) noexcept {
  std::uint64_t h = mix64(0x243f6a8885a308d3ULL ^ words.size());
  for (std::uint64_t w : words) h = mix64(h ^ mix64(w + kGoldenGamma));
  return h;
}

std::uint64_t atom_invariant(const MolecularGraph& graph, std::size_t atom) {
  if (atom >= graph.atoms.size()) throw Error(ErrorCode::InvalidArgument, "atom index out of range");
  std::uint64_t heavy_degree = 0;
  for (const Bond& bond : graph.bonds) {
    if (bond.a != atom && bond.b != atom) continue;
    const std::size_t other = bond.a == atom ? bond.b : bond.a;
    if (graph.atoms[other].atomic_number > 1) ++heavy_degree;
  }
  const Atom& a = graph.atoms[atom];
  const std::uint64_t tuple[] = {
      static_cast<std::uint64_t>(a.atomic_number),
      heavy_degree,
      static_cast<std::uint64_t>(graph.total_h(atom)),
      static_cast<std::uint64_t>(static_cast<std::int64_t>(a.formal_charge)),
      graph.atom_in_ring[atom] ? 1ULL : 0ULL,
      static_cast<std::uint64_t>(a.isotope),
  };
  return hash_words(tuple);
}

Fingerprint morgan_fingerprint(const MolecularGraph& graph, int radius, std::size_t nbits) {
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "radius must be non-negative");
  const std::size_t n = graph.atoms.size();
  if (n == 0) throw Error(ErrorCode::EmptyMolecule, "molecule has no atoms");
  Fingerprint fp(nbits);
  const std::uint64_t mask = nbits - 1;

  using BondSet = std::vector<std::uint64_t>;
  const std::size_t set_words = (graph.bonds.size() + 63) / 64;
  const auto incident = graph.incident_bonds();

  std::vector<std::uint64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = atom_invariant(graph, i);
    fp.set(ids[i] & mask);
  }

  std::vector<BondSet> envs(n, BondSet(set_words, 0));
  // The empty bond set belongs to the radius-0 environments already emitted.
  std::set<BondSet> seen{BondSet(set_words, 0)};

  for (int r = 1; r <= radius; ++r) {
    std::vector<std::uint64_t> next_ids(n);
    std::vector<BondSet> next_envs(n);
    std::vector<std::tuple<BondSet, std::uint64_t>> candidates;
    candidates.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> neighbors;
      BondSet env = envs[i];
      for (std::size_t b : incident[i]) {
        const Bond& bond = graph.bonds[b];
        const std::size_t other = bond.a == i ? bond.b : bond.a;
        neighbors.emplace_back(static_cast<std::uint64_t>(bond.order), ids[other]);
        env[b >> 6] |= std::uint64_t{1} << (b & 63);
        for (std::size_t w = 0; w < set_words; ++w) env[w] |= envs[other][w];
      }
      std::sort(neighbors.begin(), neighbors.end());
      std::vector<std::uint64_t> words{static_cast<std::uint64_t>(r), ids[i]};
      for (const auto& [code, id] : neighbors) {
        words.push_back(code);
        words.push_back(id);
      }
      next_ids[i] = hash_words(words);
      next_envs[i] = env;
      candidates.emplace_back(std::move(env), next_ids[i]);
    }
    // Equal bond sets sort together; the smallest identifier comes first.
    std::sort(candidates.begin(), candidates.end());
    for (const auto& [env, id] : candidates) {
      if (seen.insert(env).second) fp.set(id & mask);
    }
    ids = std::move(next_ids);
    envs = std::move(next_envs);
  }
  return fp;
}

double tanimoto(const Fingerprint& a, const Fingerprint& b) {
  if (a.nbits() != b.nbits()) throw Error(ErrorCode::LengthMismatch, "fingerprint lengths differ");
  const auto counts =
      kernels::active().popcount_and_or(a.words().data(), b.words().data(), a.words().size());
  if (counts.either == 0) return 1.0;
  return static_cast<double>(counts.both) / static_cast<double>(counts.either);
}

}  // namespace qsarbench
