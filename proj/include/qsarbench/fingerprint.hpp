// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsarbench/smiles.hpp"

namespace qsarbench {

/// Fixed-length bitset; `nbits` is a power of two (512 in every experiment).
class Fingerprint {
 public:
  Fingerprint() = default;
  explicit Fingerprint(std::size_t nbits);

  std::size_t nbits() const noexcept { return nbits_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool test(std::size_t bit) const noexcept { return (words_[bit >> 6] >> (bit & 63)) & 1U; }
  void set(std::size_t bit) noexcept { words_[bit >> 6] |= std::uint64_t{1} << (bit & 63); }
  std::size_t popcount() const noexcept;

  /// Dense 0/1 feature vector.
  std::vector<double> to_dense() const;

  /// Byte i holds bits 8i..8i+7 (bit 8i = least significant); bytes are
  /// written in increasing order as two lowercase hex digits each.
  std::string to_hex() const;
  static Fingerprint from_hex(std::string_view hex);

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;

 private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Portable seedless hash of a word sequence (SplitMix64 mixing).
std::uint64_t hash_words(std::span<const std::uint64_t> words) noexcept;

/// Hash of (atomic number, heavy degree, total H, formal charge, in-ring,
/// isotope).
std::uint64_t atom_invariant(const MolecularGraph& graph, std::size_t atom);

inline constexpr int kDefaultRadius = 2;
inline constexpr std::size_t kDefaultBits = 512;

/// Circular (Morgan/ECFP-style) fingerprint folded to `nbits`.
Fingerprint morgan_fingerprint(const MolecularGraph& graph, int radius = kDefaultRadius,
                               std::size_t nbits = kDefaultBits);

/// |a & b| / |a | b|; 1 when both are empty.
double tanimoto(const Fingerprint& a, const Fingerprint& b);

}  // namespace qsarbench
