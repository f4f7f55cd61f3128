#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace zeno {

/// Index into the 4^L computational basis of an L-rung ladder.
using Index = std::uint64_t;

/// Largest ladder the library will encode. 4^16 already exceeds anything
/// a state vector could hold in memory.
inline constexpr int kMaxRungs = 16;

/// One rung of the ladder. A bit value of 1 means the z eigenvalue is +1.
struct RungState {
  bool sigma = false;
  bool tau = false;

  /// Base-4 digit of this rung in the basis index, 2*sigma + tau.
  constexpr unsigned digit() const { return (sigma ? 2u : 0u) + (tau ? 1u : 0u); }
  /// Eigenvalue of sigma^z tau^z on this rung.
  constexpr int sector_sign() const { return sigma == tau ? +1 : -1; }

  static constexpr RungState from_digit(unsigned d) { return {(d & 2u) != 0, (d & 1u) != 0}; }
  friend constexpr bool operator==(RungState, RungState) = default;
};

/// A computational basis state. Rung 0 is the leftmost rung and occupies
/// the least significant base-4 digit: index = sum_i 4^i (2 sigma_i + tau_i).
struct BasisState {
  std::vector<RungState> rungs;
  Index index = 0;

  int num_rungs() const { return static_cast<int>(rungs.size()); }
  /// Concatenated "sigma tau" bit string, rung 0 first (e.g. "00110001").
  std::string bit_string() const;
  friend bool operator==(const BasisState&, const BasisState&) = default;
};

inline constexpr Index hilbert_dimension(int num_rungs) { return Index{1} << (2 * num_rungs); }

BasisState encode(const std::vector<RungState>& rungs);
BasisState decode(Index index, int num_rungs);
/// Parses the concatenated bit-string notation, two characters per rung.
BasisState parse_bit_string(std::string_view bits);

/// Ordered list of rung parities sigma^z_i tau^z_i.
class SectorLabel {
 public:
  SectorLabel() = default;
  explicit SectorLabel(std::vector<int> signs);

  /// Accepts '+' and '-' (also the Unicode minus sign U+2212).
  static SectorLabel parse(std::string_view text);
  /// Sector whose bit i is set iff sign_i = -1.
  static SectorLabel from_mask(std::uint32_t mask, int num_rungs);

  int num_rungs() const { return static_cast<int>(signs_.size()); }
  int operator[](std::size_t i) const { return signs_[i]; }
  const std::vector<int>& signs() const { return signs_; }
  std::uint32_t mask() const;
  std::string str() const;

  friend bool operator==(const SectorLabel&, const SectorLabel&) = default;
  friend auto operator<=>(const SectorLabel& a, const SectorLabel& b) { return a.mask() <=> b.mask(); }

 private:
  std::vector<int> signs_;
};

SectorLabel sector_of(const BasisState& state);
/// Sector mask (bit i set iff rung i has sign -1) straight from an index.
std::uint32_t sector_mask_of(Index index, int num_rungs);

/// All 2^L basis indices of a sector in ascending order.
std::vector<Index> sector_basis(const SectorLabel& sector);

struct StringSegment {
  int start = 0;
  int length = 0;
  int sign = +1;
  friend bool operator==(const StringSegment&, const StringSegment&) = default;
};

/// Maximal runs of equal sector sign, in spatial order.
struct StringDecomposition {
  std::vector<StringSegment> strings;
  std::vector<int> lengths() const;
};

StringDecomposition string_decomposition(const SectorLabel& sector);

/// Grouping of sectors by the plateau value m = sum_i c_i s_i of the
/// protection term.
struct ZenoSubspaces {
  std::vector<int> c;
  std::map<int, std::vector<SectorLabel>> groups;

  int num_rungs() const { return static_cast<int>(c.size()); }
  int plateau_of(const SectorLabel& sector) const;
  int plateau_of_mask(std::uint32_t mask) const;
  /// Plateau value of every basis state, indexed by basis index.
  std::vector<int> plateau_per_basis_state() const;
};

ZenoSubspaces zeno_subspaces(const std::vector<int>& c, int num_rungs);
inline ZenoSubspaces zeno_subspaces(const SectorLabel& c) { return zeno_subspaces(c.signs(), c.num_rungs()); }

void check_num_rungs(int num_rungs);

}  // namespace zeno
