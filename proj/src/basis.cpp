#include "zeno/basis.hpp"

#include <algorithm>
#include <stdexcept>

namespace zeno {

void check_num_rungs(int num_rungs) {
  if (num_rungs < 1 || num_rungs > kMaxRungs) {
    throw std::invalid_argument("number of rungs must lie in [1, " + std::to_string(kMaxRungs) +
                                "], got " + std::to_string(num_rungs));
  }
}

std::string BasisState::bit_string() const {
  std::string out;
  out.reserve(2 * rungs.size());
  for (const auto& r : rungs) {
    out.push_back(r.sigma ? '1' : '0');
    out.push_back(r.tau ? '1' : '0');
  }
  return out;
}

BasisState encode(const std::vector<RungState>& rungs) {
  check_num_rungs(static_cast<int>(rungs.size()));
  Index index = 0;
  for (std::size_t i = rungs.size(); i-- > 0;) index = 4 * index + rungs[i].digit();
  return {rungs, index};
}

BasisState decode(Index index, int num_rungs) {
  check_num_rungs(num_rungs);
  if (index >= hilbert_dimension(num_rungs)) {
    throw std::out_of_range("basis index " + std::to_string(index) + " out of range for " +
                            std::to_string(num_rungs) + " rungs");
  }
  BasisState s;
  s.index = index;
  s.rungs.reserve(num_rungs);
  for (int i = 0; i < num_rungs; ++i) s.rungs.push_back(RungState::from_digit((index >> (2 * i)) & 3u));
  return s;
}

BasisState parse_bit_string(std::string_view bits) {
  if (bits.empty() || bits.size() % 2 != 0) {
    throw std::invalid_argument("bit string must have an even, nonzero length: '" + std::string(bits) + "'");
  }
  std::vector<RungState> rungs;
  for (std::size_t i = 0; i < bits.size(); i += 2) {
    for (char ch : bits.substr(i, 2)) {
      if (ch != '0' && ch != '1') throw std::invalid_argument("bad character in bit string: '" + std::string(bits) + "'");
    }
    rungs.push_back({bits[i] == '1', bits[i + 1] == '1'});
  }
  return encode(rungs);
}

SectorLabel::SectorLabel(std::vector<int> signs) : signs_(std::move(signs)) {
  check_num_rungs(num_rungs());
  for (int s : signs_) {
    if (s != 1 && s != -1) throw std::invalid_argument("sector signs must be +1 or -1");
  }
}

SectorLabel SectorLabel::parse(std::string_view text) {
  static constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";
  std::vector<int> signs;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '+') {
      signs.push_back(+1);
      ++i;
    } else if (text[i] == '-') {
      signs.push_back(-1);
      ++i;
    } else if (text.substr(i, kUnicodeMinus.size()) == kUnicodeMinus) {
      signs.push_back(-1);
      i += kUnicodeMinus.size();
    } else {
      throw std::invalid_argument("sector string may only contain '+' and '-': '" + std::string(text) + "'");
    }
  }
  if (signs.empty()) throw std::invalid_argument("empty sector string");
  return SectorLabel(std::move(signs));
}

SectorLabel SectorLabel::from_mask(std::uint32_t mask, int num_rungs) {
  check_num_rungs(num_rungs);
  std::vector<int> signs(num_rungs);
  for (int i = 0; i < num_rungs; ++i) signs[i] = (mask >> i) & 1u ? -1 : +1;
  return SectorLabel(std::move(signs));
}

std::uint32_t SectorLabel::mask() const {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < signs_.size(); ++i) {
    if (signs_[i] < 0) m |= 1u << i;
  }
  return m;
}

std::string SectorLabel::str() const {
  std::string out;
  for (int s : signs_) out.push_back(s > 0 ? '+' : '-');
  return out;
}

SectorLabel sector_of(const BasisState& state) {
  std::vector<int> signs;
  signs.reserve(state.rungs.size());
  for (const auto& r : state.rungs) signs.push_back(r.sector_sign());
  return SectorLabel(std::move(signs));
}

std::uint32_t sector_mask_of(Index index, int num_rungs) {
  std::uint32_t m = 0;
  for (int i = 0; i < num_rungs; ++i) {
    const auto d = (index >> (2 * i)) & 3u;
    // digits 1 (01) and 2 (10) have sigma != tau
    if (d == 1 || d == 2) m |= 1u << i;
  }
  return m;
}

std::vector<Index> sector_basis(const SectorLabel& sector) {
  const int L = sector.num_rungs();
  std::vector<Index> out;
  out.reserve(std::size_t{1} << L);
  for (std::uint32_t choice = 0; choice < (1u << L); ++choice) {
    Index idx = 0;
    for (int i = 0; i < L; ++i) {
      const bool high = (choice >> i) & 1u;
      const unsigned digit = sector[i] > 0 ? (high ? 3u : 0u) : (high ? 2u : 1u);
      idx |= Index{digit} << (2 * i);
    }
    out.push_back(idx);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> StringDecomposition::lengths() const {
  std::vector<int> out;
  out.reserve(strings.size());
  for (const auto& s : strings) out.push_back(s.length);
  return out;
}

StringDecomposition string_decomposition(const SectorLabel& sector) {
  StringDecomposition d;
  for (int i = 0; i < sector.num_rungs(); ++i) {
    if (d.strings.empty() || d.strings.back().sign != sector[i]) {
      d.strings.push_back({i, 1, sector[i]});
    } else {
      ++d.strings.back().length;
    }
  }
  return d;
}

int ZenoSubspaces::plateau_of(const SectorLabel& sector) const {
  if (sector.num_rungs() != num_rungs()) throw std::invalid_argument("sector length does not match c");
  return plateau_of_mask(sector.mask());
}

int ZenoSubspaces::plateau_of_mask(std::uint32_t mask) const {
  int m = 0;
  for (int i = 0; i < num_rungs(); ++i) m += c[i] * ((mask >> i) & 1u ? -1 : +1);
  return m;
}

std::vector<int> ZenoSubspaces::plateau_per_basis_state() const {
  const int L = num_rungs();
  std::vector<int> per_mask(std::size_t{1} << L);
  for (std::uint32_t m = 0; m < per_mask.size(); ++m) per_mask[m] = plateau_of_mask(m);
  const Index dim = hilbert_dimension(L);
  std::vector<int> out(dim);
  for (Index i = 0; i < dim; ++i) out[i] = per_mask[sector_mask_of(i, L)];
  return out;
}

ZenoSubspaces zeno_subspaces(const std::vector<int>& c, int num_rungs) {
  check_num_rungs(num_rungs);
  if (static_cast<int>(c.size()) != num_rungs) {
    throw std::invalid_argument("protection sequence c has length " + std::to_string(c.size()) + ", expected " +
                                std::to_string(num_rungs));
  }
  for (int ci : c) {
    if (ci != 1 && ci != -1) throw std::invalid_argument("protection sequence entries must be +1 or -1");
  }
  ZenoSubspaces z;
  z.c = c;
  for (std::uint32_t m = 0; m < (1u << num_rungs); ++m) {
    z.groups[z.plateau_of_mask(m)].push_back(SectorLabel::from_mask(m, num_rungs));
  }
  return z;
}

}  // namespace zeno
