#pragma once

// Zero-sums in Z_3 + Z_3 + Z_3d, gcd(d, 3) = 1, through the splitting
// Z_3 + Z_3 + Z_3d = Z_3^3 + Z_d: (a, b, z) -> ((a, b, z mod 3), z mod d).

#include <cstdint>
#include <string>
#include <vector>

#include "zsl/group.hpp"

namespace zsl {

struct SplitSequence {
  struct Occurrence {
    ElemIndex original;   // in Z_3 + Z_3 + Z_3d
    ElemIndex projected;  // in Z_3^3
    std::uint32_t label;  // mod d
  };

  std::uint32_t d = 1;
  GroupMultiset projected{GroupSpec({1})};
  std::vector<Occurrence> occurrences;  // one per element copy, sorted by original index
};

/// d such that the group is Z_3 + Z_3 + Z_3d with gcd(d,3) = 1; throws
/// SpecMismatch otherwise.
std::uint32_t split_modulus(const GroupSpec& spec);

SplitSequence split(const GroupMultiset& seq);
GroupMultiset unsplit(const SplitSequence& s);

struct SplitStats {
  std::uint32_t parts = 0;   // short projected zero-sums extracted greedily
  std::string path;          // "identity", "greedy", "atoms", "direct"
};

/// A verified non-empty zero-sum sub-multiset. Throws std::invalid_argument if
/// |seq| < 3d + 4, SpecMismatch for the wrong group, and TheoremViolation
/// (with the input in the message) if every strategy fails.
ZerosumCertificate find_zerosum_3d(const GroupMultiset& seq, SplitStats* stats = nullptr);

/// 2 x (1,0,0), 2 x (0,1,0), (3d-1) x (0,0,1): length 3d+3, zero-sum free.
GroupMultiset zerosum_free_witness_3d(std::uint32_t d);

}  // namespace zsl
