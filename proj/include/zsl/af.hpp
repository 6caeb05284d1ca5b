#pragma once

// 10-element multisets over Z_3^3 without two disjoint zero-sums and without
// zero-sums of length <= 3 or >= 8, and the labelling question: is there an
// n coprime to 6 and f : A -> Z_n with sum f(B) = 1 for every zero-sum B and
// 3 f(a) = 1 for some a in A?

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zsl/group.hpp"
#include "zsl/intlinalg.hpp"

namespace zsl {

enum class AfFilter { PaperCaseViii, Full };
AfFilter parse_af_filter(std::string_view s);  // "paper" | "full"

struct AfCandidate {
  GroupMultiset a{GroupSpec({1})};
  std::vector<GroupMultiset> zerosum_subsets;
  std::uint64_t orbit_size = 0;
};

/// Checks the candidate invariants with the zero-sum engine.
bool is_af_candidate(const GroupMultiset& a);

/// Counts for the case with the standard basis doubled plus 4 single points.
struct AfPaperCounts {
  std::uint64_t raw = 0;                 // configurations with the basis fixed
  std::uint64_t with_diagonal_pair = 0;  // containing one of (0,1,1),(1,0,1),(1,1,0)
  std::uint64_t rotated_c3 = 0;          // distinct configurations containing (0,1,1) after 3-cycles
  std::uint64_t rotated_s3 = 0;          // same with all coordinate permutations
  std::uint64_t orbits_rotated = 0;      // GL-orbits among the rotated ones
  std::uint64_t orbits_total = 0;        // GL-orbits among all raw configurations
};

struct AfEnumeration {
  AfFilter filter = AfFilter::Full;
  std::vector<AfCandidate> candidates;  // one per GL-orbit
  AfPaperCounts paper;                  // filled for PaperCaseViii
  /// Raw configurations (basis fixed) for PaperCaseViii.
  std::vector<GroupMultiset> raw;
  std::vector<GroupMultiset> rotated;   // the rotated_c3 list
};

AfEnumeration enumerate_af_candidates(AfFilter filter);

/// The 16 four-point completions of the doubled basis listed as the reduced
/// case table (each containing (0,1,1)), assembled into 10-element multisets.
std::vector<GroupMultiset> case_viii_table();

struct AfSystem {
  std::vector<ElemIndex> variables;  // support of A, sorted
  IntMatrix M;                       // one row per zero-sum subset, then the anchor row
  IntVector c;                       // all ones
  ElemIndex anchor = 0;
};

/// Throws std::invalid_argument unless anchor is in the support.
AfSystem build_system(const AfCandidate& cand, const GroupElement& anchor);

struct AnchorVerdict {
  ElemIndex anchor = 0;
  bool feasible = false;
  bool generic = false;
  BigInt obstruction;                 // gcd certificate; every usable prime divides it
  std::vector<BigInt> feasible_primes;  // all primes with a solution (subset of the factors)
  std::optional<BigInt> witness_prime;
  std::optional<std::vector<std::uint64_t>> witness_f;  // values on AfSystem::variables mod witness prime
};

struct CandidateVerdict {
  std::size_t index = 0;
  std::vector<AnchorVerdict> anchors;
  bool violation() const;
};

struct AfReport {
  AfFilter filter = AfFilter::Full;
  AfPaperCounts paper;
  std::uint64_t candidates = 0;
  std::uint64_t anchors_checked = 0;
  std::uint64_t violations = 0;
  std::vector<CandidateVerdict> verdicts;  // in candidate order
  AfEnumeration enumeration;
};

AnchorVerdict verify_anchor(const AfCandidate& cand, ElemIndex anchor);
CandidateVerdict verify_candidate(const AfCandidate& cand);
/// Parallel over candidates; the verdict order is the candidate order.
AfReport verify_af_theorem(AfFilter filter);

/// [x]: the lift of x in Z_3 to {0, 1, 2}.
struct BracketReport {
  // (1-[-a]+[-1-a])/3, (2-[-a]+[-2-a])/3, (2+[-a]-[-1-a])/3 for a = 0, 1, 2
  std::array<std::array<long, 3>, 3> tables{};
  std::array<std::array<long, 3>, 3> expected{};
  bool tables_match = false;
  std::vector<IntMatrix> matrices;    // rebuilt case matrices
  std::vector<IntMatrix> published;   // as printed
  bool matrices_match = false;
  std::vector<std::pair<std::uint64_t, std::vector<std::size_t>>> ranks;  // p -> rank of each matrix
  bool ranks_ok = false;
  bool ok() const { return tables_match && matrices_match && ranks_ok; }
};

/// The two 0/1 rows contributed by a point (r,s,t), columns (f(z), f(y), f(x)).
std::array<std::array<long, 3>, 2> bracket_rows(const std::vector<std::uint32_t>& point);
/// Single points (two per case) of the three case matrices; the third row
/// pair comes from their sum.
std::vector<std::array<std::vector<std::uint32_t>, 2>> case_vi_points();
BracketReport bracket_coefficient_tables();

}  // namespace zsl
