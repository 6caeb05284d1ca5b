#pragma once

// Finite abelian groups in invariant-factor form, their elements, and the
// multiset container used everywhere else.
//
// Elements have two interchangeable representations: a coordinate vector
// (GroupElement) and a mixed-radix index in [0, order). The index of
// (c_0, ..., c_{r-1}) is ((c_0 * d_1) + c_1) * d_2 + ..., so the first
// coordinate is the most significant digit. For Z_3^3 the coordinates are
// (board, row, column).

#include <compare>
#include <cstdint>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zsl {

using ElemIndex = std::uint32_t;

class GroupElement;

class GroupSpec {
 public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 32;

  /// Throws std::invalid_argument unless every factor is >= 1, the factors
  /// form a divisibility chain, and the order is at most 2^32.
  explicit GroupSpec(std::vector<std::uint32_t> factors);

  /// Parses "3,3,3".
  static GroupSpec parse(std::string_view text);
  static GroupSpec elementary(std::uint32_t p, std::size_t rank);
  /// Z_3 + Z_3 + Z_{3d}.
  static GroupSpec z33_3d(std::uint32_t d);

  std::size_t rank() const { return factors_.size(); }
  const std::vector<std::uint32_t>& factors() const { return factors_; }
  std::uint32_t factor(std::size_t i) const { return factors_[i]; }
  std::uint64_t order() const { return order_; }
  std::uint32_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }
  /// M(G) = sum(d_i) - r + 1, the trivial lower bound for D(G).
  std::uint64_t m_constant() const;
  /// True when all factors equal one prime p (the group is F_p^r).
  bool is_elementary() const;
  /// The prime of an elementary group, 0 otherwise.
  std::uint32_t elementary_prime() const;

  std::string to_string() const;

  ElemIndex index_of(const std::vector<std::uint32_t>& coords) const;
  std::vector<std::uint32_t> coords_of(ElemIndex idx) const;
  GroupElement element(ElemIndex idx) const;
  GroupElement element(std::vector<std::uint32_t> coords) const;
  GroupElement identity() const;

  // Index arithmetic. No bounds checks; callers pass valid indices.
  ElemIndex add(ElemIndex a, ElemIndex b) const;
  ElemIndex neg(ElemIndex a) const;
  ElemIndex scale(ElemIndex a, std::uint64_t k) const;
  std::uint32_t order_of(ElemIndex a) const;

  bool operator==(const GroupSpec& other) const { return factors_ == other.factors_; }

 private:
  std::vector<std::uint32_t> factors_;
  std::uint64_t order_ = 1;
};

class GroupElement {
 public:
  GroupElement(GroupSpec spec, std::vector<std::uint32_t> coords);

  const GroupSpec& spec() const { return spec_; }
  const std::vector<std::uint32_t>& coords() const { return coords_; }
  std::uint32_t operator[](std::size_t i) const { return coords_[i]; }
  ElemIndex index() const { return spec_.index_of(coords_); }
  bool is_identity() const;
  std::string to_string() const;  // "(1,2,0)"

  bool operator==(const GroupElement& other) const {
    return spec_ == other.spec_ && coords_ == other.coords_;
  }
  std::strong_ordering operator<=>(const GroupElement& other) const {
    return coords_ <=> other.coords_;
  }

 private:
  GroupSpec spec_;
  std::vector<std::uint32_t> coords_;
};

/// Componentwise addition; throws SpecMismatch for elements of different groups.
GroupElement element_add(const GroupElement& a, const GroupElement& b);
GroupElement element_neg(const GroupElement& a);
GroupElement element_scale(const GroupElement& a, std::uint64_t k);

/// Element -> multiplicity. Storage is a dense array for groups of order at
/// most 4096 and a sorted map otherwise. Zero multiplicities are never stored.
class GroupMultiset {
 public:
  static constexpr std::uint64_t kDenseLimit = 4096;
  using Entry = std::pair<ElemIndex, std::uint32_t>;

  explicit GroupMultiset(GroupSpec spec);
  static GroupMultiset from_entries(GroupSpec spec, const std::vector<Entry>& entries);
  static GroupMultiset from_elements(GroupSpec spec, const std::vector<std::vector<std::uint32_t>>& coords);

  const GroupSpec& spec() const { return spec_; }
  std::uint32_t count(ElemIndex idx) const;
  std::uint32_t count(const GroupElement& x) const;
  void add(ElemIndex idx, std::uint32_t mult = 1);
  void add(const GroupElement& x, std::uint32_t mult = 1);
  /// Removes up to `mult` copies; throws std::invalid_argument if fewer are present.
  void remove(ElemIndex idx, std::uint32_t mult = 1);
  void set(ElemIndex idx, std::uint32_t mult);

  std::uint64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  std::size_t support_size() const;
  /// Sorted by element index.
  std::vector<ElemIndex> support() const;
  std::vector<Entry> entries() const;

  bool is_submultiset_of(const GroupMultiset& other) const;
  /// Multiset union with added multiplicities.
  GroupMultiset operator+(const GroupMultiset& other) const;
  /// Pointwise difference; other must be a sub-multiset.
  GroupMultiset operator-(const GroupMultiset& other) const;

  /// Canonical byte encoding (spec, then sorted entries).
  std::string encode() const;
  std::string to_string() const;  // "{(0,0,1)x2, (1,0,0)}"

  bool operator==(const GroupMultiset& other) const;

 private:
  bool dense() const { return spec_.order() <= kDenseLimit; }

  GroupSpec spec_;
  std::vector<std::uint32_t> dense_;
  std::map<ElemIndex, std::uint32_t> sparse_;
  std::uint64_t size_ = 0;
};

/// A non-empty sub-multiset whose element sum is the target (the identity
/// unless stated otherwise).
struct ZerosumCertificate {
  GroupMultiset sub;
};

/// Sum of all elements with multiplicity; the empty sum is the identity.
GroupElement multiset_sum(const GroupMultiset& a);
ElemIndex multiset_sum_index(const GroupMultiset& a);

/// Checks the certificate by coordinate arithmetic, independently of the
/// index tables used by the search kernels.
bool verify_certificate(const GroupMultiset& parent, const ZerosumCertificate& cert);
bool verify_certificate(const GroupMultiset& parent, const ZerosumCertificate& cert,
                        const GroupElement& target);

/// All B with 0 <= B(x) <= A(x), in mixed-radix order over the sorted
/// support (the empty multiset first, A itself last).
class SubMultisetRange {
 public:
  static constexpr std::uint64_t kMaxSize = 24;

  /// Throws BudgetExceeded when |A| > 24.
  explicit SubMultisetRange(const GroupMultiset& a);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = GroupMultiset;
    using difference_type = std::ptrdiff_t;
    using pointer = const GroupMultiset*;
    using reference = const GroupMultiset&;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(const iterator& other) const { return done_ == other.done_; }

   private:
    friend class SubMultisetRange;
    iterator(const SubMultisetRange* owner);
    const SubMultisetRange* owner_ = nullptr;
    std::vector<std::uint32_t> digits_;
    GroupMultiset current_{GroupSpec({1})};
    bool done_ = true;
  };

  iterator begin() const { return iterator(this); }
  iterator end() const { return iterator(); }
  /// prod (m_i + 1)
  std::uint64_t count() const;

 private:
  GroupSpec spec_;
  std::vector<GroupMultiset::Entry> entries_;
};

inline SubMultisetRange sub_multisets(const GroupMultiset& a) { return SubMultisetRange(a); }

}  // namespace zsl

template <>
struct std::hash<zsl::GroupMultiset> {
  std::size_t operator()(const zsl::GroupMultiset& m) const noexcept {
    return std::hash<std::string>{}(m.encode());
  }
};
