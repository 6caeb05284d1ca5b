#include "zsl/group.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "zsl/errors.hpp"

namespace zsl {

GroupSpec::GroupSpec(std::vector<std::uint32_t> factors) : factors_(std::move(factors)) {
  order_ = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 1) throw std::invalid_argument("group factor must be >= 1");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0)
      throw std::invalid_argument("factors must form a divisibility chain: " + to_string());
    order_ *= factors_[i];
    if (order_ > kMaxOrder) throw std::invalid_argument("group order exceeds 2^32: " + to_string());
  }
}

GroupSpec GroupSpec::parse(std::string_view text) {
  std::vector<std::uint32_t> f;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) throw std::invalid_argument("empty factor in group spec");
    std::size_t pos = 0;
    unsigned long v = std::stoul(tok, &pos);
    if (pos != tok.size() || v == 0 || v > 0xffffffffUL)
      throw std::invalid_argument("bad factor '" + tok + "'");
    f.push_back(static_cast<std::uint32_t>(v));
    tok.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else if (c != ' ') {
      tok.push_back(c);
    }
  }
  flush();
  return GroupSpec(std::move(f));
}

GroupSpec GroupSpec::elementary(std::uint32_t p, std::size_t rank) {
  return GroupSpec(std::vector<std::uint32_t>(rank, p));
}

GroupSpec GroupSpec::z33_3d(std::uint32_t d) { return GroupSpec({3, 3, 3 * d}); }

std::uint64_t GroupSpec::m_constant() const {
  std::uint64_t s = 1;
  for (auto d : factors_) s += d - 1;
  return s;
}

bool GroupSpec::is_elementary() const { return elementary_prime() != 0; }

std::uint32_t GroupSpec::elementary_prime() const {
  if (factors_.empty()) return 0;
  std::uint32_t p = factors_.front();
  if (p < 2) return 0;
  for (auto d : factors_)
    if (d != p) return 0;
  for (std::uint32_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return 0;
  return p;
}

std::string GroupSpec::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(factors_[i]);
  }
  return s;
}

ElemIndex GroupSpec::index_of(const std::vector<std::uint32_t>& coords) const {
  if (coords.size() != factors_.size()) throw SpecMismatch("coordinate length does not match group rank");
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) idx = idx * factors_[i] + coords[i] % factors_[i];
  return static_cast<ElemIndex>(idx);
}

std::vector<std::uint32_t> GroupSpec::coords_of(ElemIndex idx) const {
  std::vector<std::uint32_t> c(factors_.size());
  std::uint64_t v = idx;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    c[i] = static_cast<std::uint32_t>(v % factors_[i]);
    v /= factors_[i];
  }
  return c;
}

GroupElement GroupSpec::element(ElemIndex idx) const {
  if (idx >= order_) throw std::out_of_range("element index out of range");
  return GroupElement(*this, coords_of(idx));
}

GroupElement GroupSpec::element(std::vector<std::uint32_t> coords) const {
  return GroupElement(*this, std::move(coords));
}

GroupElement GroupSpec::identity() const {
  return GroupElement(*this, std::vector<std::uint32_t>(factors_.size(), 0));
}

ElemIndex GroupSpec::add(ElemIndex a, ElemIndex b) const {
  std::uint64_t out = 0, mul = 1;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    std::uint32_t d = factors_[i];
    std::uint64_t ca = a % d, cb = b % d;
    a /= d;
    b /= d;
    std::uint64_t c = ca + cb;
    if (c >= d) c -= d;
    out += c * mul;
    mul *= d;
  }
  return static_cast<ElemIndex>(out);
}

ElemIndex GroupSpec::neg(ElemIndex a) const {
  std::uint64_t out = 0, mul = 1;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    std::uint32_t d = factors_[i];
    std::uint64_t ca = a % d;
    a /= d;
    out += (ca == 0 ? 0 : d - ca) * mul;
    mul *= d;
  }
  return static_cast<ElemIndex>(out);
}

ElemIndex GroupSpec::scale(ElemIndex a, std::uint64_t k) const {
  std::uint64_t out = 0, mul = 1;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    std::uint32_t d = factors_[i];
    std::uint64_t ca = a % d;
    a /= d;
    out += ((ca * (k % d)) % d) * mul;
    mul *= d;
  }
  return static_cast<ElemIndex>(out);
}

std::uint32_t GroupSpec::order_of(ElemIndex a) const {
  std::uint64_t ord = 1;
  auto c = coords_of(a);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uint64_t d = factors_[i];
    std::uint64_t oi = d / std::gcd<std::uint64_t>(d, c[i]);
    ord = std::lcm(ord, oi);
  }
  return static_cast<std::uint32_t>(ord);
}

// ---------------------------------------------------------------------------

GroupElement::GroupElement(GroupSpec spec, std::vector<std::uint32_t> coords)
    : spec_(std::move(spec)), coords_(std::move(coords)) {
  if (coords_.size() != spec_.rank()) throw SpecMismatch("coordinate length does not match group rank");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] %= spec_.factor(i);
}

bool GroupElement::is_identity() const {
  for (auto c : coords_)
    if (c != 0) return false;
  return true;
}

std::string GroupElement::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(coords_[i]);
  }
  return s + ")";
}

GroupElement element_add(const GroupElement& a, const GroupElement& b) {
  if (!(a.spec() == b.spec())) throw SpecMismatch("element_add: operands belong to different groups");
  std::vector<std::uint32_t> c(a.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = static_cast<std::uint32_t>((std::uint64_t{a[i]} + b[i]) % a.spec().factor(i));
  return GroupElement(a.spec(), std::move(c));
}

GroupElement element_neg(const GroupElement& a) {
  std::vector<std::uint32_t> c(a.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uint32_t d = a.spec().factor(i);
    c[i] = (d - a[i]) % d;
  }
  return GroupElement(a.spec(), std::move(c));
}

GroupElement element_scale(const GroupElement& a, std::uint64_t k) {
  std::vector<std::uint32_t> c(a.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uint64_t d = a.spec().factor(i);
    c[i] = static_cast<std::uint32_t>((a[i] * (k % d)) % d);
  }
  return GroupElement(a.spec(), std::move(c));
}

// ---------------------------------------------------------------------------

GroupMultiset::GroupMultiset(GroupSpec spec) : spec_(std::move(spec)) {
  if (dense()) dense_.assign(spec_.order(), 0);
}

GroupMultiset GroupMultiset::from_entries(GroupSpec spec, const std::vector<Entry>& entries) {
  GroupMultiset m(std::move(spec));
  for (auto [e, c] : entries) m.add(e, c);
  return m;
}

GroupMultiset GroupMultiset::from_elements(GroupSpec spec,
                                           const std::vector<std::vector<std::uint32_t>>& coords) {
  GroupMultiset m(std::move(spec));
  for (const auto& c : coords) m.add(m.spec_.index_of(c));
  return m;
}

std::uint32_t GroupMultiset::count(ElemIndex idx) const {
  if (dense()) return idx < dense_.size() ? dense_[idx] : 0;
  auto it = sparse_.find(idx);
  return it == sparse_.end() ? 0 : it->second;
}

std::uint32_t GroupMultiset::count(const GroupElement& x) const {
  if (!(x.spec() == spec_)) throw SpecMismatch("count: element from a different group");
  return count(x.index());
}

void GroupMultiset::add(ElemIndex idx, std::uint32_t mult) {
  if (idx >= spec_.order()) throw std::out_of_range("element index out of range");
  if (mult == 0) return;
  if (dense()) {
    dense_[idx] += mult;
  } else {
    sparse_[idx] += mult;
  }
  size_ += mult;
}

void GroupMultiset::add(const GroupElement& x, std::uint32_t mult) {
  if (!(x.spec() == spec_)) throw SpecMismatch("add: element from a different group");
  add(x.index(), mult);
}

void GroupMultiset::remove(ElemIndex idx, std::uint32_t mult) {
  std::uint32_t have = count(idx);
  if (have < mult) throw std::invalid_argument("remove: not enough copies");
  set(idx, have - mult);
}

void GroupMultiset::set(ElemIndex idx, std::uint32_t mult) {
  if (idx >= spec_.order()) throw std::out_of_range("element index out of range");
  std::uint32_t have = count(idx);
  size_ = size_ - have + mult;
  if (dense()) {
    dense_[idx] = mult;
  } else if (mult == 0) {
    sparse_.erase(idx);
  } else {
    sparse_[idx] = mult;
  }
}

std::size_t GroupMultiset::support_size() const {
  if (!dense()) return sparse_.size();
  std::size_t n = 0;
  for (auto c : dense_) n += c != 0;
  return n;
}

std::vector<ElemIndex> GroupMultiset::support() const {
  std::vector<ElemIndex> s;
  if (dense()) {
    for (std::size_t i = 0; i < dense_.size(); ++i)
      if (dense_[i]) s.push_back(static_cast<ElemIndex>(i));
  } else {
    for (auto& [k, v] : sparse_) s.push_back(k);
  }
  return s;
}

std::vector<GroupMultiset::Entry> GroupMultiset::entries() const {
  std::vector<Entry> s;
  if (dense()) {
    for (std::size_t i = 0; i < dense_.size(); ++i)
      if (dense_[i]) s.emplace_back(static_cast<ElemIndex>(i), dense_[i]);
  } else {
    for (auto& [k, v] : sparse_) s.emplace_back(k, v);
  }
  return s;
}

bool GroupMultiset::is_submultiset_of(const GroupMultiset& other) const {
  if (!(spec_ == other.spec_)) return false;
  for (auto [e, c] : entries())
    if (other.count(e) < c) return false;
  return true;
}

GroupMultiset GroupMultiset::operator+(const GroupMultiset& other) const {
  if (!(spec_ == other.spec_)) throw SpecMismatch("multiset union across different groups");
  GroupMultiset out = *this;
  for (auto [e, c] : other.entries()) out.add(e, c);
  return out;
}

GroupMultiset GroupMultiset::operator-(const GroupMultiset& other) const {
  if (!(spec_ == other.spec_)) throw SpecMismatch("multiset difference across different groups");
  GroupMultiset out = *this;
  for (auto [e, c] : other.entries()) out.remove(e, c);
  return out;
}

std::string GroupMultiset::encode() const {
  std::string s = spec_.to_string();
  s.push_back('|');
  for (auto [e, c] : entries()) {
    for (int b = 0; b < 4; ++b) s.push_back(static_cast<char>((e >> (8 * b)) & 0xff));
    for (int b = 0; b < 4; ++b) s.push_back(static_cast<char>((c >> (8 * b)) & 0xff));
  }
  return s;
}

std::string GroupMultiset::to_string() const {
  std::string s = "{";
  bool first = true;
  for (auto [e, c] : entries()) {
    if (!first) s += ", ";
    first = false;
    s += spec_.element(e).to_string();
    if (c > 1) s += "x" + std::to_string(c);
  }
  return s + "}";
}

bool GroupMultiset::operator==(const GroupMultiset& other) const {
  return spec_ == other.spec_ && size_ == other.size_ && entries() == other.entries();
}

// ---------------------------------------------------------------------------

GroupElement multiset_sum(const GroupMultiset& a) {
  GroupElement acc = a.spec().identity();
  for (auto [e, c] : a.entries()) acc = element_add(acc, element_scale(a.spec().element(e), c));
  return acc;
}

ElemIndex multiset_sum_index(const GroupMultiset& a) {
  ElemIndex acc = 0;
  for (auto [e, c] : a.entries()) acc = a.spec().add(acc, a.spec().scale(e, c));
  return acc;
}

bool verify_certificate(const GroupMultiset& parent, const ZerosumCertificate& cert) {
  return verify_certificate(parent, cert, parent.spec().identity());
}

bool verify_certificate(const GroupMultiset& parent, const ZerosumCertificate& cert,
                        const GroupElement& target) {
  if (cert.sub.empty()) return false;
  if (!cert.sub.is_submultiset_of(parent)) return false;
  return multiset_sum(cert.sub) == target;
}

// ---------------------------------------------------------------------------

SubMultisetRange::SubMultisetRange(const GroupMultiset& a) : spec_(a.spec()), entries_(a.entries()) {
  if (a.size() > kMaxSize)
    throw BudgetExceeded("sub_multisets: |A| = " + std::to_string(a.size()) + " exceeds 24");
}

std::uint64_t SubMultisetRange::count() const {
  std::uint64_t n = 1;
  for (auto [e, c] : entries_) n *= c + 1;
  return n;
}

SubMultisetRange::iterator::iterator(const SubMultisetRange* owner)
    : owner_(owner), digits_(owner->entries_.size(), 0), current_(owner->spec_), done_(false) {}

SubMultisetRange::iterator& SubMultisetRange::iterator::operator++() {
  const auto& ent = owner_->entries_;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (digits_[i] < ent[i].second) {
      ++digits_[i];
      current_.add(ent[i].first, 1);
      return *this;
    }
    digits_[i] = 0;
    current_.set(ent[i].first, 0);
  }
  done_ = true;
  return *this;
}

}  // namespace zsl
