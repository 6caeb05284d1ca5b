#include "zsl/splitting.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "zsl/board.hpp"
#include "zsl/errors.hpp"
#include "zsl/kernels.hpp"
#include "zsl/zerosum.hpp"

namespace zsl {

std::uint32_t split_modulus(const GroupSpec& spec) {
  const auto& f = spec.factors();
  if (f.size() != 3 || f[0] != 3 || f[1] != 3 || f[2] % 3 != 0)
    throw SpecMismatch("splitting: group " + spec.to_string() + " is not 3,3,3d");
  const std::uint32_t d = f[2] / 3;
  if (d % 3 == 0) throw SpecMismatch("splitting: d = " + std::to_string(d) + " is divisible by 3");
  return d;
}

SplitSequence split(const GroupMultiset& seq) {
  const std::uint32_t d = split_modulus(seq.spec());
  const GroupSpec z3 = GroupSpec::elementary(3, 3);
  SplitSequence s;
  s.d = d;
  s.projected = GroupMultiset(z3);
  for (auto [e, c] : seq.entries()) {
    auto x = seq.spec().coords_of(e);
    const ElemIndex p = z3.index_of({x[0], x[1], x[2] % 3});
    s.projected.add(p, c);
    for (std::uint32_t k = 0; k < c; ++k) s.occurrences.push_back({e, p, x[2] % d});
  }
  return s;
}

GroupMultiset unsplit(const SplitSequence& s) {
  const GroupSpec g = GroupSpec::z33_3d(s.d);
  const GroupSpec z3 = GroupSpec::elementary(3, 3);
  GroupMultiset out(g);
  for (const auto& o : s.occurrences) {
    auto p = z3.coords_of(o.projected);
    // CRT: z = p[2] mod 3, z = label mod d
    std::uint32_t z = o.label % s.d;
    while (z % 3 != p[2]) z += s.d;
    out.add(g.index_of({p[0], p[1], z}));
  }
  return out;
}

namespace {

using Occ = SplitSequence::Occurrence;

// Shortest-first projected zero-sum of length <= 3 among the unused
// occurrences: distinct triples, then x,x,x, then x,-x, then 0. Returns
// positions into occ.
std::optional<std::vector<std::size_t>> short_part(const GroupSpec& z3, const std::vector<Occ>& occ,
                                                   const std::vector<char>& used) {
  std::map<ElemIndex, std::vector<std::size_t>> by;  // projected -> free positions
  for (std::size_t i = 0; i < occ.size(); ++i)
    if (!used[i]) by[occ[i].projected].push_back(i);
  std::vector<ElemIndex> keys;
  for (auto& [k, v] : by) keys.push_back(k);
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = i + 1; j < keys.size(); ++j) {
      const ElemIndex w = z3.neg(z3.add(keys[i], keys[j]));
      if (w > keys[j] && by.count(w)) return std::vector<std::size_t>{by[keys[i]][0], by[keys[j]][0], by[w][0]};
    }
  for (auto& [k, v] : by)
    if (k != 0 && v.size() >= 3) return std::vector<std::size_t>{v[0], v[1], v[2]};
  for (auto& [k, v] : by) {
    const ElemIndex nk = z3.neg(k);
    if (k != 0 && nk > k && by.count(nk)) return std::vector<std::size_t>{v[0], by[nk][0]};
  }
  if (by.count(0)) return std::vector<std::size_t>{by[0][0]};
  return std::nullopt;
}

ZerosumCertificate certificate(const GroupSpec& g, const std::vector<Occ>& occ, const std::vector<std::size_t>& pos) {
  GroupMultiset sub(g);
  for (auto i : pos) sub.add(occ[i].original);
  return {std::move(sub)};
}

[[noreturn]] void violation(const GroupMultiset& seq) {
  throw TheoremViolation("no zero-sum found in a sequence of length " + std::to_string(seq.size()) + " over " +
                         seq.spec().to_string() + ":\n" + render_sequence(seq));
}

}  // namespace

ZerosumCertificate find_zerosum_3d(const GroupMultiset& seq, SplitStats* stats) {
  const std::uint32_t d = split_modulus(seq.spec());
  if (seq.size() < 3ull * d + 4)
    throw std::invalid_argument("find_zerosum_3d: need at least 3d+4 = " + std::to_string(3 * d + 4) + " elements");
  const GroupSpec& g = seq.spec();
  SplitStats local;
  SplitStats& st = stats ? *stats : local;
  auto checked = [&](ZerosumCertificate c, const char* path) {
    if (!verify_certificate(seq, c)) throw std::logic_error("find_zerosum_3d: invalid certificate");
    st.path = path;
    return c;
  };

  if (seq.count(0)) {
    GroupMultiset one(g);
    one.add(0);
    return checked({std::move(one)}, "identity");
  }

  const SplitSequence s = split(seq);
  const GroupSpec z3 = GroupSpec::elementary(3, 3);
  const auto& occ = s.occurrences;
  std::vector<char> used(occ.size(), 0);
  std::vector<std::vector<std::size_t>> parts;
  // prefix sums of part labels; a repeat closes a zero-sum in G
  std::map<std::uint32_t, std::size_t> seen{{0, 0}};
  std::uint32_t prefix = 0;
  while (auto part = short_part(z3, occ, used)) {
    for (auto i : *part) used[i] = 1;
    parts.push_back(*part);
    std::uint32_t lab = 0;
    for (auto i : *part) lab = (lab + occ[i].label) % d;
    prefix = (prefix + lab) % d;
    ++st.parts;
    if (auto it = seen.find(prefix); it != seen.end()) {
      std::vector<std::size_t> pos;
      for (std::size_t j = it->second; j < parts.size(); ++j) pos.insert(pos.end(), parts[j].begin(), parts[j].end());
      return checked(certificate(g, occ, pos), "greedy");
    }
    seen.emplace(prefix, parts.size());
  }

  // Exact search over atoms: the extracted parts (projected sum 0) and the
  // remaining occurrences.
  std::vector<std::vector<std::size_t>> atoms = parts;
  for (std::size_t i = 0; i < occ.size(); ++i)
    if (!used[i]) atoms.push_back({i});
  if (g.order() <= kernel::kMaxKernelOrder) {
    kernel::GroupOps ops(g);
    std::map<ElemIndex, std::vector<std::size_t>> by_sum;  // G-sum -> atom ids
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      ElemIndex sum = 0;
      for (auto i : atoms[a]) sum = g.add(sum, occ[i].original);
      by_sum[sum].push_back(a);
    }
    std::vector<kernel::Item> items;
    for (auto& [e, ids] : by_sum) items.push_back({e, static_cast<std::uint32_t>(ids.size())});
    if (auto pick = kernel::shortest_selection(ops, items, 0, 1, static_cast<std::uint32_t>(atoms.size()))) {
      std::vector<std::size_t> pos;
      std::size_t k = 0;
      for (auto& [e, ids] : by_sum) {
        for (std::uint32_t c = 0; c < (*pick)[k]; ++c) pos.insert(pos.end(), atoms[ids[c]].begin(), atoms[ids[c]].end());
        ++k;
      }
      return checked(certificate(g, occ, pos), "atoms");
    }
    if (auto c = find_zerosum(seq)) return checked(*c, "direct");
  }
  violation(seq);
}

GroupMultiset zerosum_free_witness_3d(std::uint32_t d) {
  const GroupSpec g = GroupSpec::z33_3d(d);
  split_modulus(g);
  GroupMultiset w(g);
  w.add(g.index_of({1, 0, 0}), 2);
  w.add(g.index_of({0, 1, 0}), 2);
  w.add(g.index_of({0, 0, 1}), 3 * d - 1);
  return w;
}

}  // namespace zsl
