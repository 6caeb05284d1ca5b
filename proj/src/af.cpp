#include "zsl/af.hpp"

#include <algorithm>
#include <exception>
#include <set>

#include "zsl/errors.hpp"
#include "zsl/kernels.hpp"
#include "zsl/search.hpp"
#include "zsl/symmetry.hpp"
#include "zsl/zerosum.hpp"

namespace zsl {

AfFilter parse_af_filter(std::string_view s) {
  if (s == "paper") return AfFilter::PaperCaseViii;
  if (s == "full") return AfFilter::Full;
  throw std::invalid_argument("unknown filter '" + std::string(s) + "' (paper|full)");
}

namespace {

const GroupSpec& z333() {
  static const GroupSpec g = GroupSpec::elementary(3, 3);
  return g;
}

ElemIndex pt(std::uint32_t a, std::uint32_t b, std::uint32_t c) { return z333().index_of({a, b, c}); }

bool lengths_ok(const GroupMultiset& a) {
  kernel::GroupOps ops(a.spec());
  auto items = kernel::items_of(a);
  if (kernel::has_zerosum_up_to(ops, items, 3)) return false;
  auto mx = kernel::max_zerosum_len(ops, items);
  return !mx || *mx <= 7;
}

bool packing_le_one(const GroupMultiset& a) {
  kernel::GroupOps ops(a.spec());
  kernel::PackingSolver solver(ops, kernel::items_of(a));
  return !solver.at_least(2);
}

// Coordinate permutation applied to an element index.
ElemIndex permute(ElemIndex x, const std::array<int, 3>& perm) {
  auto c = z333().coords_of(x);
  return z333().index_of({c[perm[0]], c[perm[1]], c[perm[2]]});
}

GroupMultiset permute(const GroupMultiset& a, const std::array<int, 3>& perm) {
  GroupMultiset out(a.spec());
  for (auto [e, c] : a.entries()) out.add(permute(e, perm), c);
  return out;
}

std::vector<AfCandidate> orbit_candidates(const std::vector<GroupMultiset>& sets) {
  std::vector<AfCandidate> out;
  for (auto& cls : orbit_dedupe(sets)) {
    AfCandidate c;
    c.a = cls.form.representative;
    c.zerosum_subsets = all_zerosum_subsets(c.a);
    c.orbit_size = cls.form.orbit_size();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

bool is_af_candidate(const GroupMultiset& a) {
  if (!(a.spec() == z333()) || a.size() != 10) return false;
  auto mn = min_zerosum_length(a);
  auto mx = max_zerosum_length(a);
  if (mn && *mn <= 3) return false;
  if (mx && *mx >= 8) return false;
  return max_disjoint_zerosums(a).count <= 1;
}

AfEnumeration enumerate_af_candidates(AfFilter filter) {
  AfEnumeration en;
  en.filter = filter;
  const GroupSpec& g = z333();
  if (filter == AfFilter::Full) {
    // packing <= 1 is inherited by sub-multisets; the length conditions are not
    auto ls = grow_levels(g, 10, false, packing_le_one);
    std::vector<GroupMultiset> sets;
    if (ls.levels.size() > 10)
      for (const auto& key : ls.levels[10]) {
        auto a = key_to_multiset(g, key);
        if (lengths_ok(a)) sets.push_back(std::move(a));
      }
    en.candidates = orbit_candidates(sets);
    return en;
  }

  const std::array<ElemIndex, 3> basis{pt(0, 0, 1), pt(0, 1, 0), pt(1, 0, 0)};
  std::vector<ElemIndex> others;
  for (ElemIndex x = 1; x < 27; ++x)
    if (std::find(basis.begin(), basis.end(), x) == basis.end()) others.push_back(x);
  const std::size_t n = others.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          GroupMultiset a(g);
          for (auto b : basis) a.add(b, 2);
          for (auto s : {others[i], others[j], others[k], others[l]}) a.add(s);
          if (lengths_ok(a) && packing_le_one(a)) en.raw.push_back(std::move(a));
        }
  auto& pc = en.paper;
  pc.raw = en.raw.size();
  const ElemIndex d011 = pt(0, 1, 1), d101 = pt(1, 0, 1), d110 = pt(1, 1, 0);
  const std::vector<std::array<int, 3>> c3{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  const std::vector<std::array<int, 3>> s3{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  auto rotate_into = [&](const std::vector<std::array<int, 3>>& grp) {
    std::set<std::string> seen;
    std::vector<GroupMultiset> out;
    for (const auto& a : en.raw)
      for (const auto& perm : grp) {
        GroupMultiset b = permute(a, perm);
        if (b.count(d011) && seen.insert(b.encode()).second) out.push_back(std::move(b));
      }
    return out;
  };
  for (const auto& a : en.raw)
    if (a.count(d011) || a.count(d101) || a.count(d110)) ++pc.with_diagonal_pair;
  en.rotated = rotate_into(c3);
  pc.rotated_c3 = en.rotated.size();
  pc.rotated_s3 = rotate_into(s3).size();
  pc.orbits_rotated = en.rotated.empty() ? 0 : orbit_dedupe(en.rotated).size();
  en.candidates = orbit_candidates(en.raw);
  pc.orbits_total = en.candidates.size();
  return en;
}

std::vector<GroupMultiset> case_viii_table() {
  static const std::array<std::array<std::array<std::uint32_t, 3>, 4>, 16> rows{{
      {{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}}}, {{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 2}}},
      {{{0, 1, 1}, {1, 0, 1}, {1, 1, 1}, {1, 1, 2}}}, {{{0, 1, 1}, {1, 0, 1}, {1, 1, 1}, {1, 2, 0}}},
      {{{0, 1, 1}, {1, 0, 1}, {1, 1, 2}, {1, 2, 2}}}, {{{0, 1, 1}, {1, 0, 1}, {1, 2, 0}, {1, 2, 1}}},
      {{{0, 1, 1}, {1, 0, 1}, {1, 2, 0}, {1, 2, 2}}}, {{{0, 1, 1}, {1, 0, 1}, {1, 2, 1}, {1, 2, 2}}},
      {{{0, 1, 1}, {1, 0, 2}, {1, 1, 1}, {1, 1, 2}}}, {{{0, 1, 1}, {1, 0, 2}, {1, 1, 1}, {1, 2, 1}}},
      {{{0, 1, 1}, {1, 0, 2}, {1, 2, 0}, {1, 2, 1}}}, {{{0, 1, 1}, {1, 0, 2}, {1, 2, 0}, {1, 2, 2}}},
      {{{0, 1, 1}, {1, 0, 2}, {1, 2, 1}, {1, 2, 2}}}, {{{0, 1, 1}, {1, 0, 2}, {2, 1, 0}, {2, 1, 1}}},
      {{{0, 1, 1}, {1, 0, 2}, {2, 1, 0}, {2, 1, 2}}}, {{{0, 1, 1}, {1, 0, 2}, {2, 1, 1}, {2, 1, 2}}},
  }};
  std::vector<GroupMultiset> out;
  for (const auto& row : rows) {
    GroupMultiset a(z333());
    for (auto b : {pt(0, 0, 1), pt(0, 1, 0), pt(1, 0, 0)}) a.add(b, 2);
    for (const auto& x : row) a.add(pt(x[0], x[1], x[2]));
    out.push_back(std::move(a));
  }
  return out;
}

AfSystem build_system(const AfCandidate& cand, const GroupElement& anchor) {
  const ElemIndex a = anchor.index();
  if (!(anchor.spec() == cand.a.spec()) || cand.a.count(a) == 0)
    throw std::invalid_argument("build_system: anchor " + anchor.to_string() + " not in the support");
  AfSystem sys;
  sys.variables = cand.a.support();
  sys.anchor = a;
  const std::size_t nv = sys.variables.size();
  sys.M = IntMatrix(cand.zerosum_subsets.size() + 1, nv);
  for (std::size_t r = 0; r < cand.zerosum_subsets.size(); ++r)
    for (std::size_t v = 0; v < nv; ++v) sys.M(r, v) = cand.zerosum_subsets[r].count(sys.variables[v]);
  const std::size_t ar = cand.zerosum_subsets.size();
  for (std::size_t v = 0; v < nv; ++v)
    if (sys.variables[v] == a) sys.M(ar, v) = 3;
  sys.c.assign(ar + 1, 1);
  return sys;
}

AnchorVerdict verify_anchor(const AfCandidate& cand, ElemIndex anchor) {
  auto sys = build_system(cand, cand.a.spec().element(anchor));
  auto v = solvable_coprime_to(sys.M, sys.c, {2, 3});
  AnchorVerdict out;
  out.anchor = anchor;
  out.feasible = v.feasible;
  out.generic = v.generic_feasible;
  out.obstruction = v.obstruction;
  out.feasible_primes = v.feasible_primes;
  out.witness_prime = v.witness_prime;
  if (v.witness_prime && *v.witness_prime <= UINT64_MAX)
    out.witness_f = v.solution_mod(static_cast<std::uint64_t>(*v.witness_prime));
  return out;
}

bool CandidateVerdict::violation() const {
  return std::any_of(anchors.begin(), anchors.end(), [](const AnchorVerdict& a) { return a.feasible; });
}

CandidateVerdict verify_candidate(const AfCandidate& cand) {
  CandidateVerdict cv;
  for (ElemIndex a : cand.a.support()) cv.anchors.push_back(verify_anchor(cand, a));
  return cv;
}

AfReport verify_af_theorem(AfFilter filter) {
  AfReport rep;
  rep.filter = filter;
  rep.enumeration = enumerate_af_candidates(filter);
  rep.paper = rep.enumeration.paper;
  const auto& cands = rep.enumeration.candidates;
  rep.candidates = cands.size();
  rep.verdicts.resize(cands.size());
  std::exception_ptr err;
  const long n = static_cast<long>(cands.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      rep.verdicts[i] = verify_candidate(cands[i]);
      rep.verdicts[i].index = static_cast<std::size_t>(i);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  for (const auto& v : rep.verdicts) {
    rep.anchors_checked += v.anchors.size();
    if (v.violation()) ++rep.violations;
  }
  return rep;
}

namespace {

long lift(long x) { return ((x % 3) + 3) % 3; }

}  // namespace

std::array<std::array<long, 3>, 2> bracket_rows(const std::vector<std::uint32_t>& point) {
  std::array<std::array<long, 3>, 2> rows{};
  for (int i = 0; i < 3; ++i) {
    const long a = point.at(i);
    rows[0][i] = (1 - lift(-a) + lift(-1 - a)) / 3;
    rows[1][i] = (2 - lift(-a) + lift(-2 - a)) / 3;
  }
  return rows;
}

std::vector<std::array<std::vector<std::uint32_t>, 2>> case_vi_points() {
  return {{std::vector<std::uint32_t>{0, 2, 1}, std::vector<std::uint32_t>{2, 1, 0}},
          {std::vector<std::uint32_t>{1, 1, 0}, std::vector<std::uint32_t>{1, 2, 1}},
          {std::vector<std::uint32_t>{1, 1, 0}, std::vector<std::uint32_t>{1, 0, 1}}};
}

BracketReport bracket_coefficient_tables() {
  BracketReport rep;
  for (long a = 0; a < 3; ++a) {
    rep.tables[0][a] = (1 - lift(-a) + lift(-1 - a)) / 3;
    rep.tables[1][a] = (2 - lift(-a) + lift(-2 - a)) / 3;
    rep.tables[2][a] = (2 + lift(-a) - lift(-1 - a)) / 3;
  }
  rep.expected = {{{1, 0, 0}, {1, 0, 1}, {0, 1, 1}}};
  rep.tables_match = rep.tables == rep.expected;

  for (const auto& pair : case_vi_points()) {
    std::vector<std::uint32_t> sum(3);
    for (int i = 0; i < 3; ++i) sum[i] = (pair[0][i] + pair[1][i]) % 3;
    IntMatrix m(6, 3);
    std::size_t r = 0;
    for (const auto& p : {pair[0], pair[1], sum})
      for (const auto& row : bracket_rows(p)) {
        for (int j = 0; j < 3; ++j) m(r, j) = row[j];
        ++r;
      }
    rep.matrices.push_back(std::move(m));
  }
  rep.published = {
      IntMatrix{{1, 0, 0}, {1, 1, 0}, {0, 0, 1}, {1, 0, 1}, {0, 1, 0}, {1, 1, 0}},
      IntMatrix{{0, 0, 1}, {0, 0, 1}, {0, 0, 0}, {0, 1, 0}, {0, 1, 0}, {1, 1, 0}},
      IntMatrix{{0, 0, 1}, {0, 0, 1}, {0, 1, 0}, {0, 1, 0}, {0, 0, 0}, {1, 0, 0}},
  };
  rep.matrices_match = rep.matrices == rep.published;
  rep.ranks_ok = true;
  for (std::uint64_t p : {5, 7, 11, 13}) {
    std::vector<std::size_t> ranks;
    for (const auto& m : rep.matrices) {
      ranks.push_back(rank_mod_p(m, p));
      rep.ranks_ok = rep.ranks_ok && ranks.back() == 3;
    }
    rep.ranks.emplace_back(p, std::move(ranks));
  }
  return rep;
}

}  // namespace zsl
