#include "zsl/symmetry.hpp"

#include <algorithm>
#include <exception>
#include <map>

#include "zsl/errors.hpp"

namespace zsl {

LinearMap LinearMap::identity(std::size_t r, std::uint32_t p) {
  LinearMap out{p, r, std::vector<std::uint32_t>(r * r, 0)};
  for (std::size_t i = 0; i < r; ++i) out.m[i * r + i] = 1;
  return out;
}

ElemIndex LinearMap::apply(const GroupSpec& spec, ElemIndex x) const {
  auto c = spec.coords_of(x);
  std::vector<std::uint32_t> y(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < r; ++j) s += std::uint64_t{at(i, j)} * c[j];
    y[i] = static_cast<std::uint32_t>(s % p);
  }
  return spec.index_of(y);
}

namespace {

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

void require_elementary(const GroupSpec& spec, const char* what) {
  if (!spec.is_elementary()) throw SpecMismatch(std::string(what) + ": group " + spec.to_string() + " is not elementary abelian");
}

}  // namespace

std::uint32_t LinearMap::det() const {
  std::vector<std::uint64_t> a(m.begin(), m.end());
  std::uint64_t d = 1;
  for (std::size_t col = 0; col < r; ++col) {
    std::size_t piv = col;
    while (piv < r && a[piv * r + col] == 0) ++piv;
    if (piv == r) return 0;
    if (piv != col) {
      for (std::size_t j = 0; j < r; ++j) std::swap(a[piv * r + j], a[col * r + j]);
      d = (p - d) % p;
    }
    d = d * a[col * r + col] % p;
    const std::uint64_t inv = inv_mod(a[col * r + col], p);
    for (std::size_t i = col + 1; i < r; ++i) {
      const std::uint64_t f = a[i * r + col] * inv % p;
      if (!f) continue;
      for (std::size_t j = col; j < r; ++j) a[i * r + j] = (a[i * r + j] + (p - f) * a[col * r + j]) % p;
    }
  }
  return static_cast<std::uint32_t>(d);
}

std::uint64_t gl_order(std::size_t r, std::uint32_t p) {
  unsigned __int128 pr = 1;
  for (std::size_t i = 0; i < r; ++i) pr *= p;
  unsigned __int128 out = 1, pi = 1;
  for (std::size_t i = 0; i < r; ++i) {
    out *= (pr - pi);
    if (out > UINT64_MAX) throw BudgetExceeded("|GL(r,p)| exceeds 64 bits");
    pi *= p;
  }
  return static_cast<std::uint64_t>(out);
}

std::vector<LinearMap> enumerate_gl(std::size_t r, std::uint32_t p) {
  const GroupSpec spec = GroupSpec::elementary(p, r);
  if (spec.order() > kMaxSymmetryOrder) throw BudgetExceeded("enumerate_gl: p^r exceeds 4096");
  if (gl_order(r, p) > kMaxGlEnumeration) throw BudgetExceeded("enumerate_gl: |GL| exceeds enumeration limit");
  const std::uint32_t n = static_cast<std::uint32_t>(spec.order());
  std::vector<LinearMap> out;
  std::vector<ElemIndex> cols(r);
  std::vector<std::vector<char>> span(r + 1, std::vector<char>(n, 0));
  span[0][0] = 1;
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == r) {
      LinearMap m{p, r, std::vector<std::uint32_t>(r * r)};
      for (std::size_t c = 0; c < r; ++c) {
        auto v = spec.coords_of(cols[c]);
        for (std::size_t i = 0; i < r; ++i) m.m[i * r + c] = v[i];
      }
      out.push_back(std::move(m));
      return;
    }
    for (ElemIndex v = 1; v < n; ++v) {
      if (span[j][v]) continue;
      cols[j] = v;
      auto& next = span[j + 1];
      std::fill(next.begin(), next.end(), 0);
      for (ElemIndex s = 0; s < n; ++s) {
        if (!span[j][s]) continue;
        ElemIndex w = s;
        for (std::uint32_t c = 0; c < p; ++c) {
          next[w] = 1;
          w = spec.add(w, v);
        }
      }
      self(self, j + 1);
    }
  };
  rec(rec, 0);
  return out;
}

GroupMultiset apply_map(const LinearMap& m, const GroupMultiset& a) {
  const GroupSpec& spec = a.spec();
  require_elementary(spec, "apply_map");
  if (spec.rank() != m.r || spec.elementary_prime() != m.p) throw SpecMismatch("apply_map: map does not match group");
  GroupMultiset out(spec);
  for (auto [e, c] : a.entries()) out.add(m.apply(spec, e), c);
  return out;
}

std::uint64_t CanonicalForm::orbit_size() const {
  const GroupSpec& spec = representative.spec();
  if (!spec.is_elementary() || spec.order() > kMaxSymmetryOrder) return 1;
  return gl_order(spec.rank(), spec.elementary_prime()) / stabilizer_size;
}

Canonizer::Canonizer(GroupSpec spec) : spec_(std::move(spec)) {
  if (spec_.is_elementary() && spec_.order() <= kMaxSymmetryOrder) {
    prime_ = spec_.elementary_prime();
    rank_ = spec_.rank();
    gl_order_ = gl_order(rank_, prime_);
    const auto n = static_cast<std::uint32_t>(spec_.order());
    if (n <= 256) {
      table_.resize(std::size_t{n} * n);
      for (ElemIndex a = 0; a < n; ++a)
        for (ElemIndex b = 0; b < n; ++b) table_[a * n + b] = static_cast<std::uint16_t>(spec_.add(a, b));
    }
  }
}

Canonizer::Result Canonizer::canon(std::span<const std::uint32_t> mult) const {
  const std::uint32_t n = static_cast<std::uint32_t>(spec_.order());
  if (mult.size() != n) throw std::invalid_argument("Canonizer: count vector has wrong length");
  if (trivial()) return {std::vector<std::uint32_t>(mult.begin(), mult.end()), 1};

  const std::uint32_t p = prime_;
  // Survivors are partial maps stored as images of positions [0, p^l).
  std::vector<std::vector<ElemIndex>> alive{{0}};
  std::vector<std::uint32_t> best, seg;
  std::vector<char> in_span(n);
  std::uint32_t base = 1;
  for (std::size_t level = 1; level <= rank_; ++level) {
    std::vector<std::vector<ElemIndex>> next;
    best.clear();
    for (const auto& img : alive) {
      std::fill(in_span.begin(), in_span.end(), 0);
      for (ElemIndex y : img) in_span[y] = 1;
      for (ElemIndex v = 1; v < n; ++v) {
        if (in_span[v]) continue;
        // compare segment values A(c v + img[y]) against the best so far
        seg.clear();
        int cmp = best.empty() ? -1 : 0;
        ElemIndex cv = 0;
        for (std::uint32_t c = 1; c < p && cmp <= 0; ++c) {
          cv = add(cv, v);
          for (std::uint32_t y = 0; y < base; ++y) {
            const std::uint32_t val = mult[add(cv, img[y])];
            if (cmp == 0) {
              const std::uint32_t b = best[seg.size()];
              if (val > b) {
                cmp = 1;
                break;
              }
              if (val < b) cmp = -1;
            }
            seg.push_back(val);
          }
        }
        if (cmp > 0) continue;
        if (cmp < 0) {
          best = seg;
          next.clear();
        }
        if (next.size() >= kMaxCandidates) throw BudgetExceeded("canonical form: too many tied partial maps");
        std::vector<ElemIndex> ext(std::size_t{base} * p);
        std::copy(img.begin(), img.end(), ext.begin());
        cv = 0;
        for (std::uint32_t c = 1; c < p; ++c) {
          cv = add(cv, v);
          for (std::uint32_t y = 0; y < base; ++y) ext[c * base + y] = add(cv, img[y]);
        }
        next.push_back(std::move(ext));
      }
    }
    alive = std::move(next);
    base *= p;
  }
  Result res;
  res.rep.resize(n);
  for (ElemIndex y = 0; y < n; ++y) res.rep[y] = mult[alive.front()[y]];
  res.stabilizer = alive.size();
  return res;
}

std::vector<std::uint32_t> dense_counts(const GroupMultiset& a) {
  if (a.spec().order() > GroupMultiset::kDenseLimit) throw BudgetExceeded("dense_counts: group too large");
  std::vector<std::uint32_t> out(a.spec().order(), 0);
  for (auto [e, c] : a.entries()) out[e] = c;
  return out;
}

GroupMultiset from_dense(const GroupSpec& spec, std::span<const std::uint32_t> counts) {
  GroupMultiset out(spec);
  for (ElemIndex e = 0; e < counts.size(); ++e)
    if (counts[e]) out.add(e, counts[e]);
  return out;
}

CanonicalForm canonical_form(const GroupMultiset& a) {
  require_elementary(a.spec(), "canonical_form");
  if (a.spec().order() > kMaxSymmetryOrder) throw BudgetExceeded("canonical_form: order exceeds 4096");
  Canonizer cz(a.spec());
  auto r = cz.canon(dense_counts(a));
  return {from_dense(a.spec(), r.rep), r.stabilizer};
}

CanonicalForm canonical_form_reference(const GroupMultiset& a) {
  const GroupSpec& spec = a.spec();
  require_elementary(spec, "canonical_form_reference");
  auto maps = enumerate_gl(spec.rank(), spec.elementary_prime());
  const auto mult = dense_counts(a);
  const std::uint32_t n = static_cast<std::uint32_t>(spec.order());
  // image tables: v_g[y] = A(g y)
  std::vector<std::uint32_t> best;
  std::uint64_t ties = 0;
  std::vector<ElemIndex> img(n);
  for (const auto& g : maps) {
    // g is linear, so images of basis vectors determine everything
    std::vector<ElemIndex> basis(spec.rank());
    for (std::size_t j = 0; j < spec.rank(); ++j) {
      std::vector<std::uint32_t> e(spec.rank(), 0);
      e[j] = 1;
      basis[j] = g.apply(spec, spec.index_of(e));
    }
    int cmp = best.empty() ? -1 : 0;
    std::vector<std::uint32_t> vec;
    vec.reserve(n);
    for (ElemIndex y = 0; y < n; ++y) {
      auto c = spec.coords_of(y);
      ElemIndex im = 0;
      for (std::size_t j = 0; j < spec.rank(); ++j) im = spec.add(im, spec.scale(basis[j], c[j]));
      const std::uint32_t val = mult[im];
      if (cmp == 0) {
        if (val > best[y]) {
          cmp = 1;
          break;
        }
        if (val < best[y]) cmp = -1;
      }
      vec.push_back(val);
    }
    if (cmp > 0) continue;
    if (cmp < 0) {
      best = std::move(vec);
      ties = 0;
    }
    ++ties;
  }
  return {from_dense(spec, best), ties};
}

namespace {

std::vector<OrbitClass> merge_forms(const GroupSpec& spec, std::vector<Canonizer::Result>& results) {
  std::map<std::vector<std::uint32_t>, OrbitClass> classes;
  for (auto& r : results) {
    auto it = classes.find(r.rep);
    if (it == classes.end()) {
      CanonicalForm f{from_dense(spec, r.rep), r.stabilizer};
      it = classes.emplace(std::move(r.rep), OrbitClass{std::move(f), 0}).first;
    }
    ++it->second.occurrences;
  }
  std::vector<OrbitClass> out;
  out.reserve(classes.size());
  for (auto& [k, v] : classes) out.push_back(std::move(v));
  return out;
}

void check_uniform(const std::vector<GroupMultiset>& sets) {
  for (const auto& s : sets)
    if (!(s.spec() == sets.front().spec())) throw SpecMismatch("orbit_dedupe: mixed groups");
  require_elementary(sets.front().spec(), "orbit_dedupe");
}

}  // namespace

std::vector<OrbitClass> orbit_dedupe(const std::vector<GroupMultiset>& sets) {
  if (sets.empty()) return {};
  check_uniform(sets);
  Canonizer cz(sets.front().spec());
  std::vector<Canonizer::Result> results(sets.size());
  const long n = static_cast<long>(sets.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) {
    try {
      results[i] = cz.canon(dense_counts(sets[i]));
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return merge_forms(cz.spec(), results);
}

std::vector<OrbitClass> orbit_dedupe_serial(const std::vector<GroupMultiset>& sets) {
  if (sets.empty()) return {};
  check_uniform(sets);
  Canonizer cz(sets.front().spec());
  std::vector<Canonizer::Result> results;
  results.reserve(sets.size());
  for (const auto& s : sets) results.push_back(cz.canon(dense_counts(s)));
  return merge_forms(cz.spec(), results);
}

}  // namespace zsl
