// Acceptance run: one PASS/FAIL line per criterion, indented detail lines.
// All comparisons are exact integers (tolerance 0). Exit status is the number
// of failed criteria.

#include <omp.h>

#include <atomic>
#include <chrono>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "zsl/af.hpp"
#include "zsl/atlas.hpp"
#include "zsl/errors.hpp"
#include "zsl/search.hpp"
#include "zsl/splitting.hpp"
#include "zsl/symmetry.hpp"
#include "zsl/zerosum.hpp"

using namespace zsl;

namespace {

int failures = 0;

void detail(const std::string& s) { std::cout << "    " << s << std::endl; }

void verdict(int n, bool ok, const std::string& what) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << what << std::endl;
  failures += !ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
bool guarded(const char* name, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    detail(std::string(name) + ": exception: " + e.what());
    return false;
  }
}

// 1 -------------------------------------------------------------------------
void table() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  verify_paper_table({}, [&](const TableEntry& t) {
    std::ostringstream os;
    os << (t.pass ? "ok   " : "DIFF ") << t.label << ": expected " << t.expected << ", computed "
       << (t.computed ? std::to_string(*t.computed) : "none") << " (" << t.result.method << ", "
       << static_cast<long>(t.wall_ms) << " ms)";
    if (!t.error.empty()) os << " " << t.error;
    detail(os.str());
    ok = ok && t.pass;
  });
  const double s = seconds_since(t0);
  detail("total " + std::to_string(static_cast<long>(s)) + " s (limit 1800 s)");
  verdict(1, ok && s <= 1800, "Z_3^3 constant table, exact");
}

// 2 -------------------------------------------------------------------------
void classification() {
  bool ok = true;
  const auto eight = classify_distinct_sets(8);
  const auto nine = classify_distinct_sets(9);
  detail("8 distinct points: " + std::to_string(eight.size()) + " orbit(s) (expected 1)");
  detail("9 distinct points: " + std::to_string(nine.size()) + " orbit(s) (expected 0)");
  ok = ok && eight.size() == 1 && nine.empty();
  const auto strict = classify_14_point(false);
  const auto relaxed = classify_14_point(true);
  bool shape = strict.size() == 1;
  for (const auto& f : strict) {
    shape = shape && f.representative.support_size() == 7;
    for (auto [e, c] : f.representative.entries()) shape = shape && c == 2;
  }
  detail("14 points: " + std::to_string(strict.size()) + " orbit(s) (expected 1, support 7, all multiplicities 2); " +
         std::to_string(relaxed.size()) + " without the long-zero-sum condition");
  ok = ok && shape;
  const auto five = check_five_point_lemma();
  detail("five-point lemma: " + std::to_string(five.sets_checked) + " sets, " + std::to_string(five.violators.size()) +
         " violator(s)");
  ok = ok && five.violators.empty();
  verdict(2, ok, "classifications over Z_3^3");
}

// 3 -------------------------------------------------------------------------
bool af_filter(AfFilter filter, bool& counts_ok) {
  const auto rep = verify_af_theorem(filter);
  const bool paper = filter == AfFilter::PaperCaseViii;
  if (paper) {
    const auto& p = rep.paper;
    detail("restricted filter: raw " + std::to_string(p.raw) + " (expected 84), rotated " + std::to_string(p.rotated_c3) +
           " (expected 41), orbits " + std::to_string(p.orbits_rotated) + " (expected 16); with a diagonal point " +
           std::to_string(p.with_diagonal_pair) + ", orbits over all raw " + std::to_string(p.orbits_total));
    counts_ok = p.raw == 84 && p.rotated_c3 == 41 && p.orbits_rotated == 16;
    std::set<std::string> ours, listed;
    for (const auto& c : orbit_dedupe(rep.enumeration.rotated)) ours.insert(c.form.representative.encode());
    for (const auto& a : case_viii_table()) listed.insert(canonical_form(a).representative.encode());
    detail(std::string("listed 16 cases ") + (ours == listed ? "coincide" : "DIFFER") + " with the computed orbits");
  }
  bool certs = true, oracle_ok = true;
  std::uint64_t anchors = 0;
  for (std::size_t i = 0; i < rep.verdicts.size(); ++i) {
    const auto& cand = rep.enumeration.candidates[i];
    for (const auto& a : rep.verdicts[i].anchors) {
      ++anchors;
      if (a.generic || a.obstruction == 0) certs = false;
      for (const auto& p : a.feasible_primes) certs = certs && (p == 2 || p == 3);
      const auto sys = build_system(cand, cand.a.spec().element(a.anchor));
      for (std::uint64_t p : {5, 7})
        oracle_ok = oracle_ok && a.feasible == false &&
                    oracle::brute_solution(sys.M, sys.c, p).has_value() == false;
    }
  }
  detail(std::string(paper ? "restricted" : "full") + " filter: " + std::to_string(rep.candidates) + " candidate orbits, " +
         std::to_string(anchors) + " anchor systems, " + std::to_string(rep.violations) + " violation(s); certificates " +
         (certs ? "ok" : "BAD") + "; Z_5/Z_7 brute force " + (oracle_ok ? "agrees" : "DISAGREES"));
  return rep.violations == 0 && certs && oracle_ok;
}

void af() {
  bool counts = false;
  const bool paper = af_filter(AfFilter::PaperCaseViii, counts);
  bool unused = true;
  const bool full = af_filter(AfFilter::Full, unused);
  const auto br = bracket_coefficient_tables();
  detail(std::string("bracket tables and case matrices ") + (br.ok() ? "ok" : "BAD"));
  verdict(3, counts && paper && full, "labelling obstruction (reference counts, 0 violations, primes in {2,3}, oracle)");
}

// 4 -------------------------------------------------------------------------
GroupMultiset adversarial(const GroupSpec& g, std::uint32_t len, std::mt19937_64& rng, int kind) {
  const std::uint32_t d = g.factor(2) / 3;
  GroupMultiset a(g);
  switch (kind) {
    case 0:  // uniform
      return oracle::random_multiset(g, len, rng);
    case 1: {  // few distinct elements
      std::vector<ElemIndex> pool(1 + rng() % 4);
      for (auto& x : pool) x = 1 + rng() % (g.order() - 1);
      for (std::uint32_t i = 0; i < len; ++i) a.add(pool[rng() % pool.size()]);
      return a;
    }
    case 2: {  // last coordinate concentrated on a few residues, projection spread out
      std::vector<std::uint32_t> zs(1 + rng() % 3);
      for (auto& z : zs) z = rng() % (3 * d);
      for (std::uint32_t i = 0; i < len; ++i)
        a.add(g.index_of({static_cast<std::uint32_t>(rng() % 3), static_cast<std::uint32_t>(rng() % 3),
                          zs[rng() % zs.size()]}));
      return a;
    }
    default: {  // witness plus one element, then multiplied by a unit
      a = zerosum_free_witness_3d(d);
      a.add(rng() % g.order());
      const std::uint64_t u = [&] {
        for (;;) {
          const std::uint64_t v = 1 + rng() % (3 * d - 1);
          if (std::gcd(v, std::uint64_t{3} * d) == 1) return v;
        }
      }();
      GroupMultiset b(g);
      for (auto [e, c] : a.entries()) b.add(g.scale(e, u), c);
      return b;
    }
  }
}

void splitting() {
  bool ok = true;
  for (std::uint32_t d : {5u, 7u}) {
    const GroupSpec g = GroupSpec::z33_3d(d);
    const long n = 10000;
    std::atomic<long> hard{0}, bad{0}, greedy{0}, atoms{0};
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < n; ++i) {
      std::mt19937_64 rng(1000003ull * d + static_cast<std::uint64_t>(i));
      const auto a = adversarial(g, 3 * d + 4, rng, static_cast<int>(i % 4));
      try {
        SplitStats st;
        const auto c = find_zerosum_3d(a, &st);
        if (!verify_certificate(a, c)) ++bad;
        if (st.path == "greedy") ++greedy;
        if (st.path == "atoms") ++atoms;
      } catch (const TheoremViolation&) {
        ++hard;
      }
    }
    detail("d=" + std::to_string(d) + ": " + std::to_string(n) + " sequences of length " + std::to_string(3 * d + 4) +
           ", hard failures " + std::to_string(hard.load()) + ", invalid " + std::to_string(bad.load()) +
           " (greedy " + std::to_string(greedy.load()) + ", exact over parts " + std::to_string(atoms.load()) + ")");
    ok = ok && hard == 0 && bad == 0;
  }
  bool witnesses = true;
  for (std::uint32_t d = 1; d <= 11; ++d) {
    if (d % 3 == 0) continue;
    const auto w = zerosum_free_witness_3d(d);
    witnesses = witnesses && w.size() == 3 * d + 3 && !min_zerosum_length(w);
  }
  detail(std::string("witnesses of length 3d+3 zero-sum free for d <= 11: ") + (witnesses ? "yes" : "NO"));
  std::uint32_t ext = 0;
  const auto w5 = zerosum_free_witness_3d(5);
  for (ElemIndex x = 0; x < 135; ++x) {
    GroupMultiset a = w5;
    a.add(x);
    ext += guarded("extension", [&] { return verify_certificate(a, find_zerosum_3d(a)); });
  }
  detail("d=5 witness extensions with a certificate: " + std::to_string(ext) + "/135");
  verdict(4, ok && witnesses && ext == 135, "splitting solver");
}

// 5 -------------------------------------------------------------------------
void properties() {
  std::mt19937_64 rng(5);
  bool laws = true;
  for (const auto& g : {GroupSpec({3, 3, 3}), GroupSpec({3, 3, 15}), GroupSpec({2, 4}), GroupSpec({9})})
    for (int t = 0; t < 2000; ++t) {
      const ElemIndex a = rng() % g.order(), b = rng() % g.order(), c = rng() % g.order();
      laws = laws && g.add(a, b) == g.add(b, a) && g.add(g.add(a, b), c) == g.add(a, g.add(b, c)) &&
             g.add(a, 0) == a && g.add(a, g.neg(a)) == 0;
    }
  detail(std::string("group laws: ") + (laws ? "ok" : "BROKEN"));

  bool sound = true;
  std::uint64_t certs = 0;
  for (int t = 0; t < 300; ++t) {
    const auto a = oracle::random_multiset(GroupSpec({3, 3, 3}), 1 + rng() % 16, rng);
    std::vector<ZerosumCertificate> out;
    if (auto c = find_zerosum(a)) out.push_back(*c);
    for (auto& p : max_disjoint_zerosums(a).parts) out.push_back(std::move(p));
    for (auto& s : all_zerosum_subsets(a)) out.push_back({std::move(s)});
    for (const auto& c : out) sound = sound && verify_certificate(a, c);
    certs += out.size();
  }
  detail("certificate soundness: " + std::to_string(certs) + " certificates, " + (sound ? "all valid" : "INVALID"));

  bool invariant = true;
  for (int inst = 0; inst < 50; ++inst) {
    const auto a = oracle::random_multiset(GroupSpec({3, 3, 3}), 1 + rng() % 16, rng);
    const auto rep = canonical_form(a).representative;
    invariant = invariant && rep == canonical_form_reference(a).representative;
    for (int t = 0; t < 100; ++t) invariant = invariant && canonical_form(apply_map(random_gl(3, 3, rng), a)).representative == rep;
  }
  detail(std::string("canonical form under 100 random maps x 50 instances: ") + (invariant ? "invariant" : "NOT invariant"));

  bool snf = true;
  auto snf_ok = [](const IntMatrix& m) {
    const auto s = smith_normal_form(m);
    const auto du = determinant(s.U), dv = determinant(s.V);
    bool ok = s.U * m * s.V == s.D && (du == 1 || du == -1) && (dv == 1 || dv == -1);
    const auto d = s.diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i) ok = ok && d[i + 1] % d[i] == 0;
    return ok;
  };
  for (int t = 0; t < 200; ++t) {
    IntMatrix m(1 + rng() % 8, 1 + rng() % 8);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = static_cast<int>(rng() % 13) - 6;
    snf = snf && snf_ok(m);
  }
  for (const auto& cand : enumerate_af_candidates(AfFilter::Full).candidates)
    snf = snf && snf_ok(build_system(cand, cand.a.spec().element(cand.a.support().front())).M);
  detail(std::string("SNF reconstruction with unimodular U, V: ") + (snf ? "ok" : "FAILED"));

  bool oracle_eq = true;
  const GroupSpec z33({3, 3});
  for (int t = 0; t < 500; ++t) {
    const auto a = oracle::random_multiset(z33, rng() % 13, rng);
    const std::uint32_t picks = rng() % 6;
    std::set<std::vector<std::uint32_t>> rep;
    for (const auto& e : representable_sums(a, picks)) rep.insert(e.coords());
    oracle_eq = oracle_eq && min_zerosum_length(a) == oracle::min_len(a) && max_zerosum_length(a) == oracle::max_len(a) &&
                max_disjoint_zerosums(a).count == oracle::packing(a) &&
                all_zerosum_subsets(a).size() == oracle::count_zerosums(a) && rep == oracle::representable(a, picks);
  }
  detail(std::string("engine vs naive enumeration, 500 multisets over Z_3^2: ") + (oracle_eq ? "agree" : "DISAGREE"));

  bool dav = true;
  for (auto [spec, expect] : std::vector<std::pair<GroupSpec, std::uint32_t>>{
           {GroupSpec({2, 2, 2}), 4}, {GroupSpec({3, 3}), 5}, {GroupSpec({9}), 9}}) {
    const auto brute = oracle::davenport(spec);
    const auto engine = compute_constant({spec, Family::D, std::nullopt}).value;
    detail("D(" + spec.to_string() + "): brute force " + std::to_string(brute) + ", engine " + std::to_string(engine) +
           ", expected " + std::to_string(expect));
    dav = dav && brute == expect && engine == expect;
  }
  verdict(5, laws && sound && invariant && snf && oracle_eq && dav, "property suites");
}

}  // namespace

int main() {
  std::cout << "acceptance (threads: " << omp_get_max_threads() << ")" << std::endl;
  const std::vector<void (*)()> steps{table, classification, af, splitting, properties};
  for (std::size_t i = 0; i < steps.size(); ++i)
    if (!guarded("run", [&] { steps[i](); return true; })) verdict(static_cast<int>(i + 1), false, "aborted");
  std::cout << failures << " criterion(s) failed" << std::endl;
  return failures;
}
