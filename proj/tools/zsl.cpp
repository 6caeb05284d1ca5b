// zsl: command-line front end.
// Exit codes: 0 ok, 1 violation or mismatch, 2 usage, 3 budget exceeded.

#include <omp.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "zsl/af.hpp"
#include "zsl/atlas.hpp"
#include "zsl/board.hpp"
#include "zsl/cache.hpp"
#include "zsl/errors.hpp"
#include "zsl/report.hpp"
#include "zsl/search.hpp"
#include "zsl/splitting.hpp"
#include "zsl/zerosum.hpp"

using namespace zsl;
using report::Json;

namespace {

constexpr int kOk = 0, kViolation = 1, kUsage = 2, kBudget = 3;

struct Globals {
  std::string group = "3,3,3";
  std::string cache_path;
  bool verify_cache = false;
  int jobs = 0;
  bool json = false;
  bool timing = false;
  bool progress = false;
  std::uint64_t node_budget = SearchOptions{}.node_budget;
};

class Stopwatch {
 public:
  std::optional<double> ms(bool enabled) const {
    if (!enabled) return std::nullopt;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SearchOptions search_options(const Globals& g) {
  SearchOptions opt;
  opt.node_budget = g.node_budget;
  if (g.progress) opt.progress = [](const std::string& s) { std::cerr << "[zsl] " << s << "\n"; };
  return opt;
}

std::unique_ptr<ResultCache> open_cache(const Globals& g) {
  if (g.cache_path.empty()) return nullptr;
  return std::make_unique<ResultCache>(g.cache_path);
}

void emit(const Globals& g, const Json& j, const std::string& text) {
  if (g.json)
    std::cout << report::dump(j);
  else
    std::cout << text;
}

std::string witness_text(const GroupMultiset& a) {
  if (a.spec() == GroupSpec::elementary(3, 3)) return render_board(a);
  return render_sequence(a);
}

// --- subcommands -----------------------------------------------------------

int cmd_constant(const Globals& g, const std::string& family, std::optional<std::uint32_t> k, bool full) {
  ConstantQuery q{GroupSpec::parse(g.group), parse_family(family), k};
  q.validate();
  auto opt = search_options(g);
  opt.full_search = full;
  auto cache = open_cache(g);
  Stopwatch sw;
  ConstantResult r = cached_constant(q, opt, cache.get(), g.verify_cache ? CacheMode::Verify : CacheMode::Use);
  std::ostringstream os;
  os << r.value << "\n";
  emit(g, report::constant_report(q, r, sw.ms(g.timing)), os.str());
  return kOk;
}

int cmd_verify_table(const Globals& g, const std::vector<std::string>& only) {
  auto opt = search_options(g);
  auto cache = open_cache(g);
  auto entries = paper_table_entries();
  if (!only.empty())
    std::erase_if(entries, [&](const TableEntry& t) { return std::find(only.begin(), only.end(), t.label) == only.end(); });
  ResultMemo memo;
  bool budget_hit = false;
  for (auto& t : entries) {
    Stopwatch sw;
    try {
      t.result = cached_constant(t.query, opt, cache.get(), g.verify_cache ? CacheMode::Verify : CacheMode::Use, &memo);
      t.computed = t.result.value;
      t.pass = t.result.value == t.expected;
    } catch (const BudgetExceeded& ex) {
      t.error = ex.what();
      budget_hit = true;
    }
    t.wall_ms = *sw.ms(true);
    if (!g.json) {
      std::cout << (t.pass ? "PASS " : "FAIL ") << t.label << " expected " << t.expected << " computed "
                << (t.computed ? std::to_string(*t.computed) : "-");
      if (g.timing) std::cout << " (" << static_cast<long>(t.wall_ms) << " ms)";
      if (!t.error.empty()) std::cout << " [" << t.error << "]";
      std::cout << std::endl;
    }
  }
  if (g.json) std::cout << report::dump(report::table_report(entries, g.timing));
  const bool all = std::all_of(entries.begin(), entries.end(), [](const TableEntry& t) { return t.pass; });
  if (all) return kOk;
  const bool any_mismatch = std::any_of(entries.begin(), entries.end(), [](const TableEntry& t) { return t.computed && !t.pass; });
  return any_mismatch || !budget_hit ? kViolation : kBudget;
}

int cmd_classify(const Globals& g, const std::string& what, std::uint32_t size, std::uint32_t k,
                 std::optional<std::uint32_t> threshold, bool relaxed, std::optional<std::uint64_t> expect) {
  auto opt = search_options(g);
  Stopwatch sw;
  Json j;
  std::ostringstream os;
  std::uint64_t count = 0;
  bool violated = false;
  auto list_forms = [&](const std::vector<CanonicalForm>& forms) {
    os << forms.size() << " orbit(s)\n";
    for (const auto& f : forms) os << "\norbit size " << f.orbit_size() << "\n" << witness_text(f.representative);
  };
  if (what == "distinct") {
    auto forms = classify_distinct_sets(size, opt);
    count = forms.size();
    list_forms(forms);
    j = report::classify_report("classify distinct size=" + std::to_string(size), forms, sw.ms(g.timing));
  } else if (what == "14-point") {
    auto forms = classify_14_point(relaxed, opt);
    count = forms.size();
    list_forms(forms);
    j = report::classify_report(std::string("classify 14-point") + (relaxed ? " relaxed" : ""), forms, sw.ms(g.timing));
  } else if (what == "five-point") {
    auto r = check_five_point_lemma();
    count = r.violators.size();
    violated = count != 0;
    os << r.sets_checked << " sets checked, " << r.violators.size() << " violator(s)\n";
    for (const auto& v : r.violators) os << "\n" << render_board(v);
    j = report::five_point_report(r, sw.ms(g.timing));
  } else if (what == "family") {
    auto recipes = build_3k5_family(k);
    count = recipes.size();
    os << recipes.size() << " recipe orbit(s) for k=" << k << "\n";
    std::vector<CanonicalForm> forms;
    for (const auto& r : recipes) forms.push_back({r.assembled, 0});
    for (const auto& r : recipes) {
      os << "\nkappa";
      for (auto x : r.kappas) os << " " << x;
      os << "\n" << render_board(r.assembled);
    }
    j = report::classify_report("classify family k=" + std::to_string(k), forms, sw.ms(g.timing));
    for (std::size_t i = 0; i < recipes.size(); ++i) j["witness"][i]["kappas"] = recipes[i].kappas;
  } else if (what == "completeness") {
    ResultMemo memo;
    auto r = verify_3k5_completeness(k, threshold, opt, &memo);
    count = r.found_orbits;
    violated = !r.complete();
    os << "size " << r.size << ", fewer than " << r.threshold << " disjoint zero-sums: " << r.found_orbits
       << " orbit(s) found, " << r.recipe_orbits << " recipe orbit(s)";
    if (r.via_constant) os << " (D_" << r.threshold << " = " << *r.constant_value << ")";
    os << (r.complete() ? ", complete\n" : ", MISMATCH\n");
    for (const auto& u : r.unmatched) os << "\n" << render_board(u);
    j = report::completeness_report(r, sw.ms(g.timing));
  } else {
    throw CLI::ValidationError("classify", "unknown item '" + what + "'");
  }
  if (expect && *expect != count) {
    os << "expected " << *expect << ", got " << count << "\n";
    violated = true;
  }
  if (expect) j["expected"] = *expect;
  emit(g, j, os.str());
  return violated ? kViolation : kOk;
}

int cmd_af_verify(const Globals& g, const std::string& filter_name) {
  const AfFilter filter = parse_af_filter(filter_name);
  Stopwatch sw;
  if (g.progress) std::cerr << "[zsl] enumerating candidates (" << filter_name << ")\n";
  AfReport r = verify_af_theorem(filter);
  if (g.progress)
    std::cerr << "[zsl] " << r.candidates << " candidates, " << r.anchors_checked << " anchor systems solved\n";
  std::ostringstream os;
  if (filter == AfFilter::PaperCaseViii) {
    const auto& p = r.paper;
    os << "raw " << p.raw << "\nwith diagonal pair " << p.with_diagonal_pair << "\nrotated " << p.rotated_c3
       << " (all permutations " << p.rotated_s3 << ")\norbits " << p.orbits_rotated << " (all raw "
       << p.orbits_total << ")\n";
  }
  os << "candidates " << r.candidates << "\nanchors " << r.anchors_checked << "\nviolations " << r.violations << "\n";
  emit(g, report::af_report(r, sw.ms(g.timing)), os.str());
  return r.violations ? kViolation : kOk;
}

int cmd_find_zerosum(const Globals& g, const std::string& input) {
  const GroupSpec spec = GroupSpec::parse(g.group);
  const GroupMultiset seq = parse_sequence(read_input(input), spec);
  Stopwatch sw;
  std::optional<ZerosumCertificate> cert;
  SplitStats stats;
  bool split_path = false;
  try {
    const std::uint32_t d = split_modulus(spec);
    split_path = seq.size() >= 3ull * d + 4;
  } catch (const SpecMismatch&) {
  }
  if (split_path)
    cert = find_zerosum_3d(seq, &stats);
  else
    cert = find_zerosum(seq);
  if (!cert) {
    if (g.json) {
      Json j = report::document("find-zerosum over " + spec.to_string() + " length " + std::to_string(seq.size()));
      std::cout << report::dump(j);
    } else {
      std::cout << "no zero-sum subsequence\n";
    }
    return kViolation;
  }
  emit(g, report::zerosum_report(seq, *cert, split_path ? &stats : nullptr, sw.ms(g.timing)),
       render_sequence(cert->sub));
  return kOk;
}

int cmd_render(const Globals& g, const std::string& input) {
  const GroupMultiset a = parse_sequence(read_input(input), GroupSpec::elementary(3, 3));
  emit(g, report::multiset_json(a), render_board(a));
  return kOk;
}

int cmd_parse(const Globals& g, const std::string& input) {
  const GroupMultiset a = parse_board(read_input(input));
  emit(g, report::multiset_json(a), render_sequence(a));
  return kOk;
}

int cmd_witness(const Globals& g, const std::string& family, std::optional<std::uint32_t> k, bool all) {
  ConstantQuery q{GroupSpec::parse(g.group), parse_family(family), k};
  q.validate();
  auto opt = search_options(g);
  Stopwatch sw;
  ResultMemo memo;
  ConstantResult r = compute_constant(q, opt, &memo);
  std::ostringstream os;
  os << q.to_string() << " = " << r.value << "; witness of size " << r.witness.size() << "\n"
     << witness_text(r.witness);
  Json j = report::constant_report(q, r, sw.ms(g.timing));
  if (all) {
    Json ex = Json::array();
    os << "\n" << r.extremal.size() << " extremal orbit(s)" << (r.orbits_complete ? "" : " (partial)") << "\n";
    for (const auto& e : r.extremal) {
      os << "\n" << witness_text(e);
      ex.push_back(report::multiset_json(e));
    }
    j["extremal"] = std::move(ex);
  }
  emit(g, j, os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zero-sum verification laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", ZSL_VERSION);
  Globals g;
  app.add_option("--group", g.group, "invariant factors, e.g. 3,3,3 or 3,3,15");
  app.add_option("--cache", g.cache_path, "JSON-lines result cache");
  app.add_flag("--verify-cache", g.verify_cache, "recompute and compare against cached values");
  app.add_option("--jobs", g.jobs, "OpenMP threads (default: all)")->check(CLI::NonNegativeNumber);
  app.add_flag("--json", g.json, "print a JSON report");
  app.add_flag("--timing", g.timing, "record wall-clock times (reports stop being reproducible)");
  app.add_flag("--progress", g.progress, "progress on stderr");
  app.add_option("--node-budget", g.node_budget, "search node budget");

  std::function<int()> run;

  auto* constant = app.add_subcommand("constant", "compute one constant");
  std::string family;
  std::optional<std::uint32_t> k;
  bool full = false;
  constant->add_option("--family", family, "D, Dk, Dlen, D*, Dk*, Dlen* (D_k and D^k accepted)")->required();
  constant->add_option("--k", k, "family parameter");
  constant->add_flag("--full-search", full, "D_k: exhaustive search without the bound chain");
  constant->callback([&] { run = [&] { return cmd_constant(g, family, k, full); }; });

  auto* table = app.add_subcommand("verify-table", "recompute the Z_3^3 table");
  std::vector<std::string> only;
  table->add_option("--only", only, "restrict to these labels (D^3, D_2*, D_k(k=4), ...)");
  table->callback([&] { run = [&] { return cmd_verify_table(g, only); }; });

  auto* classify = app.add_subcommand("classify", "classification checks over Z_3^3");
  std::string what;
  std::uint32_t size = 8, ck = 3;
  std::optional<std::uint32_t> threshold;
  std::optional<std::uint64_t> expect;
  bool relaxed = false;
  classify->add_option("item", what, "distinct | 14-point | five-point | family | completeness")->required();
  classify->add_option("--size", size, "distinct: number of points");
  classify->add_option("--k", ck, "family/completeness: k >= 3");
  classify->add_option("--threshold", threshold, "completeness: packing threshold (default k)");
  classify->add_flag("--relaxed", relaxed, "14-point: allow zero-sums of length >= 12");
  classify->add_option("--expect", expect, "exit 1 unless the count matches");
  classify->callback([&] { run = [&] { return cmd_classify(g, what, size, ck, threshold, relaxed, expect); }; });

  auto* af = app.add_subcommand("af-verify", "labelling obstruction for 10-element candidates");
  std::string filter = "paper";
  af->add_option("--filter", filter, "paper | full")->check(CLI::IsMember({"paper", "full"}));
  af->callback([&] { run = [&] { return cmd_af_verify(g, filter); }; });

  auto* fz = app.add_subcommand("find-zerosum", "zero-sum subsequence of a sequence file");
  std::string input;
  fz->add_option("--input", input, "sequence file (a,b,c per line; - for stdin)")->required();
  fz->callback([&] { run = [&] { return cmd_find_zerosum(g, input); }; });

  auto* render = app.add_subcommand("render", "sequence file -> board");
  render->add_option("--input", input, "sequence file over 3,3,3 (- for stdin)")->required();
  render->callback([&] { run = [&] { return cmd_render(g, input); }; });

  auto* parse = app.add_subcommand("parse", "board -> sequence");
  parse->add_option("--input", input, "board file (- for stdin)")->required();
  parse->callback([&] { run = [&] { return cmd_parse(g, input); }; });

  auto* witness = app.add_subcommand("witness", "extremal witnesses of a constant");
  bool all = false;
  witness->add_option("--family", family, "as for constant")->required();
  witness->add_option("--k", k, "family parameter");
  witness->add_flag("--all", all, "list every extremal orbit found");
  witness->callback([&] { run = [&] { return cmd_witness(g, family, k, all); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return e.get_exit_code() == 0 ? kOk : (rc == 0 ? kOk : kUsage);
  }
  if (g.jobs > 0) omp_set_num_threads(g.jobs);
  try {
    return run();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const TheoremViolation& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return kViolation;
  } catch (const CacheCorrupt& e) {
    std::cerr << e.what() << "\n";
    return kViolation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  }
}
