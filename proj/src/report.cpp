#include "zsl/report.hpp"

#include <algorithm>

#include "zsl/board.hpp"

namespace zsl::report {

namespace {

Json wall(std::optional<double> ms) { return ms ? Json(*ms) : Json(nullptr); }

}  // namespace

Json elements_json(const GroupMultiset& a) {
  Json out = Json::array();
  for (auto [e, c] : a.entries()) {
    Json row = Json::array();
    for (auto x : a.spec().coords_of(e)) row.push_back(x);
    row.push_back(c);
    out.push_back(std::move(row));
  }
  return out;
}

GroupMultiset elements_from_json(const GroupSpec& spec, const Json& j) {
  GroupMultiset a(spec);
  if (!j.is_array()) throw std::invalid_argument("elements: expected an array");
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != spec.rank() + 1) throw std::invalid_argument("elements: bad row");
    std::vector<std::uint32_t> coords;
    for (std::size_t i = 0; i < spec.rank(); ++i) {
      const auto v = row[i].get<std::uint32_t>();
      if (v >= spec.factor(i)) throw std::invalid_argument("elements: coordinate out of range");
      coords.push_back(v);
    }
    const auto c = row[spec.rank()].get<std::uint32_t>();
    if (c == 0) throw std::invalid_argument("elements: zero multiplicity");
    a.add(spec.index_of(coords), c);
  }
  return a;
}

Json multiset_json(const GroupMultiset& a) {
  Json j;
  j["group"] = a.spec().to_string();
  j["size"] = a.size();
  j["elements"] = elements_json(a);
  const auto entries = a.entries();
  const bool boardable = a.spec() == GroupSpec::elementary(3, 3) &&
                         std::all_of(entries.begin(), entries.end(), [](auto e) { return e.second <= 9; });
  j["board"] = boardable ? Json(render_board(a)) : Json(nullptr);
  return j;
}

Json document(const std::string& query) {
  Json j;
  j["query"] = query;
  j["value"] = nullptr;
  j["witness"] = nullptr;
  j["orbits"] = nullptr;
  j["node_count"] = nullptr;
  j["wall_ms"] = nullptr;
  j["obstruction_certificates"] = Json::array();
  return j;
}

Json constant_report(const ConstantQuery& q, const ConstantResult& r, std::optional<double> wall_ms) {
  Json j = document(q.to_string());
  j["value"] = r.value;
  j["witness"] = multiset_json(r.witness);
  j["orbits"] = r.orbits_complete ? Json(r.witness_orbits) : Json(nullptr);
  j["node_count"] = r.node_count;
  j["wall_ms"] = wall(wall_ms);
  j["method"] = r.method;
  j["level_orbits"] = r.level_orbits;
  return j;
}

Json table_report(const std::vector<TableEntry>& entries, bool timing) {
  Json j = document("verify-table");
  Json rows = Json::array();
  std::uint64_t nodes = 0, passed = 0;
  double total = 0;
  for (const auto& e : entries) {
    Json row = constant_report(e.query, e.result, timing ? std::optional<double>(e.wall_ms) : std::nullopt);
    row["label"] = e.label;
    row["expected"] = e.expected;
    row["value"] = e.computed ? Json(*e.computed) : Json(nullptr);
    if (!e.computed) row["witness"] = nullptr;
    row["pass"] = e.pass;
    if (!e.error.empty()) row["error"] = e.error;
    rows.push_back(std::move(row));
    nodes += e.result.node_count;
    passed += e.pass;
    total += e.wall_ms;
  }
  j["value"] = passed;
  j["node_count"] = nodes;
  j["wall_ms"] = timing ? Json(total) : Json(nullptr);
  j["entries"] = std::move(rows);
  j["total"] = entries.size();
  return j;
}

Json classify_report(const std::string& query, const std::vector<CanonicalForm>& forms,
                     std::optional<double> wall_ms) {
  Json j = document(query);
  j["value"] = forms.size();
  j["orbits"] = forms.size();
  Json w = Json::array();
  for (const auto& f : forms) {
    Json m = multiset_json(f.representative);
    m["orbit_size"] = f.orbit_size();
    w.push_back(std::move(m));
  }
  j["witness"] = std::move(w);
  j["wall_ms"] = wall(wall_ms);
  return j;
}

Json five_point_report(const FivePointReport& r, std::optional<double> wall_ms) {
  Json j = document("five-point");
  j["value"] = r.violators.size();
  j["sets_checked"] = r.sets_checked;
  Json w = Json::array();
  for (const auto& v : r.violators) w.push_back(multiset_json(v));
  j["witness"] = std::move(w);
  j["wall_ms"] = wall(wall_ms);
  return j;
}

Json completeness_report(const CompletenessReport& r, std::optional<double> wall_ms) {
  Json j = document("3k5-completeness(k=" + std::to_string(r.k) + ", threshold=" + std::to_string(r.threshold) + ")");
  j["value"] = r.found_orbits;
  j["orbits"] = r.found_orbits;
  j["recipe_orbits"] = r.recipe_orbits;
  j["size"] = r.size;
  j["via_constant"] = r.via_constant;
  j["constant_value"] = r.constant_value ? Json(*r.constant_value) : Json(nullptr);
  j["complete"] = r.complete();
  Json w = Json::array();
  for (const auto& u : r.unmatched) w.push_back(multiset_json(u));
  j["witness"] = std::move(w);
  j["wall_ms"] = wall(wall_ms);
  return j;
}

Json af_report(const AfReport& r, std::optional<double> wall_ms) {
  const bool paper = r.filter == AfFilter::PaperCaseViii;
  Json j = document(std::string("af-verify filter=") + (paper ? "paper" : "full"));
  j["value"] = r.violations;
  j["orbits"] = r.candidates;
  j["wall_ms"] = wall(wall_ms);
  Json counts;
  if (paper) {
    counts["raw"] = r.paper.raw;
    counts["with_diagonal_pair"] = r.paper.with_diagonal_pair;
    counts["rotated"] = r.paper.rotated_c3;
    counts["rotated_all_permutations"] = r.paper.rotated_s3;
    counts["orbits"] = r.paper.orbits_rotated;
    counts["orbits_total"] = r.paper.orbits_total;
  }
  counts["candidates"] = r.candidates;
  counts["anchors"] = r.anchors_checked;
  counts["violations"] = r.violations;
  j["counts"] = std::move(counts);
  j["raw"] = paper ? Json(r.paper.raw) : Json(nullptr);
  j["rotated"] = paper ? Json(r.paper.rotated_c3) : Json(nullptr);
  j["violations"] = r.violations;

  Json certs = Json::array();
  Json wit = Json::array();
  for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
    const auto& cand = r.enumeration.candidates[i];
    Json cj;
    cj["candidate"] = i;
    cj["multiset"] = multiset_json(cand.a);
    cj["zerosum_subsets"] = cand.zerosum_subsets.size();
    Json anchors = Json::array();
    for (const auto& a : r.verdicts[i].anchors) {
      Json aj;
      aj["anchor"] = cand.a.spec().coords_of(a.anchor);
      aj["feasible"] = a.feasible;
      aj["generic"] = a.generic;
      aj["obstruction"] = a.generic ? Json(nullptr) : Json(a.obstruction.str());
      Json ps = Json::array();
      for (const auto& p : a.feasible_primes) ps.push_back(p.str());
      aj["primes"] = std::move(ps);
      if (a.witness_prime) {
        aj["witness_prime"] = a.witness_prime->str();
        if (a.witness_f) aj["witness_f"] = *a.witness_f;
      }
      anchors.push_back(std::move(aj));
    }
    cj["anchors"] = std::move(anchors);
    if (r.verdicts[i].violation()) wit.push_back(cj["multiset"]);
    certs.push_back(std::move(cj));
  }
  j["obstruction_certificates"] = std::move(certs);
  j["witness"] = std::move(wit);
  return j;
}

Json zerosum_report(const GroupMultiset& seq, const ZerosumCertificate& c, const SplitStats* stats,
                    std::optional<double> wall_ms) {
  Json j = document("find-zerosum over " + seq.spec().to_string() + " length " + std::to_string(seq.size()));
  j["value"] = c.sub.size();
  j["witness"] = multiset_json(c.sub);
  j["verified"] = verify_certificate(seq, c);
  if (stats) {
    j["path"] = stats->path;
    j["parts"] = stats->parts;
  }
  j["wall_ms"] = wall(wall_ms);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace zsl::report
