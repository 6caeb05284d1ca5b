#pragma once

// JSON documents. Every document carries the fields
//   query, value, witness, orbits, node_count, wall_ms, obstruction_certificates
// (null or empty when they do not apply). Output is a pure function of the
// inputs; wall_ms stays null unless timing is requested.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "zsl/af.hpp"
#include "zsl/atlas.hpp"
#include "zsl/group.hpp"
#include "zsl/search.hpp"
#include "zsl/splitting.hpp"

namespace zsl::report {

using Json = nlohmann::ordered_json;

/// [[coords..., multiplicity], ...] in element order.
Json elements_json(const GroupMultiset& a);
GroupMultiset elements_from_json(const GroupSpec& spec, const Json& j);
/// {"group", "size", "elements", "board" (Z_3^3 only)}.
Json multiset_json(const GroupMultiset& a);

Json document(const std::string& query);

Json constant_report(const ConstantQuery& q, const ConstantResult& r, std::optional<double> wall_ms = std::nullopt);
Json table_report(const std::vector<TableEntry>& entries, bool timing);
Json classify_report(const std::string& query, const std::vector<CanonicalForm>& forms, std::optional<double> wall_ms);
Json five_point_report(const FivePointReport& r, std::optional<double> wall_ms);
Json completeness_report(const CompletenessReport& r, std::optional<double> wall_ms);
Json af_report(const AfReport& r, std::optional<double> wall_ms);
Json zerosum_report(const GroupMultiset& seq, const ZerosumCertificate& c, const SplitStats* stats,
                    std::optional<double> wall_ms);

/// Two-space indent and a trailing newline.
std::string dump(const Json& j);

}  // namespace zsl::report
