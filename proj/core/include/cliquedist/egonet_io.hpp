#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "cliquedist/estimators.hpp"
#include "cliquedist/evaluation.hpp"
#include "cliquedist/sampling.hpp"
#include "cliquedist/types.hpp"

#include "json.hpp"

namespace cliquedist {

// Egonet sample files are JSON lines. The first line is a header:
//   {"n_prime": 5, "labeled": true, "design": {...}}
// then one record per ego:
//   {"ego": 17, "neighbors": [3, 29], "edges": [[17,3],[17,29],[3,29]],
//    "attrs": {"17": "F", "3": "M"}}
// Labeled records use real node ids everywhere. Unlabeled records number
// the neighbors 1..k and write 0 for the ego inside "edges". Duplicate ego
// records (with-replacement draws) are collapsed on read, with their
// multiplicity retained; n' comes from the header.
EgonetSample read_egonet_sample(std::istream& in);
EgonetSample read_egonet_sample_file(const std::string& path);
void write_egonet_sample(const EgonetSample& sample, std::ostream& out);

// CSV "order,count" and, when attributed, "composition,count" with the
// composition serialized as u1|u2|...|up.
void write_census_csv(const CensusResult& census, std::ostream& orders);
void write_composition_csv(const CensusResult& census, std::ostream& compositions);
CensusResult read_census_csv(std::istream& orders, std::istream* compositions);

nlohmann::json design_to_json(const SamplingDesign& d);
SamplingDesign design_from_json(const nlohmann::json& j);

// One record per target: {target, value, variance, estimator,
// variance_method, n, n_prime, N, seed}.
nlohmann::json estimate_to_json(const Estimate& e, const EgonetSample& sample);
nlohmann::json estimates_to_json(const std::vector<Estimate>& estimates,
                                 const EgonetSample& sample);

nlohmann::json saturation_to_json(const SaturationMetrics& m);
nlohmann::json report_to_json(const ReplicationReport& report);
void write_report_csv(const ReplicationReport& report, std::ostream& out);

}  // namespace cliquedist
