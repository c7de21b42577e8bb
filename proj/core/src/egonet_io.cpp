#include "cliquedist/egonet_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "cliquedist/error.hpp"

namespace cliquedist {

using nlohmann::json;

namespace {

std::string estimator_name(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::cds_ht: return "cds";
    case EstimatorKind::cds_ght: return "cds_generalized";
    case EstimatorKind::cc: return "cc";
  }
  return "?";
}

std::string variance_method_name(VarianceMethod m) {
  switch (m) {
    case VarianceMethod::ht_joint: return "ht_joint";
    case VarianceMethod::bh: return "bh";
    case VarianceMethod::none: return "none";
  }
  return "?";
}

// True when the record's neighbor list is exactly 1..k (the unlabeled form).
bool looks_unlabeled(const std::vector<OriginalId>& neighbors) {
  for (std::size_t t = 0; t < neighbors.size(); ++t) {
    if (neighbors[t] != t + 1) return false;
  }
  return true;
}

}  // namespace

json design_to_json(const SamplingDesign& d) {
  json j;
  j["kind"] = d.kind == DesignKind::uis ? "uis" : "wis";
  j["replacement"] =
      d.replacement == Replacement::with_replacement ? "with" : "without";
  j["draws"] = d.draws;
  j["N"] = d.population;
  if (d.kind == DesignKind::wis) {
    j["weight_mode"] = d.weight_mode == WeightMode::exact_probabilities
                           ? "exact_probabilities"
                           : "proportional_only";
  }
  return j;
}

SamplingDesign design_from_json(const json& j) {
  SamplingDesign d;
  const std::string kind = j.value("kind", "uis");
  if (kind == "uis") {
    d.kind = DesignKind::uis;
  } else if (kind == "wis") {
    d.kind = DesignKind::wis;
  } else {
    throw ParseError("unknown design kind '" + kind + "'");
  }
  const std::string repl = j.value("replacement", "without");
  if (repl == "with") {
    d.replacement = Replacement::with_replacement;
  } else if (repl == "without") {
    d.replacement = Replacement::without_replacement;
  } else {
    throw ParseError("unknown replacement '" + repl + "'");
  }
  d.draws = j.value("draws", 0ULL);
  d.population = j.value("N", 0ULL);
  const std::string mode = j.value("weight_mode", "exact_probabilities");
  d.weight_mode = mode == "proportional_only" ? WeightMode::proportional_only
                                              : WeightMode::exact_probabilities;
  return d;
}

EgonetSample read_egonet_sample(std::istream& in) {
  std::string line;
  std::uint64_t line_no = 0;

  // header
  json header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    header = json::parse(line, nullptr, false);
    if (header.is_discarded()) throw ParseError("bad JSON header", line_no);
    break;
  }
  if (header.is_null()) throw ParseError("empty egonet sample file");

  EgonetSample sample;
  sample.labeled = header.value("labeled", true);
  sample.seed = header.value("seed", 0ULL);
  if (header.contains("design") && header["design"].is_object()) {
    sample.design = design_from_json(header["design"]);
  }
  const std::uint64_t header_n_prime = header.value("n_prime", 0ULL);

  std::unordered_map<std::string, std::uint16_t> cat_of_label;
  auto intern_label = [&](const std::string& label) -> std::uint16_t {
    const auto it = cat_of_label.find(label);
    if (it != cat_of_label.end()) return it->second;
    sample.category_names.push_back(label);
    const auto cat = static_cast<std::uint16_t>(sample.category_names.size());
    cat_of_label.emplace(label, cat);
    return cat;
  };

  // Collapse duplicate egos but keep their draw multiplicity.
  std::map<OriginalId, std::size_t> seen;  // ego -> index in sample.egonets
  std::uint64_t records = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded()) throw ParseError("bad JSON record", line_no);
    if (!rec.contains("ego")) throw ParseError("record without 'ego'", line_no);
    ++records;

    const OriginalId ego = rec["ego"].get<OriginalId>();
    const auto dup = seen.find(ego);
    if (dup != seen.end()) {
      ++sample.multiplicities[dup->second];
      continue;
    }

    Egonet e;
    e.ego_id = ego;
    e.labeled = sample.labeled;
    if (rec.contains("neighbors")) {
      e.neighbor_ids = rec["neighbors"].get<std::vector<OriginalId>>();
    }
    if (!sample.labeled && !looks_unlabeled(e.neighbor_ids)) {
      throw ParseError("unlabeled sample but record has non-local neighbor ids",
                       line_no);
    }

    // id -> local index: 0 is the ego (written as the ego id when labeled,
    // as 0 when unlabeled), neighbors follow their list order.
    std::unordered_map<OriginalId, std::uint32_t> local;
    local.emplace(sample.labeled ? ego : OriginalId{0}, 0);
    for (std::uint32_t t = 0; t < e.neighbor_ids.size(); ++t) {
      if (!local.emplace(e.neighbor_ids[t], t + 1).second) {
        throw ParseError("duplicate neighbor id in record for ego " +
                             std::to_string(ego),
                         line_no);
      }
    }
    if (rec.contains("edges")) {
      for (const auto& pair : rec["edges"]) {
        if (!pair.is_array() || pair.size() != 2) {
          throw ParseError("edge entries must be [a, b] pairs", line_no);
        }
        const auto ia = local.find(pair[0].get<OriginalId>());
        const auto ib = local.find(pair[1].get<OriginalId>());
        if (ia == local.end() || ib == local.end()) {
          throw ParseError("edge endpoint outside the egonet for ego " +
                               std::to_string(ego),
                           line_no);
        }
        if (ia->second == ib->second) continue;
        const auto a = std::min(ia->second, ib->second);
        const auto b = std::max(ia->second, ib->second);
        e.edges.emplace_back(a, b);
      }
      std::sort(e.edges.begin(), e.edges.end());
      e.edges.erase(std::unique(e.edges.begin(), e.edges.end()), e.edges.end());
    }
    // every neighbor must be adjacent to the ego
    std::vector<bool> touched(e.member_count(), false);
    for (const auto& [a, b] : e.edges) {
      if (a == 0) touched[b] = true;
    }
    for (std::uint32_t t = 1; t < e.member_count(); ++t) {
      if (!touched[t]) {
        throw ParseError("neighbor " + std::to_string(e.neighbor_ids[t - 1]) +
                             " of ego " + std::to_string(ego) +
                             " has no ego edge",
                         line_no);
      }
    }

    if (rec.contains("attrs") && rec["attrs"].is_object() && !rec["attrs"].empty()) {
      e.categories.assign(e.member_count(), 0);
      for (const auto& [key, value] : rec["attrs"].items()) {
        OriginalId id = 0;
        try {
          id = static_cast<OriginalId>(std::stoull(key));
        } catch (const std::exception&) {
          throw ParseError("bad attrs key '" + key + "'", line_no);
        }
        const auto it = local.find(id);
        if (it == local.end()) {
          throw ParseError("attrs key " + key + " is not an egonet member", line_no);
        }
        e.categories[it->second] = intern_label(value.get<std::string>());
      }
    }

    seen.emplace(ego, sample.egonets.size());
    sample.egonets.push_back(std::move(e));
    sample.multiplicities.push_back(1);
  }

  if (records == 0) throw ParseError("egonet sample file has no records");
  sample.draws = header_n_prime > 0 ? header_n_prime : records;
  if (sample.draws < records) {
    throw ParseError("header n_prime=" + std::to_string(sample.draws) +
                     " is smaller than the " + std::to_string(records) + " records");
  }

  // canonical order: by ego id
  std::vector<std::size_t> idx(sample.egonets.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return sample.egonets[a].ego_id < sample.egonets[b].ego_id;
  });
  EgonetSample sorted = sample;
  sorted.egonets.clear();
  sorted.multiplicities.clear();
  for (const auto i : idx) {
    sorted.egonets.push_back(std::move(sample.egonets[i]));
    sorted.multiplicities.push_back(sample.multiplicities[i]);
  }

  if (sorted.design.draws == 0) sorted.design.draws = sorted.draws;
  return sorted;
}

EgonetSample read_egonet_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open egonet sample: " + path);
  return read_egonet_sample(in);
}

void write_egonet_sample(const EgonetSample& sample, std::ostream& out) {
  json header;
  header["n_prime"] = sample.draws;
  header["labeled"] = sample.labeled;
  header["design"] = design_to_json(sample.design);
  if (sample.seed != 0) header["seed"] = sample.seed;
  out << header.dump() << '\n';

  for (std::size_t i = 0; i < sample.egonets.size(); ++i) {
    const Egonet& e = sample.egonets[i];
    json rec;
    rec["ego"] = e.ego_id;
    rec["neighbors"] = e.neighbor_ids;
    json edges = json::array();
    for (const auto& [a, b] : e.edges) {
      const OriginalId ga =
          a == 0 ? (sample.labeled ? e.ego_id : 0) : e.neighbor_ids[a - 1];
      const OriginalId gb =
          b == 0 ? (sample.labeled ? e.ego_id : 0) : e.neighbor_ids[b - 1];
      edges.push_back({ga, gb});
    }
    rec["edges"] = std::move(edges);
    if (e.attributed()) {
      json attrs = json::object();
      for (std::uint32_t m = 0; m < e.member_count(); ++m) {
        if (e.categories[m] == 0) continue;
        const OriginalId id =
            m == 0 ? (sample.labeled ? e.ego_id : 0) : e.neighbor_ids[m - 1];
        attrs[std::to_string(id)] = sample.category_names[e.categories[m] - 1];
      }
      rec["attrs"] = std::move(attrs);
    }
    out << rec.dump() << '\n';
    // repeat draws are recorded by repeating the record
    for (std::uint32_t extra = 1; extra < sample.multiplicities[i]; ++extra) {
      json dup;
      dup["ego"] = e.ego_id;
      dup["repeat"] = true;
      out << dup.dump() << '\n';
    }
  }
}

void write_census_csv(const CensusResult& census, std::ostream& orders) {
  orders << "order,count\n";
  for (const auto& [o, c] : census.by_order) orders << o << ',' << c << '\n';
}

void write_composition_csv(const CensusResult& census, std::ostream& compositions) {
  compositions << "composition,count\n";
  for (const auto& [u, c] : census.by_composition) {
    compositions << composition_key(u) << ',' << c << '\n';
  }
}

CensusResult read_census_csv(std::istream& orders, std::istream* compositions) {
  CensusResult out;
  std::string line;
  std::uint64_t line_no = 0;
  bool first = true;
  while (std::getline(orders, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (first) {
      first = false;
      if (line.rfind("order", 0) == 0) continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("expected 'order,count'", line_no);
    try {
      const auto order = static_cast<std::uint32_t>(std::stoul(line.substr(0, comma)));
      const auto count = std::stoull(line.substr(comma + 1));
      out.by_order[order] = count;
      out.total_cliques += count;
      out.max_order = std::max(out.max_order, order);
    } catch (const std::exception&) {
      throw ParseError("bad census row '" + line + "'", line_no);
    }
  }
  if (compositions) {
    line_no = 0;
    first = true;
    while (std::getline(*compositions, line)) {
      ++line_no;
      if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (first) {
        first = false;
        if (line.rfind("composition", 0) == 0) continue;
      }
      const auto comma = line.rfind(',');
      if (comma == std::string::npos) {
        throw ParseError("expected 'composition,count'", line_no);
      }
      try {
        out.by_composition[parse_composition(line.substr(0, comma))] =
            std::stoull(line.substr(comma + 1));
      } catch (const std::exception&) {
        throw ParseError("bad composition row '" + line + "'", line_no);
      }
    }
  }
  return out;
}

json estimate_to_json(const Estimate& e, const EgonetSample& sample) {
  json j;
  if (e.target.composition) {
    j["target"] = {{"composition", composition_key(*e.target.composition)},
                   {"order", e.target.order}};
  } else {
    j["target"] = {{"order", e.target.order}};
  }
  j["value"] = e.value;
  if (e.variance) {
    j["variance"] = *e.variance;
    if (e.variance_floored) j["variance_floored"] = true;
  } else {
    j["variance"] = nullptr;
  }
  j["estimator"] = estimator_name(e.estimator);
  j["variance_method"] = variance_method_name(e.variance_method);
  j["n"] = sample.size();
  j["n_prime"] = sample.draws;
  j["N"] = sample.design.population;
  j["seed"] = sample.seed;
  return j;
}

json estimates_to_json(const std::vector<Estimate>& estimates,
                       const EgonetSample& sample) {
  json arr = json::array();
  for (const auto& e : estimates) arr.push_back(estimate_to_json(e, sample));
  return arr;
}

json saturation_to_json(const SaturationMetrics& m) {
  json j;
  j["avg_edge_count"] = m.avg_edge_count;
  j["avg_node_count"] = m.avg_node_count;
  j["unique_nodes"] = m.unique_nodes;
  j["unique_edges"] = m.unique_edges;
  j["total_node_observations"] = m.total_node_observations;
  j["total_edge_observations"] = m.total_edge_observations;
  j["pct_nodes_sampled"] = m.pct_nodes_sampled ? json(*m.pct_nodes_sampled) : json();
  j["pct_edges_sampled"] = m.pct_edges_sampled ? json(*m.pct_edges_sampled) : json();
  return j;
}

json report_to_json(const ReplicationReport& report) {
  json j;
  j["dataset"] = report.dataset_id;
  j["design"] = report.design_digest;
  j["seed"] = report.seed;
  j["sizes"] = report.sizes;

  json truth;
  for (const auto& [o, c] : report.truth.by_order) truth[std::to_string(o)] = c;
  j["truth_by_order"] = std::move(truth);
  if (!report.truth.by_composition.empty()) {
    json tu;
    for (const auto& [u, c] : report.truth.by_composition) tu[composition_key(u)] = c;
    j["truth_by_composition"] = std::move(tu);
  }

  json runs = json::array();
  for (const auto& r : report.results) {
    json rr;
    rr["n_prime"] = r.size;
    rr["replication"] = r.replication;
    rr["n"] = r.unique_egos;
    rr["nmae_cds"] = r.nmae_cds;
    rr["nmae_cc"] = r.nmae_cc ? json(*r.nmae_cc) : json();
    if (r.nmae_cds_composition) rr["nmae_cds_u"] = *r.nmae_cds_composition;
    if (r.nmae_cc_composition) rr["nmae_cc_u"] = *r.nmae_cc_composition;
    rr["saturation"] = saturation_to_json(r.saturation);
    runs.push_back(std::move(rr));
  }
  j["replications"] = std::move(runs);

  json aggs = json::array();
  for (const auto& a : report.aggregates) {
    json ja;
    ja["n_prime"] = a.size;
    ja["median_nmae"] = a.median_nmae;
    ja["mean_nmae"] = a.mean_nmae;
    ja["iqr_nmae"] = a.iqr_nmae;
    ja["mean_avg_edge_count"] = a.mean_avg_edge_count;
    ja["mean_avg_node_count"] = a.mean_avg_node_count;
    ja["mean_pct_nodes"] = a.mean_pct_nodes;
    ja["mean_pct_edges"] = a.mean_pct_edges;
    ja["recommended_estimator"] = a.verdict == EstimatorChoice::cc ? "cc" : "cds";
    json mc;
    for (const auto& [o, v] : a.mean_estimate_cds) mc[std::to_string(o)] = v;
    ja["mean_estimate_cds"] = std::move(mc);
    if (!a.mean_estimate_cc.empty()) {
      json mcc;
      for (const auto& [o, v] : a.mean_estimate_cc) mcc[std::to_string(o)] = v;
      ja["mean_estimate_cc"] = std::move(mcc);
    }
    aggs.push_back(std::move(ja));
  }
  j["aggregates"] = std::move(aggs);
  return j;
}

void write_report_csv(const ReplicationReport& report, std::ostream& out) {
  out << "dataset,n,replication,estimator,nmae,avg_edge_count,avg_node_count,"
         "pct_nodes_sampled,pct_edges_sampled\n";
  auto row = [&](const ReplicationResult& r, const std::string& est, double value) {
    out << report.dataset_id << ',' << r.size << ',' << r.replication << ',' << est
        << ',' << value << ',' << r.saturation.avg_edge_count << ','
        << r.saturation.avg_node_count << ',';
    if (r.saturation.pct_nodes_sampled) out << *r.saturation.pct_nodes_sampled;
    out << ',';
    if (r.saturation.pct_edges_sampled) out << *r.saturation.pct_edges_sampled;
    out << '\n';
  };
  for (const auto& r : report.results) {
    row(r, "cds", r.nmae_cds);
    if (r.nmae_cc) row(r, "cc", *r.nmae_cc);
    if (r.nmae_cds_composition) row(r, "cds_u", *r.nmae_cds_composition);
    if (r.nmae_cc_composition) row(r, "cc_u", *r.nmae_cc_composition);
  }
}

}  // namespace cliquedist
