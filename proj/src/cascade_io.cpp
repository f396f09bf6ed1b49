#include <nlohmann/json.hpp>

#include "medcascade/cascade.hpp"
#include "medcascade/csv.hpp"

namespace medcascade::cascade {

void write_edgelist_csv(std::ostream& out, const std::vector<Edge>& edges) {
  out << "child_id,parent_id\n";
  for (const auto& e : edges) csv::write_row(out, {e.child_id, e.parent_id});
}

std::vector<Edge> read_edgelist_csv(std::istream& in) {
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) return {};
  if (*header != csv::Row{"child_id", "parent_id"}) throw DataError("edgelist header must be 'child_id,parent_id'", 1);
  std::vector<Edge> edges;
  while (auto row = reader.next()) {
    if (row->size() == 1 && (*row)[0].empty()) continue;
    if (row->size() != 2 || (*row)[0].empty() || (*row)[1].empty()) {
      throw DataError("expected child_id,parent_id", reader.line());
    }
    if ((*row)[0] == (*row)[1]) throw DataError("self edge", reader.line());
    edges.push_back({(*row)[0], (*row)[1]});
  }
  return edges;
}

void write_cascades_jsonl(std::ostream& out, std::span<const Cascade> cascades) {
  for (const auto& c : cascades) {
    nlohmann::ordered_json doc;
    doc["root"] = c.root_id;
    auto nodes = nlohmann::ordered_json::array();
    for (const auto& n : c.nodes) {
      nlohmann::ordered_json node;
      node["id"] = n.tweet_id;
      node["author_id"] = n.author_id ? nlohmann::ordered_json(*n.author_id) : nlohmann::ordered_json(nullptr);
      node["created_at"] = n.created_at;
      node["depth"] = n.depth;
      nodes.push_back(std::move(node));
    }
    doc["nodes"] = std::move(nodes);
    auto edges = nlohmann::ordered_json::array();
    for (const auto& e : c.edges) edges.push_back({e.child_id, e.parent_id});
    doc["edges"] = std::move(edges);
    doc["timestamp_violations"] = c.timestamp_violations;
    out << doc.dump() << '\n';
  }
}

std::vector<Cascade> read_cascades_jsonl(std::istream& in) {
  std::vector<Cascade> cascades;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto doc = nlohmann::json::parse(line);
      Cascade c;
      c.root_id = doc.at("root").get<std::string>();
      for (const auto& n : doc.at("nodes")) {
        Node node;
        node.tweet_id = n.at("id").get<std::string>();
        if (!n.at("author_id").is_null()) node.author_id = n.at("author_id").get<std::string>();
        node.created_at = n.at("created_at").get<EpochMillis>();
        node.depth = n.at("depth").get<std::uint32_t>();
        c.nodes.push_back(std::move(node));
      }
      for (const auto& e : doc.at("edges")) {
        c.edges.push_back({e.at(0).get<std::string>(), e.at(1).get<std::string>()});
      }
      c.timestamp_violations = doc.value("timestamp_violations", std::size_t{0});
      if (c.nodes.empty() || c.nodes.front().tweet_id != c.root_id || c.edges.size() + 1 != c.nodes.size()) {
        throw DataError("inconsistent cascade", line_no);
      }
      cascades.push_back(std::move(c));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("malformed cascade: ") + e.what(), line_no);
    }
  }
  return cascades;
}

void write_ccdf_csv(std::ostream& out, const SizeDistribution& distribution) {
  out << "size_users,ccdf\n";
  for (const auto& p : distribution.ccdf) out << p.size << ',' << csv::format_double(p.ccdf) << '\n';
}

void write_velocity_csv(std::ostream& out, std::span<const VelocityPoint> curve) {
  out << "k,median_minutes,n_cascades\n";
  for (const auto& p : curve) {
    out << p.k << ',' << csv::format_double(p.median_minutes) << ',' << p.n_cascades << '\n';
  }
}

std::vector<VelocityPoint> read_velocity_csv(std::istream& in) {
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) return {};
  if (*header != csv::Row{"k", "median_minutes", "n_cascades"}) throw DataError("bad velocity header", 1);
  std::vector<VelocityPoint> curve;
  while (auto row = reader.next()) {
    if (row->size() != 3) throw DataError("expected 3 fields", reader.line());
    auto k = csv::parse_int((*row)[0]);
    auto m = csv::parse_double((*row)[1]);
    auto n = csv::parse_int((*row)[2]);
    if (!k || !m || !n || *k <= 0 || *n < 0) throw DataError("bad velocity row", reader.line());
    curve.push_back({static_cast<std::size_t>(*k), *m, static_cast<std::size_t>(*n)});
  }
  return curve;
}

void write_authorship_csv(std::ostream& out, const Authorship& authorship) {
  out << "cascades_per_user,n_users\n";
  for (const auto& [cascades, users] : authorship.histogram) out << cascades << ',' << users << '\n';
}

void write_metrics_csv(std::ostream& out, std::span<const CascadeMetrics> metrics) {
  out << "root_id,size_users,size_tweets,depth,retweets\n";
  for (const auto& m : metrics) {
    csv::write_row(out, {m.root_id, std::to_string(m.size_users), std::to_string(m.size_tweets),
                         std::to_string(m.depth), std::to_string(m.retweet_minutes.size())});
  }
}

}  // namespace medcascade::cascade
