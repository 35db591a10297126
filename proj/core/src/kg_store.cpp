#include "conflictqa/kg_store.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "conflictqa/error.hpp"

namespace conflictqa {

namespace {

std::string trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto begin = s.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(ws);
  return std::string(s.substr(begin, end - begin + 1));
}

bool path_less(const TriplePath& a, const TriplePath& b) {
  if (a.steps.size() != b.steps.size()) return a.steps.size() < b.steps.size();
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    if (a.steps[i].relation.label != b.steps[i].relation.label) {
      return a.steps[i].relation.label < b.steps[i].relation.label;
    }
  }
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    if (a.steps[i].head.label != b.steps[i].head.label) {
      return a.steps[i].head.label < b.steps[i].head.label;
    }
    if (a.steps[i].tail.label != b.steps[i].tail.label) {
      return a.steps[i].tail.label < b.steps[i].tail.label;
    }
  }
  return false;
}

}  // namespace

TripleStore::TripleStore(std::vector<Triple> triples) : triples_(std::move(triples)) {
  for (std::size_t i = 0; i < triples_.size(); ++i) {
    by_head_[triples_[i].head.id].push_back(i);
    by_tail_[triples_[i].tail.id].push_back(i);
  }
}

std::vector<Triple> TripleStore::outgoing(const std::string& entity_id) const {
  std::vector<Triple> out;
  auto it = by_head_.find(entity_id);
  if (it == by_head_.end()) return out;
  out.reserve(it->second.size());
  for (auto idx : it->second) out.push_back(triples_[idx]);
  return out;
}

std::vector<Triple> TripleStore::incoming(const std::string& entity_id) const {
  std::vector<Triple> out;
  auto it = by_tail_.find(entity_id);
  if (it == by_tail_.end()) return out;
  out.reserve(it->second.size());
  for (auto idx : it->second) out.push_back(triples_[idx]);
  return out;
}

bool TripleStore::contains_entity(const std::string& entity_id) const {
  return by_head_.count(entity_id) > 0 || by_tail_.count(entity_id) > 0;
}

TripleStore load_triples(const std::filesystem::path& path, KgFormat format,
                         KgLoadReport* report) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open KG file: " + path.string());

  std::vector<Triple> triples;
  std::string line;
  std::size_t line_no = 0;
  auto note = [&](const std::string& reason) {
    if (report) report->malformed.push_back("line " + std::to_string(line_no) + ": " + reason);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;

    if (format == KgFormat::Tsv) {
      auto first = line.find('\t');
      auto second = first == std::string::npos ? std::string::npos : line.find('\t', first + 1);
      if (first == std::string::npos || second == std::string::npos) {
        note("expected head<TAB>relation<TAB>tail");
        continue;
      }
      std::string head = trim(line.substr(0, first));
      std::string relation = trim(line.substr(first + 1, second - first - 1));
      std::string tail = trim(line.substr(second + 1));
      if (head.empty() || relation.empty() || tail.empty()) {
        note("empty component");
        continue;
      }
      triples.push_back({Entity(head), Relation(relation), Entity(tail), Polarity::Positive});
    } else {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        note(std::string("invalid JSON: ") + e.what());
        continue;
      }
      if (!j.contains("head") || !j.contains("relation") || !j.contains("tail") ||
          !j["head"].is_string() || !j["relation"].is_string() || !j["tail"].is_string()) {
        note("missing head/relation/tail string fields");
        continue;
      }
      std::string head = trim(j["head"].get<std::string>());
      std::string relation = trim(j["relation"].get<std::string>());
      std::string tail = trim(j["tail"].get<std::string>());
      if (head.empty() || relation.empty() || tail.empty()) {
        note("empty component");
        continue;
      }
      triples.push_back({Entity(head), Relation(relation), Entity(tail), Polarity::Positive});
    }
  }

  if (report) report->loaded = triples.size();
  return TripleStore(std::move(triples));
}

std::vector<TriplePath> find_paths(const TripleStore& store, const std::string& start,
                                   const std::set<std::string>& targets, int max_hops,
                                   const PathSearchOptions& options) {
  if (max_hops < 1) throw std::invalid_argument("find_paths: max_hops must be >= 1");
  if (start.empty()) throw std::invalid_argument("find_paths: start must be non-empty");
  if (targets.empty()) throw std::invalid_argument("find_paths: targets must be non-empty");

  std::vector<TriplePath> results;
  if (!store.contains_entity(start)) return results;

  // Depth-first expansion with an on-path visited set enumerates exactly the
  // simple forward paths; order is normalized by the final sort.
  std::vector<Triple> current;
  std::unordered_set<std::string> on_path{start};

  auto expand = [&](auto&& self, const std::string& node) -> void {
    if (static_cast<int>(current.size()) >= max_hops) return;
    auto step = [&](const Triple& edge, const std::string& next) {
      if (on_path.count(next)) return;
      current.push_back(edge);
      if (targets.count(next)) {
        results.push_back(TriplePath{current});
      }
      on_path.insert(next);
      self(self, next);
      on_path.erase(next);
      current.pop_back();
    };
    for (const auto& t : store.outgoing(node)) step(t, t.tail.id);
    if (options.undirected) {
      // Reverse edges are stored flipped so the returned path still chains.
      for (const auto& t : store.incoming(node)) {
        Triple flipped{t.tail, t.relation, t.head, t.polarity};
        step(flipped, t.head.id);
      }
    }
  };
  expand(expand, start);

  std::sort(results.begin(), results.end(), path_less);
  return results;
}

std::vector<Triple> triples_touching(const TripleStore& store, const std::string& entity_id) {
  std::vector<Triple> out;
  for (const auto& t : store.triples()) {
    if (t.touches(entity_id)) out.push_back(t);
  }
  return out;
}

}  // namespace conflictqa
