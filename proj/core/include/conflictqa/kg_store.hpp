#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "conflictqa/types.hpp"

namespace conflictqa {

enum class KgFormat { Tsv, Jsonl };

struct KgLoadReport {
  std::size_t loaded = 0;
  std::vector<std::string> malformed;  // "line N: reason"
};

/// Immutable triple store with adjacency indices by head and by either
/// endpoint. All triples are Positive at this stage; conflicting triples only
/// exist inside benchmark instances.
class TripleStore {
 public:
  TripleStore() = default;
  explicit TripleStore(std::vector<Triple> triples);

  std::size_t size() const { return triples_.size(); }
  const std::vector<Triple>& triples() const { return triples_; }

  /// Outgoing triples from an entity (head == entity). Insertion order.
  std::vector<Triple> outgoing(const std::string& entity_id) const;

  /// Incoming triples (tail == entity). Insertion order.
  std::vector<Triple> incoming(const std::string& entity_id) const;

  bool contains_entity(const std::string& entity_id) const;

 private:
  std::vector<Triple> triples_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_head_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_tail_;
};

/// Parses a triple file. TSV lines are `head<TAB>relation<TAB>tail`; JSONL
/// objects carry keys head/relation/tail. Malformed lines are skipped and
/// reported; an unreadable file throws DataError.
TripleStore load_triples(const std::filesystem::path& path, KgFormat format,
                         KgLoadReport* report = nullptr);

struct PathSearchOptions {
  /// Traverse reverse edges as well. Off by default so runs stay reproducible
  /// against the forward-only reading of the seed KGs.
  bool undirected = false;
};

/// Every simple (no repeated entity) path of length in [1, max_hops] from
/// `start` that ends at any target, ordered by ascending length, then
/// lexicographically by relation labels, then by endpoint labels. `start`
/// absent from the store yields an empty list.
std::vector<TriplePath> find_paths(const TripleStore& store, const std::string& start,
                                   const std::set<std::string>& targets, int max_hops,
                                   const PathSearchOptions& options = {});

/// All triples with the entity as head or tail, in store order.
std::vector<Triple> triples_touching(const TripleStore& store, const std::string& entity_id);

}  // namespace conflictqa
