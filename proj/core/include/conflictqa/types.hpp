#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conflictqa/answer_norm.hpp"

namespace conflictqa {

/// Non-COMP: either evidence source alone answers the question.
/// Comp: answering requires both KG and textual evidence jointly.
enum class Setting { NonComp, Comp };

enum class Scenario { Positive, TriplePos, TextPos, TripleConf, TextConf };

enum class Polarity { Positive, Conflicting };

std::string_view to_string(Setting s);
std::string_view to_string(Scenario s);
std::string_view to_string(Polarity p);
std::optional<Setting> setting_from_string(std::string_view s);
std::optional<Scenario> scenario_from_string(std::string_view s);
std::optional<Polarity> polarity_from_string(std::string_view s);

/// True for the three scenarios whose bundles carry only positive evidence.
bool is_positive_scenario(Scenario s);

/// Entities and relations carry an opaque id plus a display label. Identity
/// checks (corruption targeting, answer involvement) use the id; prompt
/// rendering and the wire format use the label. Seed data usually has id ==
/// label; synthesized incorrect answers get `neg:<slug>` ids.
struct Entity {
  std::string id;
  std::string label;

  Entity() = default;
  explicit Entity(std::string value) : id(value), label(std::move(value)) {}
  Entity(std::string id_, std::string label_) : id(std::move(id_)), label(std::move(label_)) {}

  bool same_as(const Entity& other) const { return id == other.id; }
  bool empty() const { return id.empty(); }
};

struct Relation {
  std::string id;
  std::string label;

  Relation() = default;
  explicit Relation(std::string value) : id(value), label(std::move(value)) {}
  Relation(std::string id_, std::string label_) : id(std::move(id_)), label(std::move(label_)) {}
};

struct Triple {
  Entity head;
  Relation relation;
  Entity tail;
  Polarity polarity = Polarity::Positive;

  bool components_non_empty() const {
    return !head.id.empty() && !relation.id.empty() && !tail.id.empty();
  }
  bool touches(const std::string& entity_id) const {
    return head.id == entity_id || tail.id == entity_id;
  }
};

/// A hop-chained sequence of triples: tail of step k equals head of step k+1.
struct TriplePath {
  std::vector<Triple> steps;

  bool chained() const;
  bool empty() const { return steps.empty(); }
  std::size_t hops() const { return steps.size(); }
};

/// Insertion-ordered set of answer strings, unique modulo normalize_answer.
/// Entries whose normalized form is empty are dropped; they carry no content.
class AnswerSet {
 public:
  AnswerSet() = default;

  /// Returns true if the answer was new (by normalized form) and was added.
  bool insert(std::string_view answer);

  bool contains_normalized(std::string_view normalized) const;
  /// Set equality modulo normalize_answer, in both directions.
  bool same_normalized(const AnswerSet& other) const;
  bool empty() const { return answers_.empty(); }
  std::size_t size() const { return answers_.size(); }

  const std::vector<std::string>& answers() const { return answers_; }
  std::vector<std::string> normalized() const;

  bool operator==(const AnswerSet& other) const { return answers_ == other.answers_; }

  template <typename Range>
  static AnswerSet from(const Range& range) {
    AnswerSet set;
    for (const auto& a : range) set.insert(a);
    return set;
  }

 private:
  std::vector<std::string> answers_;
};

struct Question {
  std::string id;
  std::string text;
  Entity topic_entity;
  /// Scoring view of the gold answers (display names, unique modulo
  /// normalization).
  AnswerSet gold_answers;
  /// Graph view: the same answers as entities. Seed loaders keep ids here
  /// (Freebase mids and the like) for path targets and involvement checks;
  /// labels mirror gold_answers.
  std::vector<Entity> gold_entities;
  Setting setting = Setting::NonComp;

  bool involves_gold(const std::string& entity_id) const {
    for (const auto& e : gold_entities) {
      if (e.id == entity_id) return true;
    }
    return false;
  }
};

struct Passage {
  std::string id;
  std::optional<Entity> subject_entity;
  std::string text;
  int token_count = 0;
  Polarity polarity = Polarity::Positive;
};

struct EvidenceBundle {
  std::vector<Triple> kg_evidence;
  std::vector<Passage> text_evidence;

  std::size_t item_count() const { return kg_evidence.size() + text_evidence.size(); }
  std::int64_t total_passage_tokens() const;
};

using Provenance = std::map<std::string, std::string>;

struct BenchmarkInstance {
  std::string id;
  Question question;
  Scenario scenario = Scenario::Positive;
  EvidenceBundle bundle;
  std::optional<AnswerSet> incorrect_answers;
  Provenance provenance;
};

/// Counts tokens of passage text. The default is whitespace word counting;
/// alternate tokenizers plug in through this hook.
using TokenCounter = std::function<int(std::string_view)>;

int whitespace_token_count(std::string_view text);
TokenCounter default_token_counter();

}  // namespace conflictqa
