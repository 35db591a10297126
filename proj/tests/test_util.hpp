#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "conflictqa/types.hpp"

namespace testutil {

inline std::filesystem::path fixtures_dir() {
  return std::filesystem::path(CONFLICTQA_FIXTURES_DIR);
}

/// Unique scratch directory, removed on destruction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& stem) {
    static std::mt19937_64 rng{std::random_device{}()};
    path = std::filesystem::temp_directory_path() /
           (stem + "-" + std::to_string(rng()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline std::filesystem::path write_file(const std::filesystem::path& path,
                                        const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  return path;
}

inline conflictqa::Triple make_triple(const std::string& head, const std::string& relation,
                                      const std::string& tail,
                                      conflictqa::Polarity polarity =
                                          conflictqa::Polarity::Positive) {
  return {conflictqa::Entity(head), conflictqa::Relation(relation), conflictqa::Entity(tail),
          polarity};
}

inline conflictqa::Passage make_passage(const std::string& id, const std::string& text,
                                        conflictqa::Polarity polarity =
                                            conflictqa::Polarity::Positive,
                                        const std::string& subject = "") {
  conflictqa::Passage p;
  p.id = id;
  if (!subject.empty()) p.subject_entity = conflictqa::Entity(subject);
  p.text = text;
  p.token_count = conflictqa::whitespace_token_count(text);
  p.polarity = polarity;
  return p;
}

inline conflictqa::Question make_question(const std::string& id, const std::string& text,
                                          const std::string& topic,
                                          const std::vector<std::string>& answers,
                                          conflictqa::Setting setting =
                                              conflictqa::Setting::NonComp) {
  conflictqa::Question q;
  q.id = id;
  q.text = text;
  q.topic_entity = conflictqa::Entity(topic);
  for (const auto& a : answers) {
    if (q.gold_answers.insert(a)) q.gold_entities.push_back(conflictqa::Entity(a));
  }
  q.setting = setting;
  return q;
}

}  // namespace testutil
