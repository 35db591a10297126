#include "conflictqa/corpus.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "conflictqa/error.hpp"

namespace conflictqa {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool blank(std::string_view s) {
  for (unsigned char c : s) {
    if (!std::isspace(c)) return false;
  }
  return true;
}

std::string collapse_ws(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

}  // namespace

TextCorpus TextCorpus::load_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw DataError("corpus directory not found: " + dir.string());
  }
  std::map<std::string, std::string> articles;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    articles[entry.path().stem().string()] = read_file(entry.path());
  }
  return TextCorpus(std::move(articles));
}

TextCorpus TextCorpus::load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path.string());

  std::map<std::string, std::string> articles;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.contains("entity") || !j.contains("text")) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": expected {entity, text}");
    }
    articles[j.at("entity").get<std::string>()] = j.at("text").get<std::string>();
  }
  return TextCorpus(std::move(articles));
}

TextCorpus TextCorpus::load(const std::filesystem::path& path) {
  return std::filesystem::is_directory(path) ? load_directory(path) : load_jsonl(path);
}

std::optional<std::string> TextCorpus::article(const std::string& entity_id) const {
  auto it = articles_.find(entity_id);
  if (it == articles_.end()) return std::nullopt;
  return it->second;
}

std::optional<Passage> extract_summary(const TextCorpus& corpus, const Entity& entity,
                                       const TokenCounter& tokens) {
  auto text = corpus.article(entity.id);
  if (!text) return std::nullopt;

  // Paragraphs are blocks separated by blank lines; take the first non-blank.
  std::istringstream in(*text);
  std::string line;
  std::string paragraph;
  while (std::getline(in, line)) {
    if (blank(line)) {
      if (!paragraph.empty()) break;
      continue;
    }
    if (!paragraph.empty()) paragraph.push_back('\n');
    paragraph += line;
  }
  if (paragraph.empty()) return std::nullopt;

  Passage p;
  p.id = "wiki:" + entity.id;
  p.subject_entity = entity;
  p.text = collapse_ws(paragraph);
  p.token_count = tokens ? tokens(p.text) : 0;
  p.polarity = Polarity::Positive;
  return p;
}

}  // namespace conflictqa
