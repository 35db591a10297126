#include "conflictqa/answer_norm.hpp"

#include <cctype>
#include <vector>

namespace conflictqa {

std::string normalize_answer(std::string_view text) {
  // Lowercase and strip ASCII punctuation in one pass. Non-ASCII bytes pass
  // through untouched.
  std::string cleaned;
  cleaned.reserve(text.size());
  for (unsigned char c : text) {
    if (c < 0x80 && std::ispunct(c)) continue;
    cleaned.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
  }

  // Tokenize on whitespace, drop bare articles, re-join with single spaces.
  std::string out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (token != "a" && token != "an" && token != "the") {
      if (!out.empty()) out.push_back(' ');
      out += token;
    }
    token.clear();
  };
  for (unsigned char c : cleaned) {
    if (c < 0x80 && std::isspace(c)) {
      flush();
    } else {
      token.push_back(static_cast<char>(c));
    }
  }
  flush();
  return out;
}

}  // namespace conflictqa
