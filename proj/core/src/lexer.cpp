#include "lexer.hpp"

#include <cctype>

namespace mtlkit::detail {

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int tl = line, tc = col;
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && is_ident_char(s[j])) ++j;
      std::string id(s.substr(i, j - i));
      // K+ / K- are single tokens when written without a space.
      if (id == "K" && j < s.size() && (s[j] == '+' || (s[j] == '-' && (j + 1 >= s.size() || s[j + 1] != '>')))) {
        out.push_back({Token::Kind::Sym, std::string("K") + s[j], tl, tc});
        advance(j + 1 - i);
        continue;
      }
      out.push_back({Token::Kind::Ident, id, tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j + 1 < s.size() && s[j] == '/' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      out.push_back({Token::Kind::Number, std::string(s.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    static const char* two[] = {"->", "<=", ">=", "<-"};
    bool matched = false;
    for (const char* t : two) {
      if (s.substr(i, 2) == t) {
        if (std::string_view(t) == "<-" && s.substr(i, 3) == "<->") {
          out.push_back({Token::Kind::Sym, "<->", tl, tc});
          advance(3);
        } else if (std::string_view(t) == "<-") {
          break;
        } else {
          out.push_back({Token::Kind::Sym, t, tl, tc});
          advance(2);
        }
        matched = true;
        break;
      }
    }
    if (matched) continue;
    static const std::string_view singles = "()[],!&|<>=.+-~";
    if (singles.find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::Sym, std::string(1, c == '~' ? '!' : c), tl, tc});
      advance(1);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", tl, tc, {});
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

}  // namespace mtlkit::detail
