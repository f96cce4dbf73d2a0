#include "classlift/lexer.hpp"

#include <array>
#include <set>

namespace classlift {

bool isIdentStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool isIdentChar(char c) {
  return isIdentStart(c) || (c >= '0' && c <= '9');
}

bool isKeyword(std::string_view word) {
  static const std::set<std::string_view> kKeywords = {
      "break",   "case",     "catch",  "class",     "const",  "continue",
      "debugger", "default", "delete", "do",        "else",   "export",
      "extends", "finally",  "for",    "function",  "if",     "import",
      "in",      "instanceof", "let",  "new",       "return", "super",
      "switch",  "this",     "throw",  "try",       "typeof", "var",
      "void",    "while",    "with",   "yield",     "null",   "true",
      "false"};
  return kKeywords.count(word) > 0;
}

namespace {

// Punctuators, longest first within each leading character.
const std::array<std::string_view, 48> kPuncts = {
    ">>>=", "===", "!==", ">>>", "<<=", ">>=", "**=", "...", "=>",  "==",
    "!=",   "<=",  ">=",  "&&",  "||",  "??",  "++",  "--",  "+=",  "-=",
    "*=",   "/=",  "%=",  "&=",  "|=",  "^=",  "<<",  ">>",  "**",  "{",
    "}",    "(",   ")",   "[",   "]",   ";",   ",",   "<",   ">",   "+",
    "-",    "*",   "/",   "%",   "&",   "|",   "^",   "!",   // and below
};
// remaining single chars handled explicitly: ~ ? : = . @ #

bool regexCanFollow(const std::vector<Token>& toks) {
  if (toks.empty()) return true;
  const Token& prev = toks.back();
  switch (prev.kind) {
    case TokenKind::Identifier:
      // After most keywords an expression (hence a regex) may start.
      if (isKeyword(prev.text) && prev.text != "this" && prev.text != "null" &&
          prev.text != "true" && prev.text != "false" && prev.text != "super") {
        return true;
      }
      return false;
    case TokenKind::Number:
    case TokenKind::String:
    case TokenKind::Regex:
    case TokenKind::Template:
      return false;
    case TokenKind::Punct:
      // After a closing paren/bracket a '/' divides. After '}' we assume a
      // block ended, so a regex may start (object-literal '}' followed by
      // division is vanishingly rare at statement position).
      if (prev.text == ")" || prev.text == "]") return false;
      return true;
    default:
      return true;
  }
}

struct Cursor {
  std::string_view src;
  std::size_t pos = 0;

  bool done() const { return pos >= src.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos + ahead < src.size() ? src[pos + ahead] : '\0';
  }
};

bool skipLineComment(Cursor& c) {
  c.pos += 2;
  while (!c.done() && c.peek() != '\n') c.pos++;
  return true;
}

bool skipBlockComment(Cursor& c, LexError* err) {
  std::size_t start = c.pos;
  c.pos += 2;
  while (!c.done()) {
    if (c.peek() == '*' && c.peek(1) == '/') {
      c.pos += 2;
      return true;
    }
    c.pos++;
  }
  *err = {start, "unterminated block comment"};
  return false;
}

bool scanString(Cursor& c, LexError* err) {
  char quote = c.peek();
  std::size_t start = c.pos;
  c.pos++;
  while (!c.done()) {
    char ch = c.peek();
    if (ch == '\\') {
      c.pos += 2;
      continue;
    }
    if (ch == quote) {
      c.pos++;
      return true;
    }
    if (ch == '\n') break;  // unescaped line break terminates the literal
    c.pos++;
  }
  *err = {start, "unterminated string literal"};
  return false;
}

bool scanTemplate(Cursor& c, LexError* err);

// Scans the expression inside `${ ... }`, tracking nested braces, strings,
// comments and nested templates. Regex detail is ignored here: contents are
// opaque by design.
bool scanTemplateSubstitution(Cursor& c, LexError* err) {
  std::size_t start = c.pos;
  c.pos += 2;  // ${
  int depth = 1;
  while (!c.done()) {
    char ch = c.peek();
    if (ch == '\'' || ch == '"') {
      if (!scanString(c, err)) return false;
      continue;
    }
    if (ch == '`') {
      if (!scanTemplate(c, err)) return false;
      continue;
    }
    if (ch == '/' && c.peek(1) == '/') {
      skipLineComment(c);
      continue;
    }
    if (ch == '/' && c.peek(1) == '*') {
      if (!skipBlockComment(c, err)) return false;
      continue;
    }
    if (ch == '{') depth++;
    if (ch == '}') {
      if (--depth == 0) {
        c.pos++;
        return true;
      }
    }
    c.pos++;
  }
  *err = {start, "unterminated template substitution"};
  return false;
}

bool scanTemplate(Cursor& c, LexError* err) {
  std::size_t start = c.pos;
  c.pos++;  // `
  while (!c.done()) {
    char ch = c.peek();
    if (ch == '\\') {
      c.pos += 2;
      continue;
    }
    if (ch == '$' && c.peek(1) == '{') {
      if (!scanTemplateSubstitution(c, err)) return false;
      continue;
    }
    if (ch == '`') {
      c.pos++;
      return true;
    }
    c.pos++;
  }
  *err = {start, "unterminated template literal"};
  return false;
}

bool scanRegex(Cursor& c, LexError* err) {
  std::size_t start = c.pos;
  c.pos++;  // /
  bool in_class = false;
  while (!c.done()) {
    char ch = c.peek();
    if (ch == '\\') {
      c.pos += 2;
      continue;
    }
    if (ch == '\n') break;
    if (ch == '[') in_class = true;
    if (ch == ']') in_class = false;
    if (ch == '/' && !in_class) {
      c.pos++;
      while (!c.done() && isIdentChar(c.peek())) c.pos++;  // flags
      return true;
    }
    c.pos++;
  }
  *err = {start, "unterminated regular expression"};
  return false;
}

void scanNumber(Cursor& c) {
  if (c.peek() == '0' && (c.peek(1) == 'x' || c.peek(1) == 'X' || c.peek(1) == 'b' ||
                          c.peek(1) == 'B' || c.peek(1) == 'o' || c.peek(1) == 'O')) {
    c.pos += 2;
    while (!c.done() && (isIdentChar(c.peek()))) c.pos++;
    return;
  }
  while (!c.done() && c.peek() >= '0' && c.peek() <= '9') c.pos++;
  if (c.peek() == '.') {
    c.pos++;
    while (!c.done() && c.peek() >= '0' && c.peek() <= '9') c.pos++;
  }
  if (c.peek() == 'e' || c.peek() == 'E') {
    std::size_t mark = c.pos;
    c.pos++;
    if (c.peek() == '+' || c.peek() == '-') c.pos++;
    if (c.peek() >= '0' && c.peek() <= '9') {
      while (!c.done() && c.peek() >= '0' && c.peek() <= '9') c.pos++;
    } else {
      c.pos = mark;
    }
  }
}

}  // namespace

std::variant<std::vector<Token>, LexError> lex(std::string_view src) {
  std::vector<Token> toks;
  Cursor c{src, 0};
  LexError err;
  bool newline_pending = false;

  if (src.size() >= 2 && src[0] == '#' && src[1] == '!') {
    while (!c.done() && c.peek() != '\n') c.pos++;
  }

  auto push = [&](TokenKind kind, std::size_t begin) {
    Token t;
    t.kind = kind;
    t.begin = begin;
    t.end = c.pos;
    t.text = src.substr(begin, c.pos - begin);
    t.newline_before = newline_pending;
    newline_pending = false;
    toks.push_back(t);
  };

  while (!c.done()) {
    char ch = c.peek();
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\f' || ch == '\v' ||
        ch == '\n') {
      if (ch == '\n') newline_pending = true;
      c.pos++;
      continue;
    }
    if (ch == '/' && c.peek(1) == '/') {
      skipLineComment(c);
      continue;
    }
    if (ch == '/' && c.peek(1) == '*') {
      std::size_t before = c.pos;
      if (!skipBlockComment(c, &err)) return err;
      if (src.substr(before, c.pos - before).find('\n') != std::string_view::npos) {
        newline_pending = true;
      }
      continue;
    }

    std::size_t begin = c.pos;
    if (isIdentStart(ch)) {
      while (!c.done() && isIdentChar(c.peek())) c.pos++;
      push(TokenKind::Identifier, begin);
      continue;
    }
    if ((ch >= '0' && ch <= '9') ||
        (ch == '.' && c.peek(1) >= '0' && c.peek(1) <= '9')) {
      scanNumber(c);
      push(TokenKind::Number, begin);
      continue;
    }
    if (ch == '\'' || ch == '"') {
      if (!scanString(c, &err)) return err;
      push(TokenKind::String, begin);
      continue;
    }
    if (ch == '`') {
      if (!scanTemplate(c, &err)) return err;
      push(TokenKind::Template, begin);
      continue;
    }
    if (ch == '/' && regexCanFollow(toks)) {
      if (!scanRegex(c, &err)) return err;
      push(TokenKind::Regex, begin);
      continue;
    }

    // Punctuator, longest match first.
    std::string_view rest = src.substr(c.pos);
    std::string_view matched;
    for (std::string_view p : kPuncts) {
      if (!p.empty() && rest.size() >= p.size() && rest.substr(0, p.size()) == p) {
        matched = p;
        break;
      }
    }
    if (matched.empty()) {
      static const std::string_view kSingles = "~?:=.@#";
      if (kSingles.find(ch) != std::string_view::npos) {
        matched = rest.substr(0, 1);
      }
    }
    if (matched.empty()) {
      return LexError{c.pos, "unexpected character"};
    }
    c.pos += matched.size();
    push(TokenKind::Punct, begin);
  }

  Token eof;
  eof.kind = TokenKind::EndOfFile;
  eof.begin = eof.end = src.size();
  eof.newline_before = newline_pending;
  toks.push_back(eof);
  return toks;
}

bool isPlainReference(const std::vector<Token>& toks, std::size_t idx) {
  if (idx >= toks.size() || toks[idx].kind != TokenKind::Identifier) return false;
  if (isKeyword(toks[idx].text)) return false;
  if (idx > 0) {
    const Token& prev = toks[idx - 1];
    if (isPunct(prev, ".")) return false;
    if (prev.kind == TokenKind::Identifier &&
        (prev.text == "function" || prev.text == "var" || prev.text == "let" ||
         prev.text == "const" || prev.text == "class")) {
      return false;
    }
    // Object-literal key: `{ name:` or `, name:`.
    if (idx + 1 < toks.size() && isPunct(toks[idx + 1], ":") &&
        (isPunct(prev, "{") || isPunct(prev, ","))) {
      return false;
    }
  }
  return true;
}

std::vector<std::size_t> findReferences(const std::vector<Token>& toks,
                                        std::size_t first, std::size_t last,
                                        std::string_view name,
                                        bool skip_function_bodies) {
  std::vector<std::size_t> hits;
  if (last > toks.size()) last = toks.size();
  for (std::size_t i = first; i < last; ++i) {
    if (skip_function_bodies && isIdent(toks[i], "function")) {
      // Skip to the body '{' after the parameter list, then over the body.
      std::size_t j = i + 1;
      if (j < last && toks[j].kind == TokenKind::Identifier && !isKeyword(toks[j].text)) ++j;
      if (j < last && isPunct(toks[j], "(")) {
        int depth = 0;
        while (j < last) {
          if (isPunct(toks[j], "(")) depth++;
          if (isPunct(toks[j], ")") && --depth == 0) break;
          ++j;
        }
        ++j;
      }
      if (j < last && isPunct(toks[j], "{")) {
        int depth = 0;
        while (j < last) {
          if (isPunct(toks[j], "{")) depth++;
          if (isPunct(toks[j], "}") && --depth == 0) break;
          ++j;
        }
        i = j;
        continue;
      }
      continue;
    }
    if (toks[i].text == name && isPlainReference(toks, i)) hits.push_back(i);
  }
  return hits;
}

std::size_t countFunctionLiterals(const std::vector<Token>& toks,
                                  std::size_t first, std::size_t last) {
  std::size_t n = 0;
  if (last > toks.size()) last = toks.size();
  for (std::size_t i = first; i < last; ++i) {
    const Token& t = toks[i];
    if (t.kind == TokenKind::Identifier && t.text == "function") {
      if (i > 0 && isPunct(toks[i - 1], ".")) continue;  // member named `function`
      if (i + 1 < last && isPunct(toks[i + 1], ":") && i > 0 &&
          (isPunct(toks[i - 1], "{") || isPunct(toks[i - 1], ","))) {
        continue;  // object-literal key named `function`
      }
      ++n;
    } else if (isPunct(t, "=>")) {
      ++n;
    }
  }
  return n;
}

std::vector<std::string> tokenStream(std::string_view src, bool* ok) {
  auto result = lex(src);
  if (std::holds_alternative<LexError>(result)) {
    if (ok) *ok = false;
    return {};
  }
  if (ok) *ok = true;
  std::vector<std::string> out;
  for (const Token& t : std::get<std::vector<Token>>(result)) {
    if (t.kind == TokenKind::EndOfFile) break;
    out.emplace_back(t.text);
  }
  return out;
}

bool tokensEqual(std::string_view a, std::string_view b) {
  bool ok_a = false;
  bool ok_b = false;
  std::vector<std::string> ta = tokenStream(a, &ok_a);
  std::vector<std::string> tb = tokenStream(b, &ok_b);
  return ok_a && ok_b && ta == tb;
}

}  // namespace classlift
