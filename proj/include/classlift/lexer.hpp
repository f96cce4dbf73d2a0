#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "classlift/text.hpp"

namespace classlift {

enum class TokenKind {
  Identifier,  // includes keywords; check text against isKeyword
  Number,
  String,
  Regex,
  Template,  // whole template literal, substitutions included
  Punct,
  EndOfFile,
};

struct Token {
  TokenKind kind = TokenKind::EndOfFile;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string_view text;
  bool newline_before = false;  // a line terminator sits in the gap before this token
};

struct LexError {
  std::size_t offset = 0;
  std::string message;
};

// Tokenizes JavaScript source bytes. Whitespace and comments are trivia (the
// gap between consecutive token spans); string, regex and template contents
// stay opaque inside single tokens. A shebang first line counts as trivia.
// The result always ends with an EndOfFile token.
std::variant<std::vector<Token>, LexError> lex(std::string_view src);

bool isIdentStart(char c);
bool isIdentChar(char c);
bool isKeyword(std::string_view word);

inline bool isIdent(const Token& t, std::string_view text) {
  return t.kind == TokenKind::Identifier && t.text == text;
}
inline bool isPunct(const Token& t, std::string_view text) {
  return t.kind == TokenKind::Punct && t.text == text;
}

// True when the identifier token at `idx` reads as a plain reference:
// not a property selector after '.', not an object-literal key before ':',
// and not a declaration name right after function/var/let/const/class.
bool isPlainReference(const std::vector<Token>& toks, std::size_t idx);

// Indices of plain-reference occurrences of `name` in [first, last). With
// `skip_function_bodies`, ranges inside `function ... { ... }` bodies are
// ignored (they execute later, not where they appear).
std::vector<std::size_t> findReferences(const std::vector<Token>& toks,
                                        std::size_t first, std::size_t last,
                                        std::string_view name,
                                        bool skip_function_bodies);

// Number of function literals in [first, last): `function` keywords plus
// arrow tokens.
std::size_t countFunctionLiterals(const std::vector<Token>& toks,
                                  std::size_t first, std::size_t last);

// Token texts with all trivia dropped; empty on lex failure with `ok=false`.
std::vector<std::string> tokenStream(std::string_view src, bool* ok = nullptr);

// Structural equality: identical token streams, whitespace and comments
// ignored. Unlexable input compares unequal.
bool tokensEqual(std::string_view a, std::string_view b);

}  // namespace classlift
