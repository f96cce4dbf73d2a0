#include <doctest.h>

#include "classlift/lexer.hpp"

using namespace classlift;

namespace {

std::vector<Token> mustLex(std::string_view src) {
  auto r = lex(src);
  REQUIRE(std::holds_alternative<std::vector<Token>>(r));
  return std::get<std::vector<Token>>(r);
}

}  // namespace

TEST_CASE("token stream basics") {
  bool ok = false;
  auto toks = tokenStream("var x = 1;", &ok);
  CHECK(ok);
  CHECK(toks == std::vector<std::string>{"var", "x", "=", "1", ";"});
}

TEST_CASE("comments and whitespace are trivia") {
  auto toks = tokenStream("a /* gap */ + // line\nb");
  CHECK(toks == std::vector<std::string>{"a", "+", "b"});

  auto full = mustLex("a\n// c\nb");
  REQUIRE(full.size() == 3);  // a, b, EOF
  CHECK(full[1].newline_before);
}

TEST_CASE("block comment spanning lines sets newline flag") {
  auto full = mustLex("a /* x\ny */ b");
  REQUIRE(full.size() == 3);
  CHECK(full[1].newline_before);
}

TEST_CASE("string literals") {
  auto toks = mustLex("s = 'it\\'s' + \"a\\\"b\"");
  REQUIRE(toks.size() == 6);
  CHECK(toks[2].kind == TokenKind::String);
  CHECK(toks[2].text == "'it\\'s'");
  CHECK(toks[4].kind == TokenKind::String);

  auto bad = lex("'unterminated");
  CHECK(std::holds_alternative<LexError>(bad));
  auto newline = lex("'broken\n'");
  CHECK(std::holds_alternative<LexError>(newline));
}

TEST_CASE("template literals swallow substitutions") {
  auto toks = mustLex("t = `a${ {b: '}'} }c` + 1");
  REQUIRE(toks.size() == 6);
  CHECK(toks[2].kind == TokenKind::Template);
  CHECK(toks[4].kind == TokenKind::Number);
}

TEST_CASE("regex vs division") {
  SUBCASE("after = it is a regex") {
    auto toks = mustLex("var re = /ab+c/g;");
    CHECK(toks[3].kind == TokenKind::Regex);
    CHECK(toks[3].text == "/ab+c/g");
  }
  SUBCASE("after an operand it is division") {
    auto toks = mustLex("x = a / b / c;");
    CHECK(toks[3].kind == TokenKind::Punct);
    CHECK(toks[5].kind == TokenKind::Punct);
  }
  SUBCASE("character class hides the slash") {
    auto toks = mustLex("m = /a[/]b/;");
    CHECK(toks[2].kind == TokenKind::Regex);
    CHECK(toks[2].text == "/a[/]b/");
  }
  SUBCASE("after return it is a regex") {
    auto toks = mustLex("function f() { return /x/; }");
    bool found = false;
    for (const auto& t : toks) found = found || t.kind == TokenKind::Regex;
    CHECK(found);
  }
}

TEST_CASE("numbers") {
  auto toks = tokenStream("0x1F 0b101 1.5e-3 .25 42");
  CHECK(toks == std::vector<std::string>{"0x1F", "0b101", "1.5e-3", ".25", "42"});
}

TEST_CASE("multi-char punctuators lex longest first") {
  auto toks = tokenStream("a >>>= b === c && d ?? e => f");
  CHECK(toks == std::vector<std::string>{"a", ">>>=", "b", "===", "c", "&&",
                                         "d", "??", "e", "=>", "f"});
}

TEST_CASE("shebang is trivia") {
  auto toks = tokenStream("#!/usr/bin/env node\nvar a;");
  CHECK(toks == std::vector<std::string>{"var", "a", ";"});
}

TEST_CASE("plain references") {
  auto toks = mustLex("function Stack() { this.Stack = Stack; var Stack2 = {Stack: 1}; }");
  // Token layout: function Stack ( ) { this . Stack = Stack ; var Stack2 ...
  CHECK_FALSE(isPlainReference(toks, 1));  // declaration name
  CHECK_FALSE(isPlainReference(toks, 7));  // property selector
  CHECK(isPlainReference(toks, 9));        // plain use
}

TEST_CASE("reference scan can skip function bodies") {
  auto toks = mustLex("var a = new C(); function f() { return C; } C.go();");
  auto all = findReferences(toks, 0, toks.size() - 1, "C", false);
  CHECK(all.size() == 3);
  auto top = findReferences(toks, 0, toks.size() - 1, "C", true);
  CHECK(top.size() == 2);
}

TEST_CASE("function literal census") {
  auto toks = mustLex(
      "function A() {}\n"
      "var f = function() { return () => 1; };\n"
      "var o = {function: 2};\n");
  CHECK(countFunctionLiterals(toks, 0, toks.size() - 1) == 3);
}

TEST_CASE("structural token equality") {
  CHECK(tokensEqual("a  +\tb // c", "a + b"));
  CHECK_FALSE(tokensEqual("a + b", "a - b"));
  CHECK_FALSE(tokensEqual("'oops", "'oops"));
}
