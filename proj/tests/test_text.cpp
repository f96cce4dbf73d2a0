#include <doctest.h>

#include "classlift/text.hpp"

using namespace classlift;

TEST_CASE("line index locates offsets") {
  LineIndex idx("ab\ncd\n\nef");
  CHECK(idx.lineCount() == 4);
  CHECK(idx.locate(0).line == 1);
  CHECK(idx.locate(0).col == 1);
  CHECK(idx.locate(1).col == 2);
  CHECK(idx.locate(3).line == 2);
  CHECK(idx.locate(3).col == 1);
  CHECK(idx.locate(6).line == 3);
  CHECK(idx.locate(7).line == 4);
}

TEST_CASE("format detection") {
  SUBCASE("defaults") {
    FormatInfo f = detectFormat("var x = 1;");
    CHECK(f.newline == "\n");
    CHECK(f.indent_unit == "  ");
  }
  SUBCASE("crlf") {
    FormatInfo f = detectFormat("a\r\nb\r\n");
    CHECK(f.newline == "\r\n");
  }
  SUBCASE("tabs") {
    FormatInfo f = detectFormat("if (x) {\n\treturn;\n}\n");
    CHECK(f.indent_unit == "\t");
  }
  SUBCASE("four spaces") {
    FormatInfo f = detectFormat("if (x) {\n    return;\n}\n");
    CHECK(f.indent_unit == "    ");
  }
  SUBCASE("two spaces") {
    FormatInfo f = detectFormat("if (x) {\n  if (y) {\n    return;\n  }\n}\n");
    CHECK(f.indent_unit == "  ");
  }
}

TEST_CASE("utf8 validation") {
  CHECK(isValidUtf8("plain ascii"));
  CHECK(isValidUtf8("caf\xc3\xa9"));
  CHECK(isValidUtf8("\xe2\x82\xac"));
  CHECK_FALSE(isValidUtf8("\xc3"));
  CHECK_FALSE(isValidUtf8("\x80"));
  CHECK_FALSE(isValidUtf8("\xc3\x28"));
}

TEST_CASE("reindent shifts continuation lines") {
  SUBCASE("one level deeper") {
    CHECK(reindent("f() {\n  a;\n}", 1, "  ") == "f() {\n    a;\n  }");
  }
  SUBCASE("blank lines untouched") {
    CHECK(reindent("a;\n\nb;", 1, "  ") == "a;\n\n  b;");
  }
  SUBCASE("zero shift is identity") {
    CHECK(reindent("a;\n  b;", 0, "  ") == "a;\n  b;");
  }
  SUBCASE("template literal bytes are line-sensitive") {
    std::string src = "f() {\n  return `a\nb`;\n}";
    CHECK(reindent(src, 1, "  ") == src);
  }
  SUBCASE("crlf") {
    CHECK(reindent("f() {\r\n  a;\r\n}", 1, "  ") == "f() {\r\n    a;\r\n  }");
  }
}

TEST_CASE("line indentation helpers") {
  std::string src = "a;\n    b;\n";
  CHECK(lineIndentAt(src, 7) == "    ");
  CHECK(lineIndentAt(src, 0) == "");
  CHECK(indentUnitsAt(src, 7, "  ") == 2);
  CHECK(indentUnitsAt(src, 7, "    ") == 1);
}

TEST_CASE("leading comment block splits off") {
  SUBCASE("single line comment") {
    TriviaSplit s = splitLeadingCommentBlock("\n// adds\n", false);
    CHECK(s.kept == "\n");
    CHECK(s.comment_block == "// adds\n");
  }
  SUBCASE("block stops at blank line") {
    TriviaSplit s = splitLeadingCommentBlock("\n// a\n\n// b\n// c\n", false);
    CHECK(s.kept == "\n// a\n\n");
    CHECK(s.comment_block == "// b\n// c\n");
  }
  SUBCASE("no comment") {
    TriviaSplit s = splitLeadingCommentBlock("\n\n", false);
    CHECK(s.kept == "\n\n");
    CHECK(s.comment_block == "");
  }
  SUBCASE("statement indentation stays behind") {
    TriviaSplit s = splitLeadingCommentBlock("\n  // x\n  ", false);
    CHECK(s.kept == "\n  ");
    CHECK(s.comment_block == "  // x\n");
  }
  SUBCASE("file start is a full line") {
    TriviaSplit s = splitLeadingCommentBlock("// header\n", true);
    CHECK(s.kept == "");
    CHECK(s.comment_block == "// header\n");
  }
  SUBCASE("first line after a statement is not a full line") {
    TriviaSplit s = splitLeadingCommentBlock(" // trailing\n", false);
    CHECK(s.kept == " // trailing\n");
    CHECK(s.comment_block == "");
  }
}

TEST_CASE("trivia after deleting a statement") {
  SUBCASE("plain newline gap drops entirely") {
    CHECK(triviaAfterDeletion("\n\n  ") == "");
  }
  SUBCASE("trailing comment of previous line survives") {
    CHECK(triviaAfterDeletion(" // keep\n  ") == " // keep\n");
  }
  SUBCASE("whitespace before the break is not content") {
    CHECK(triviaAfterDeletion("  \n// gone\n") == "");
  }
}

TEST_CASE("uppercase first letter") {
  CHECK(toUpperFirst("comparator") == "Comparator");
  CHECK(toUpperFirst("") == "");
  CHECK(toUpperFirst("X") == "X");
}
