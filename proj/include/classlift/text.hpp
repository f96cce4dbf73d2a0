#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace classlift {

// Half-open byte range [begin, end) into a source buffer.
struct ByteSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end > begin ? end - begin : 0; }
  bool empty() const { return end <= begin; }
};

struct LineCol {
  std::size_t line = 1;  // 1-based
  std::size_t col = 1;   // 1-based, in bytes
};

// Byte offset -> line/column lookup table.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text);

  LineCol locate(std::size_t offset) const;
  std::size_t lineCount() const { return line_starts_.size(); }

 private:
  std::vector<std::size_t> line_starts_;
};

// Formatting conventions of a file, detected from its bytes.
struct FormatInfo {
  std::string newline = "\n";
  std::string indent_unit = "  ";
};

// Newline style from the first line break found; indent unit from the most
// common leading-whitespace step. Defaults: LF and two spaces.
FormatInfo detectFormat(std::string_view text);

bool isValidUtf8(std::string_view text);

// Inserts `shift` copies of `unit` after every line break of `text`, except
// before blank lines. The first line is untouched (its indentation lives in
// the trivia that precedes the text). Returns `text` unchanged when shift
// is zero or the text contains constructs whose bytes are line-sensitive
// (line continuations inside string literals, template literals).
std::string reindent(std::string_view text, int shift, std::string_view unit);

// Leading whitespace of the line containing `offset`.
std::string_view lineIndentAt(std::string_view text, std::size_t offset);

// Indentation depth of the line containing `offset`, measured in units.
int indentUnitsAt(std::string_view text, std::size_t offset, std::string_view unit);

// Splits trivia into (kept, comment_block): the comment block is the run of
// full comment lines immediately preceding the trivia end, stopped by a
// blank line or non-comment content. Used to move a statement's leading
// comments along with it. `starts_at_line_boundary` is true only when the
// trivia begins a file or block, i.e. its first line is a full line rather
// than the tail of the previous statement's line.
struct TriviaSplit {
  std::string kept;
  std::string comment_block;  // full lines, each ending in a line break
};
TriviaSplit splitLeadingCommentBlock(std::string_view trivia,
                                     bool starts_at_line_boundary);

// Replacement trivia when a statement is dropped: keeps any trailing comment
// of the previous line (content before the first line break), drops the rest.
std::string triviaAfterDeletion(std::string_view trivia);

std::string toUpperFirst(std::string_view word);

}  // namespace classlift
