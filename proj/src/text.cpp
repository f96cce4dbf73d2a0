#include "classlift/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace classlift {

LineIndex::LineIndex(std::string_view text) {
  line_starts_.push_back(0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') line_starts_.push_back(i + 1);
  }
}

LineCol LineIndex::locate(std::size_t offset) const {
  auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
  std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
  std::size_t start = line_starts_[line - 1];
  return {line, offset - start + 1};
}

FormatInfo detectFormat(std::string_view text) {
  FormatInfo fmt;
  std::size_t lf = text.find('\n');
  if (lf != std::string_view::npos && lf > 0 && text[lf - 1] == '\r') fmt.newline = "\r\n";

  bool uses_tabs = false;
  std::array<std::size_t, 9> space_hist{};  // index = leading-space count
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty()) {
      if (line[0] == '\t') {
        uses_tabs = true;
      } else if (line[0] == ' ') {
        std::size_t n = line.find_first_not_of(' ');
        if (n != std::string_view::npos && n < space_hist.size()) space_hist[n]++;
      }
    }
    pos = eol + 1;
  }
  if (uses_tabs) {
    fmt.indent_unit = "\t";
  } else if (space_hist[4] > 0 && space_hist[2] == 0) {
    fmt.indent_unit = "    ";
  } else if (space_hist[3] > 0 && space_hist[2] == 0 && space_hist[4] == 0) {
    fmt.indent_unit = "   ";
  }
  return fmt;
}

bool isValidUtf8(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    std::size_t extra;
    if (c < 0x80) {
      extra = 0;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      if (c < 0xC2) return false;  // overlong
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      if (c > 0xF4) return false;
    } else {
      return false;
    }
    if (extra > 0 && i + extra >= text.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

namespace {

bool lineSensitive(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '`') return true;
    if (text[i] == '\\' && i + 1 < text.size() &&
        (text[i + 1] == '\n' || text[i + 1] == '\r')) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::string reindent(std::string_view text, int shift, std::string_view unit) {
  if (shift <= 0 || text.find('\n') == std::string_view::npos) return std::string(text);
  if (lineSensitive(text)) return std::string(text);

  std::string pad;
  for (int i = 0; i < shift; ++i) pad += unit;

  std::string out;
  out.reserve(text.size() + pad.size() * 8);
  for (std::size_t i = 0; i < text.size(); ++i) {
    out += text[i];
    if (text[i] == '\n' && i + 1 < text.size() && text[i + 1] != '\n' &&
        text[i + 1] != '\r') {
      out += pad;
    }
  }
  return out;
}

std::string_view lineIndentAt(std::string_view text, std::size_t offset) {
  if (offset > text.size()) offset = text.size();
  std::size_t start = text.rfind('\n', offset == 0 ? 0 : offset - 1);
  start = (start == std::string_view::npos) ? 0 : start + 1;
  std::size_t end = start;
  while (end < text.size() && (text[end] == ' ' || text[end] == '\t')) ++end;
  return text.substr(start, end - start);
}

int indentUnitsAt(std::string_view text, std::size_t offset, std::string_view unit) {
  std::string_view indent = lineIndentAt(text, offset);
  if (unit.empty()) return 0;
  int units = 0;
  while (indent.size() >= unit.size() && indent.substr(0, unit.size()) == unit) {
    indent.remove_prefix(unit.size());
    ++units;
  }
  return units;
}

namespace {

bool isCommentLine(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  if (i + 1 < line.size() && line[i] == '/' && (line[i + 1] == '/' || line[i + 1] == '*')) {
    return true;
  }
  // continuation or close of a block comment
  if (i < line.size() && line[i] == '*') return true;
  return false;
}

bool isBlankLine(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

TriviaSplit splitLeadingCommentBlock(std::string_view trivia,
                                     bool starts_at_line_boundary) {
  // Break into lines, each including its terminator; the final piece (the
  // indentation of the statement itself) has none.
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < trivia.size()) {
    std::size_t eol = trivia.find('\n', pos);
    if (eol == std::string_view::npos) {
      lines.push_back(trivia.substr(pos));
      break;
    }
    lines.push_back(trivia.substr(pos, eol - pos + 1));
    pos = eol + 1;
  }

  // Last element without a line break is statement indentation; comment lines
  // sit directly above it.
  std::size_t tail = lines.size();
  if (tail > 0 && !lines[tail - 1].empty() && lines[tail - 1].back() != '\n') --tail;

  // The first trivia line begins right after the previous statement's last
  // byte, so unless the trivia opens a file/block it is not a full line and
  // cannot belong to the leading block.
  std::size_t floor_idx = starts_at_line_boundary ? 0 : 1;

  std::size_t first_comment = tail;
  while (first_comment > floor_idx) {
    std::string_view line = lines[first_comment - 1];
    if (isBlankLine(line) || !isCommentLine(line)) break;
    --first_comment;
  }
  if (first_comment > tail) first_comment = tail;

  TriviaSplit split;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i >= first_comment && i < tail) {
      split.comment_block += lines[i];
    } else {
      split.kept += lines[i];
    }
  }
  return split;
}

std::string triviaAfterDeletion(std::string_view trivia) {
  std::size_t eol = trivia.find('\n');
  if (eol == std::string_view::npos) return std::string();
  std::string_view head = trivia.substr(0, eol);
  if (head.find_first_not_of(" \t\r") == std::string_view::npos) return std::string();
  return std::string(trivia.substr(0, eol + 1));
}

std::string toUpperFirst(std::string_view word) {
  std::string out(word);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

}  // namespace classlift
