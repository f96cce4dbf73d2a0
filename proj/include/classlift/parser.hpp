#pragma once

#include <string>
#include <variant>

#include "classlift/ast.hpp"

namespace classlift {

struct ParseError {
  std::size_t offset = 0;
  std::string message;
};

// Island parse: recognizes the constructs the migration rules need, keeps
// everything else as byte-exact opaque statements. Fails only on unbalanced
// delimiters, unterminated literals/comments, or invalid UTF-8; a failed
// file is skipped by callers, never half-processed.
std::variant<SourceModule, ParseError> parse(std::string path, std::string text);

}  // namespace classlift
