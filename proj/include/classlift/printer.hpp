#pragma once

#include <string>

#include "classlift/ast.hpp"

namespace classlift {

// Reassembles module text from its statement partition. The result is
// byte-identical to the text the module was parsed from.
std::string print(const SourceModule& mod);

}  // namespace classlift
