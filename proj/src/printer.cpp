#include "classlift/printer.hpp"

namespace classlift {

std::string print(const SourceModule& mod) {
  std::string out;
  out.reserve(mod.text().size());
  for (const Stmt& s : mod.statements) {
    out.append(s.trivia(mod.text()));
    out.append(s.text(mod.text()));
  }
  out.append(mod.tail());
  return out;
}

}  // namespace classlift
