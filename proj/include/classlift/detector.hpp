#pragma once

#include <string>
#include <utility>
#include <vector>

#include "classlift/ast.hpp"

namespace classlift {

// A set of parsed source files treated as one program.
struct Project {
  std::vector<SourceModule> modules;
};

// Address of a statement: owning module, owning statement list, position.
// Lists are stable after parsing, so the pointer form is safe to keep.
struct StmtLoc {
  int module = -1;
  const std::vector<Stmt>* list = nullptr;
  std::size_t index = 0;

  bool valid() const { return list != nullptr; }
  const Stmt& stmt() const { return (*list)[index]; }
  bool operator==(const StmtLoc& o) const {
    return module == o.module && list == o.list && index == o.index;
  }
};

enum class MethodIdiom { InnerThis, Prototype, CtorProp, Getter, Setter };

struct MethodModel {
  std::string name;
  MethodIdiom idiom = MethodIdiom::Prototype;
  bool is_static = false;  // CtorProp methods resolve static call sites
  StmtLoc loc;             // defining statement
  const FunctionInfo* fn = nullptr;
  // An InnerThis function referencing a ctor-scope binding cannot be lifted
  // out of the constructor without losing its closure.
  bool captures_ctor_scope = false;
  bool remote = false;  // defined in a different module than the ctor
};

struct AttributeModel {
  std::string name;
  StmtLoc loc;
};

// Non-function data bound to the prototype or the constructor.
struct DataPropModel {
  std::string name;
  StmtLoc loc;
  bool on_prototype = true;
};

struct ClassModel {
  std::string name;
  StmtLoc ctor_loc;
  const FunctionInfo* ctor = nullptr;
  std::string super_name;  // empty when none
  StmtLoc chain_loc;
  bool has_chain = false;

  std::vector<MethodModel> methods;
  std::vector<AttributeModel> attributes;
  std::vector<DataPropModel> data_props;
  std::vector<StmtLoc> dynamic_accessors;  // non-literal or non-function accessor defines
  std::vector<StmtLoc> ctor_repairs;       // C.prototype.constructor = C
  // (real method name, other names) per alias chain, in source order.
  std::vector<std::pair<std::string, std::vector<std::string>>> alias_groups;
  bool instantiated = false;

  std::string_view sourcePath(const Project& p) const {
    return p.modules[ctor_loc.module].path;
  }
};

struct ClassMetrics {
  std::size_t noc = 0;
  std::size_t nom = 0;
  std::size_t total_functions = 0;
  std::size_t class_functions = 0;
  double class_density = 0.0;  // 0 when total_functions == 0
};

// One ClassModel per constructor function: a FunctionDecl instantiated with
// `new` somewhere in the project, or with this-bound properties, or owning
// prototype-family statements. Factory wrappers (a lone instanceof guard
// naming another function) are skipped.
std::vector<ClassModel> detect(const Project& project);

ClassMetrics metrics(const std::vector<ClassModel>& classes, const Project& project);

// Every statement list in the project: module roots plus all function bodies.
struct Scope {
  int module = -1;
  const std::vector<Stmt>* list = nullptr;
};
std::vector<Scope> collectScopes(const Project& project);

// Matches `if (!(this instanceof N)) return new N(...);` and yields N.
bool matchInstanceofGuard(const SourceModule& mod, const Stmt& stmt,
                          std::string* name);

// Names bound by `var x = require(...)` at the module root.
std::vector<std::string> requireBoundNames(const SourceModule& mod);

}  // namespace classlift
