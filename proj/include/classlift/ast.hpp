#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "classlift/lexer.hpp"
#include "classlift/text.hpp"

namespace classlift {

struct Stmt;

// A function declaration or expression. Body statements are island-parsed
// recursively; params stay raw text.
struct FunctionInfo {
  std::string name;            // empty for anonymous expressions
  ByteSpan params_span;        // inside the parens, exclusive
  ByteSpan body_span;          // braces included
  std::size_t keyword_begin = 0;  // offset of the `function` keyword
  std::size_t body_tail_begin = 0;  // trivia between last body stmt and `}`
  std::size_t body_tok_begin = 0;   // token range of the body, braces excluded
  std::size_t body_tok_end = 0;
  std::vector<Stmt> body;
};

// ---- Recognized expression-statement patterns ----

// this.prop = <value>;  (inside a function body)
struct ThisPropAssign {
  std::string prop;
  bool is_function = false;
  std::optional<FunctionInfo> fn;  // when is_function
  ByteSpan value_span;
};

// C.prototype.m = function (...) {...}
struct ProtoMethodAssign {
  std::vector<std::string> class_path;  // usually one segment; more for a.b.C
  std::string method;
  FunctionInfo fn;
};

// C.prototype.p = <non-function value>
struct ProtoPropAssign {
  std::vector<std::string> class_path;
  std::string prop;
  ByteSpan value_span;
};

// C.m = function (...) {...}   |   C.p = <value>
struct CtorPropAssign {
  std::string class_name;
  std::string prop;
  bool is_function = false;
  std::optional<FunctionInfo> fn;
  ByteSpan value_span;
};

// C.prototype = new D(...);  |  C.prototype = Object.create(D.prototype);
struct ProtoChainAssign {
  std::string class_name;
  std::string super_name;
};

// D.call(this, args...);  |  D.apply(this, argsArray);   (statement position)
struct SuperCtorCall {
  std::string super_name;
  ByteSpan args_span;  // after `this`, exclusive of parens; empty when no args
  ByteSpan call_span;  // the whole call expression, `;` excluded
  bool is_apply = false;  // apply form carries at most one array argument
};

// D.m.call(this, args...);  |  D.prototype.m.call(this, args...);  | .apply forms
struct SuperMethodCall {
  std::string super_name;
  std::string method;
  ByteSpan args_span;
  ByteSpan call_span;
  bool is_apply = false;
};

// C.prototype.__defineGetter__('p', function () {...});
struct AccessorDefine {
  bool is_getter = true;
  std::string class_name;
  bool literal_name = false;
  std::string name;       // decoded literal when literal_name
  ByteSpan name_span;     // the first argument
  std::optional<FunctionInfo> fn;  // absent when the second argument is not a plain function
};

// C.prototype.a = C.prototype.b = function (...) {...}
struct AliasChainAssign {
  std::string class_name;
  std::vector<std::string> methods;  // in source order; the last one is bound to the body
  FunctionInfo fn;
};

// module.exports = C;
struct ModuleExportAssign {
  std::string ident;
};

// new C(...);   (statement position)
struct NewExprStmt {
  std::string class_name;
  ByteSpan args_span;
};

// (function (...) { ... })(...);  and close variants
struct IifeStmt {
  FunctionInfo fn;
};

// Anything else.
struct OpaqueExpr {};

using ExprPattern =
    std::variant<ThisPropAssign, ProtoMethodAssign, ProtoPropAssign, CtorPropAssign,
                 ProtoChainAssign, SuperCtorCall, SuperMethodCall, AccessorDefine,
                 AliasChainAssign, ModuleExportAssign, NewExprStmt, IifeStmt,
                 OpaqueExpr>;

// ---- Statements ----

enum class StmtKind { FunctionDecl, VarDecl, ExprStmt, ClassDecl, Opaque };

enum class VarInitKind { None, Function, New, Require, Other };

struct VarDeclInfo {
  std::string keyword;  // var | let | const
  std::string name;     // first declarator
  bool single_declarator = true;
  VarInitKind init_kind = VarInitKind::None;
  ByteSpan init_span;
  std::string new_class;       // when init_kind == New
  ByteSpan new_args_span;      // inside the parens of `new C(...)`
  std::string require_path;    // when init_kind == Require (decoded string)
  std::optional<FunctionInfo> fn;  // when init_kind == Function
};

enum class MemberKind { Method, Getter, Setter };

struct ClassMember {
  MemberKind kind = MemberKind::Method;
  bool is_static = false;
  std::string name;  // "constructor" for the constructor
  std::size_t begin_tok = 0;
  std::size_t name_tok = 0;
  FunctionInfo fn;  // params/body spans; body statements parsed recursively
};

struct ClassDeclInfo {
  std::string name;
  std::string superclass;    // plain-identifier heritage; empty otherwise
  bool has_heritage = false;  // an `extends` clause of any shape is present
  std::size_t name_tok = 0;
  bool body_parsed = false;  // false: unsupported member shape, leave body alone
  std::size_t body_tok_begin = 0;  // inside the braces
  std::size_t body_tok_end = 0;
  ByteSpan body_span;  // includes both braces
  std::vector<ClassMember> members;

  const ClassMember* ctor() const {
    for (const auto& m : members)
      if (!m.is_static && m.kind == MemberKind::Method && m.name == "constructor")
        return &m;
    return nullptr;
  }
};

struct Stmt {
  StmtKind kind = StmtKind::Opaque;
  std::size_t trivia_begin = 0;  // [trivia_begin, begin): leading trivia
  std::size_t begin = 0;         // [begin, end): statement text
  std::size_t end = 0;
  std::size_t tok_begin = 0;  // token window [tok_begin, tok_end)
  std::size_t tok_end = 0;

  // Payloads; only the one matching `kind` is meaningful.
  std::optional<FunctionInfo> fn;        // FunctionDecl
  std::optional<VarDeclInfo> var;        // VarDecl
  std::optional<ClassDeclInfo> cls;      // ClassDecl
  ExprPattern pattern = OpaqueExpr{};    // ExprStmt

  std::string_view trivia(std::string_view src) const {
    return src.substr(trivia_begin, begin - trivia_begin);
  }
  std::string_view text(std::string_view src) const {
    return src.substr(begin, end - begin);
  }
};

// A parsed file. Statements partition the text: concatenating each
// statement's trivia and text, then `tail()`, reproduces the input byte for
// byte. The text lives behind a shared_ptr so token/statement views stay
// valid across moves and copies of the module.
struct SourceModule {
  std::string path;
  std::shared_ptr<const std::string> buffer;
  FormatInfo format;
  std::vector<Token> tokens;
  std::vector<Stmt> statements;
  std::size_t tail_begin = 0;  // trailing trivia after the last statement

  std::string_view text() const { return buffer ? *buffer : std::string_view(); }
  std::string_view tail() const { return text().substr(tail_begin); }
};

// Walks every statement in the module, depth first (function bodies
// included). `fn` receives (stmt, depth, parent_function_or_null).
template <typename Fn>
void forEachStmt(const std::vector<Stmt>& stmts, Fn&& fn, int depth = 0,
                 const FunctionInfo* owner = nullptr) {
  for (const Stmt& s : stmts) {
    fn(s, depth, owner);
    const FunctionInfo* inner = nullptr;
    if (s.kind == StmtKind::FunctionDecl && s.fn) inner = &*s.fn;
    if (s.kind == StmtKind::VarDecl && s.var && s.var->fn) inner = &*s.var->fn;
    if (s.kind == StmtKind::ExprStmt) {
      if (const auto* p = std::get_if<IifeStmt>(&s.pattern)) inner = &p->fn;
      if (const auto* p = std::get_if<ThisPropAssign>(&s.pattern)) {
        if (p->fn) inner = &*p->fn;
      }
      if (const auto* p = std::get_if<ProtoMethodAssign>(&s.pattern)) inner = &p->fn;
      if (const auto* p = std::get_if<CtorPropAssign>(&s.pattern)) {
        if (p->fn) inner = &*p->fn;
      }
      if (const auto* p = std::get_if<AccessorDefine>(&s.pattern)) {
        if (p->fn) inner = &*p->fn;
      }
      if (const auto* p = std::get_if<AliasChainAssign>(&s.pattern)) inner = &p->fn;
    }
    if (inner) forEachStmt(inner->body, fn, depth + 1, inner);
  }
}

}  // namespace classlift
