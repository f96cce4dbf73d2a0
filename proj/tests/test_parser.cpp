#include <doctest.h>

#include "classlift/parser.hpp"
#include "classlift/printer.hpp"

using namespace classlift;

namespace {

SourceModule mustParse(std::string text) {
  auto r = parse("test.js", std::move(text));
  if (std::holds_alternative<ParseError>(r)) {
    const auto& e = std::get<ParseError>(r);
    FAIL("parse error at ", e.offset, ": ", e.message);
  }
  return std::get<SourceModule>(std::move(r));
}

std::string_view spanText(const SourceModule& m, ByteSpan s) {
  return m.text().substr(s.begin, s.size());
}

}  // namespace

TEST_CASE("statement partition reproduces the input byte for byte") {
  const char* samples[] = {
      "",
      "\n",
      "// only a comment\n",
      "var a = 1;\nvar b = 2\nf(a, b)\n",
      "#!/usr/bin/env node\n'use strict';\nprocess.exit(0);\n",
      "function A() {\n  this.x = 1;\n}\nA.prototype.go = function() {\n"
      "  return this.x;\n};\n",
      "if (a) { b(); } else { c(); }\nwhile (x) y();\ndo { z(); } while (q);\n",
      "for (var i = 0; i < n; i++) {\n  s += i;\n}\n",
      "var s = 'str;ing' + `tpl ${a + {b:1}.b} end` + /re[;]x/g;\n",
      "try { f(); } catch (e) { g(); } finally { h(); }\n",
      "switch (m) {\n  case 1: break;\n  default: f();\n}\n",
      "a = b\n+ c;\nreturn\nx++\n",
      "(function() {\n  var hidden = 1;\n})();\n",
      "label: for (;;) break label;\n",
      "var weird = { 'a': 1, \"b\": [2, {c: 3}] };  // trailing\n/* block */\n",
  };
  for (const char* s : samples) {
    CAPTURE(s);
    SourceModule m = mustParse(s);
    CHECK(print(m) == s);
  }
}

TEST_CASE("parse failures") {
  SUBCASE("unbalanced delimiter") {
    auto r = parse("t.js", "function f() { if (a { } }");
    REQUIRE(std::holds_alternative<ParseError>(r));
  }
  SUBCASE("mismatched delimiter") {
    auto r = parse("t.js", "var a = [1, 2);");
    REQUIRE(std::holds_alternative<ParseError>(r));
  }
  SUBCASE("unterminated string") {
    auto r = parse("t.js", "var s = 'oops");
    REQUIRE(std::holds_alternative<ParseError>(r));
  }
  SUBCASE("unterminated block comment") {
    auto r = parse("t.js", "var a; /* never closed");
    REQUIRE(std::holds_alternative<ParseError>(r));
  }
  SUBCASE("invalid utf8") {
    auto r = parse("t.js", std::string("var s = 1; \xc3"));
    REQUIRE(std::holds_alternative<ParseError>(r));
  }
}

TEST_CASE("function declarations parse recursively") {
  SourceModule m = mustParse(
      "function Stack(capacity) {\n"
      "  this.items = [];\n"
      "  this.capacity = capacity;\n"
      "  this.push = function(v) {\n"
      "    this.items.push(v);\n"
      "  };\n"
      "}\n");
  REQUIRE(m.statements.size() == 1);
  const Stmt& s = m.statements[0];
  REQUIRE(s.kind == StmtKind::FunctionDecl);
  REQUIRE(s.fn.has_value());
  CHECK(s.fn->name == "Stack");
  CHECK(spanText(m, s.fn->params_span) == "capacity");
  REQUIRE(s.fn->body.size() == 3);

  const auto* a0 = std::get_if<ThisPropAssign>(&s.fn->body[0].pattern);
  REQUIRE(a0);
  CHECK(a0->prop == "items");
  CHECK_FALSE(a0->is_function);
  CHECK(spanText(m, a0->value_span) == "[]");

  const auto* a2 = std::get_if<ThisPropAssign>(&s.fn->body[2].pattern);
  REQUIRE(a2);
  CHECK(a2->prop == "push");
  CHECK(a2->is_function);
  REQUIRE(a2->fn.has_value());
  CHECK(spanText(m, a2->fn->params_span) == "v");
  CHECK(a2->fn->body.size() == 1);
}

TEST_CASE("var declarations classify their initializer") {
  SourceModule m = mustParse(
      "var a;\n"
      "var f = function(x) { return x; };\n"
      "var q = new Queue(1, 2);\n"
      "var util = require('./util');\n"
      "var n = 1 + 2;\n"
      "var p = 1, q2 = 2;\n"
      "let l = new D();\n");
  REQUIRE(m.statements.size() == 7);
  for (int i = 0; i < 7; i++) REQUIRE(m.statements[i].kind == StmtKind::VarDecl);

  CHECK(m.statements[0].var->init_kind == VarInitKind::None);
  CHECK(m.statements[0].var->name == "a");

  CHECK(m.statements[1].var->init_kind == VarInitKind::Function);
  REQUIRE(m.statements[1].var->fn.has_value());
  CHECK(m.statements[1].var->fn->name == "");

  CHECK(m.statements[2].var->init_kind == VarInitKind::New);
  CHECK(m.statements[2].var->new_class == "Queue");
  CHECK(spanText(m, m.statements[2].var->new_args_span) == "1, 2");

  CHECK(m.statements[3].var->init_kind == VarInitKind::Require);
  CHECK(m.statements[3].var->require_path == "./util");

  CHECK(m.statements[4].var->init_kind == VarInitKind::Other);
  CHECK(m.statements[5].var->single_declarator == false);

  CHECK(m.statements[6].var->keyword == "let");
  CHECK(m.statements[6].var->new_class == "D");
}

TEST_CASE("prototype and constructor patterns") {
  SourceModule m = mustParse(
      "Queue.prototype.enqueue = function(v) { this.store.push(v); };\n"
      "Queue.prototype.size = 0;\n"
      "Queue.max = function(a, b) { return a > b ? a : b; };\n"
      "Queue.DEFAULT_CAPACITY = 32;\n"
      "Stack.prototype = new Queue();\n"
      "Heap.prototype = Object.create(Tree.prototype);\n"
      "module.exports = Queue;\n");
  REQUIRE(m.statements.size() == 7);

  const auto* pm = std::get_if<ProtoMethodAssign>(&m.statements[0].pattern);
  REQUIRE(pm);
  CHECK(pm->class_path == std::vector<std::string>{"Queue"});
  CHECK(pm->method == "enqueue");
  CHECK(spanText(m, pm->fn.params_span) == "v");

  const auto* pp = std::get_if<ProtoPropAssign>(&m.statements[1].pattern);
  REQUIRE(pp);
  CHECK(pp->prop == "size");
  CHECK(spanText(m, pp->value_span) == "0");

  const auto* cm = std::get_if<CtorPropAssign>(&m.statements[2].pattern);
  REQUIRE(cm);
  CHECK(cm->prop == "max");
  CHECK(cm->is_function);

  const auto* cp = std::get_if<CtorPropAssign>(&m.statements[3].pattern);
  REQUIRE(cp);
  CHECK(cp->prop == "DEFAULT_CAPACITY");
  CHECK_FALSE(cp->is_function);
  CHECK(spanText(m, cp->value_span) == "32");

  const auto* ch1 = std::get_if<ProtoChainAssign>(&m.statements[4].pattern);
  REQUIRE(ch1);
  CHECK(ch1->class_name == "Stack");
  CHECK(ch1->super_name == "Queue");

  const auto* ch2 = std::get_if<ProtoChainAssign>(&m.statements[5].pattern);
  REQUIRE(ch2);
  CHECK(ch2->class_name == "Heap");
  CHECK(ch2->super_name == "Tree");

  const auto* ex = std::get_if<ModuleExportAssign>(&m.statements[6].pattern);
  REQUIRE(ex);
  CHECK(ex->ident == "Queue");
}

TEST_CASE("super-style call patterns") {
  SourceModule m = mustParse(
      "function Stack() {\n"
      "  Queue.call(this, 1, 2);\n"
      "  Queue.call(this);\n"
      "  Queue.init.call(this, x);\n"
      "  Queue.prototype.reset.call(this);\n"
      "}\n");
  const auto& body = m.statements[0].fn->body;
  REQUIRE(body.size() == 4);

  const auto* c0 = std::get_if<SuperCtorCall>(&body[0].pattern);
  REQUIRE(c0);
  CHECK(c0->super_name == "Queue");
  CHECK(spanText(m, c0->args_span) == "1, 2");
  CHECK(spanText(m, c0->call_span) == "Queue.call(this, 1, 2)");

  const auto* c1 = std::get_if<SuperCtorCall>(&body[1].pattern);
  REQUIRE(c1);
  CHECK(c1->args_span.empty());

  const auto* m0 = std::get_if<SuperMethodCall>(&body[2].pattern);
  REQUIRE(m0);
  CHECK(m0->super_name == "Queue");
  CHECK(m0->method == "init");
  CHECK(spanText(m, m0->args_span) == "x");

  const auto* m1 = std::get_if<SuperMethodCall>(&body[3].pattern);
  REQUIRE(m1);
  CHECK(m1->method == "reset");
  CHECK(m1->args_span.empty());
}

TEST_CASE("apply-style super call patterns") {
  SourceModule m = mustParse(
      "function Stack() {\n"
      "  Queue.apply(this, arguments);\n"
      "  Queue.apply(this);\n"
      "  Queue.prototype.reset.apply(this, [a, b]);\n"
      "  Queue.apply(this, a, b);\n"
      "}\n");
  const auto& body = m.statements[0].fn->body;
  REQUIRE(body.size() == 4);

  const auto* c0 = std::get_if<SuperCtorCall>(&body[0].pattern);
  REQUIRE(c0);
  CHECK(c0->is_apply);
  CHECK(spanText(m, c0->args_span) == "arguments");

  const auto* c1 = std::get_if<SuperCtorCall>(&body[1].pattern);
  REQUIRE(c1);
  CHECK(c1->is_apply);
  CHECK(c1->args_span.empty());

  const auto* m0 = std::get_if<SuperMethodCall>(&body[2].pattern);
  REQUIRE(m0);
  CHECK(m0->is_apply);
  CHECK(spanText(m, m0->args_span) == "[a, b]");

  // Two arguments after `this` is not the single-array shape.
  CHECK(std::get_if<SuperCtorCall>(&body[3].pattern) == nullptr);
}

TEST_CASE("accessor definitions") {
  SourceModule m = mustParse(
      "Sock.prototype.__defineGetter__('open', function() { return !!this.fd; });\n"
      "Sock.prototype.__defineSetter__('mode', function(v) { this._m = v; });\n"
      "Sock.prototype.__defineGetter__(name, function() { return 1; });\n");
  REQUIRE(m.statements.size() == 3);

  const auto* g = std::get_if<AccessorDefine>(&m.statements[0].pattern);
  REQUIRE(g);
  CHECK(g->is_getter);
  CHECK(g->class_name == "Sock");
  CHECK(g->literal_name);
  CHECK(g->name == "open");
  REQUIRE(g->fn.has_value());

  const auto* st = std::get_if<AccessorDefine>(&m.statements[1].pattern);
  REQUIRE(st);
  CHECK_FALSE(st->is_getter);
  CHECK(st->name == "mode");

  const auto* dyn = std::get_if<AccessorDefine>(&m.statements[2].pattern);
  REQUIRE(dyn);
  CHECK_FALSE(dyn->literal_name);
  CHECK(spanText(m, dyn->name_span) == "name");
}

TEST_CASE("alias chains need one class and one function") {
  SourceModule m = mustParse(
      "S.prototype.add = S.prototype.push = function(v) { this.a.push(v); };\n"
      "A.prototype.x = B.prototype.y = function() {};\n"
      "C.prototype.p = C.prototype.q = 5;\n");
  REQUIRE(m.statements.size() == 3);

  const auto* al = std::get_if<AliasChainAssign>(&m.statements[0].pattern);
  REQUIRE(al);
  CHECK(al->class_name == "S");
  CHECK(al->methods == std::vector<std::string>{"add", "push"});
  CHECK(spanText(m, al->fn.params_span) == "v");

  CHECK(std::get_if<AliasChainAssign>(&m.statements[1].pattern) == nullptr);
  CHECK(std::get_if<OpaqueExpr>(&m.statements[1].pattern) != nullptr);
  // A same-class chain over a non-function value is not an alias.
  CHECK(std::get_if<AliasChainAssign>(&m.statements[2].pattern) == nullptr);
  CHECK(std::get_if<OpaqueExpr>(&m.statements[2].pattern) != nullptr);
}

TEST_CASE("mixed assignment chains stay opaque") {
  SourceModule m = mustParse(
      "this.a = this.b = 5;\n"
      "C.x = C.y = 1;\n"
      "C.prototype.v = w = 2;\n");
  for (const Stmt& s : m.statements) {
    CAPTURE(s.text(m.text()));
    CHECK(std::get_if<OpaqueExpr>(&s.pattern) != nullptr);
  }
}

TEST_CASE("iife bodies are visible") {
  const char* forms[] = {
      "(function() {\n  var x = 1;\n})();\n",
      "(function() {\n  var x = 1;\n}());\n",
      "!function() {\n  var x = 1;\n}();\n",
  };
  for (const char* f : forms) {
    CAPTURE(f);
    SourceModule m = mustParse(f);
    REQUIRE(m.statements.size() == 1);
    const auto* iife = std::get_if<IifeStmt>(&m.statements[0].pattern);
    REQUIRE(iife);
    REQUIRE(iife->fn.body.size() == 1);
    CHECK(iife->fn.body[0].kind == StmtKind::VarDecl);
    CHECK(print(m) == f);
  }
}

TEST_CASE("class declarations") {
  SourceModule m = mustParse(
      "class Stack extends Queue {\n  constructor() { super(); }\n}\n"
      "class Leaf {}\n");
  REQUIRE(m.statements.size() == 2);
  CHECK(m.statements[0].kind == StmtKind::ClassDecl);
  CHECK(m.statements[0].cls->name == "Stack");
  CHECK(m.statements[0].cls->superclass == "Queue");
  CHECK(m.statements[0].cls->has_heritage);
  CHECK(m.statements[1].cls->name == "Leaf");
  CHECK(m.statements[1].cls->superclass == "");
  CHECK(!m.statements[1].cls->has_heritage);
  CHECK(m.statements[1].cls->body_parsed);
  CHECK(m.statements[1].cls->members.empty());
}

TEST_CASE("class bodies") {
  SUBCASE("member inventory") {
    SourceModule m = mustParse(
        "class Shape extends Base {\n"
        "  constructor(w, h) {\n"
        "    super();\n"
        "    this.w = w;\n"
        "    this.h = h;\n"
        "  }\n"
        "  area() {\n"
        "    return this.w * this.h;\n"
        "  }\n"
        "  get label() { return 'shape'; }\n"
        "  set label(v) { this.name = v; }\n"
        "  static union(a, b) { return a; }\n"
        "}\n");
    const auto& cls = *m.statements[0].cls;
    REQUIRE(cls.body_parsed);
    REQUIRE(cls.members.size() == 5);
    const ClassMember* ctor = cls.ctor();
    REQUIRE(ctor);
    CHECK(spanText(m, ctor->fn.params_span) == "w, h");
    REQUIRE(ctor->fn.body.size() == 3);
    CHECK(ctor->fn.body[0].kind == StmtKind::Opaque);  // super() stays opaque
    CHECK(std::get_if<ThisPropAssign>(&ctor->fn.body[1].pattern));
    CHECK(cls.members[1].name == "area");
    CHECK(cls.members[1].kind == MemberKind::Method);
    CHECK(!cls.members[1].is_static);
    CHECK(cls.members[2].kind == MemberKind::Getter);
    CHECK(cls.members[2].name == "label");
    CHECK(cls.members[3].kind == MemberKind::Setter);
    CHECK(cls.members[4].is_static);
    CHECK(cls.members[4].name == "union");
    CHECK(spanText(m, cls.members[4].fn.body_span) == "{ return a; }");
    CHECK(spanText(m, cls.body_span).front() == '{');
    CHECK(spanText(m, cls.body_span).back() == '}');
  }
  SUBCASE("keyword-ish member names and separators") {
    SourceModule m = mustParse(
        "class Store {\n  ;\n  delete(k) { drop(k); }\n"
        "  get(k) { return this.map[k]; }\n  static(x) { return x; }\n}\n");
    const auto& cls = *m.statements[0].cls;
    REQUIRE(cls.body_parsed);
    REQUIRE(cls.members.size() == 3);
    CHECK(cls.members[0].name == "delete");
    CHECK(cls.members[1].name == "get");
    CHECK(cls.members[1].kind == MemberKind::Method);
    CHECK(cls.members[2].name == "static");
    CHECK(!cls.members[2].is_static);
  }
  SUBCASE("unsupported member shapes leave the body opaque") {
    SourceModule m = mustParse(
        "class Fancy {\n  ['dyn' + k]() { return 1; }\n}\n"
        "class Fields {\n  count = 0;\n}\n");
    CHECK(m.statements[0].kind == StmtKind::ClassDecl);
    CHECK(!m.statements[0].cls->body_parsed);
    CHECK(m.statements[0].cls->members.empty());
    CHECK(!m.statements[1].cls->body_parsed);
  }
  SUBCASE("expression heritage records the clause but no name") {
    SourceModule m = mustParse("class Sub extends mix(Base, {}) {\n  go() { f(); }\n}\n");
    const auto& cls = *m.statements[0].cls;
    CHECK(cls.has_heritage);
    CHECK(cls.superclass == "");
    REQUIRE(cls.body_parsed);
    CHECK(cls.members[0].name == "go");
  }
}

TEST_CASE("new at statement position") {
  SourceModule m = mustParse("new Setup(a, b);\nnew Weird(a).go();\n");
  const auto* n = std::get_if<NewExprStmt>(&m.statements[0].pattern);
  REQUIRE(n);
  CHECK(n->class_name == "Setup");
  CHECK(spanText(m, n->args_span) == "a, b");
  CHECK(std::get_if<NewExprStmt>(&m.statements[1].pattern) == nullptr);
}

TEST_CASE("asi boundaries") {
  SourceModule m = mustParse(
      "var a = 1\n"
      "var b = 2\n"
      "a = b +\n"
      "    1\n"
      "f(a)\n");
  REQUIRE(m.statements.size() == 4);
  CHECK(m.statements[0].kind == StmtKind::VarDecl);
  CHECK(m.statements[1].kind == StmtKind::VarDecl);
  CHECK(m.statements[2].text(m.text()) == "a = b +\n    1");
}

TEST_CASE("nested statement text includes bodies") {
  SourceModule m = mustParse("if (a) {\n  f();\n} else if (b) {\n  g();\n} else {\n  h();\n}\nnext();\n");
  REQUIRE(m.statements.size() == 2);
  CHECK(m.statements[0].kind == StmtKind::Opaque);
  CHECK(m.statements[1].text(m.text()) == "next();");
}
