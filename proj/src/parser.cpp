#include "classlift/parser.hpp"

#include <cassert>

namespace classlift {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

bool isContinuationToken(const Token& t) {
  if (t.kind == TokenKind::Punct) {
    // Tokens that extend the current expression across a line break.
    static const char* kCont[] = {".",  "(",  "[",  "+",  "-",  "*",  "/",  "%",
                                  "=",  "==", "===", "!=", "!==", "<",  ">",  "<=",
                                  ">=", "&&", "||", "??", "&",  "|",  "^",  "<<",
                                  ">>", ">>>", "?",  ":",  ",",  "=>", "**", "+=",
                                  "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=",
                                  ">>=", ">>>=", "**="};
    for (const char* c : kCont) {
      if (t.text == c) return true;
    }
    return false;
  }
  if (t.kind == TokenKind::Template) return true;
  if (t.kind == TokenKind::Identifier) {
    return t.text == "instanceof" || t.text == "in";
  }
  return false;
}

bool endsExpression(const Token& t) {
  switch (t.kind) {
    case TokenKind::Number:
    case TokenKind::String:
    case TokenKind::Regex:
    case TokenKind::Template:
      return true;
    case TokenKind::Identifier:
      if (!isKeyword(t.text)) return true;
      return t.text == "this" || t.text == "super" || t.text == "null" ||
             t.text == "true" || t.text == "false";
    case TokenKind::Punct:
      return t.text == ")" || t.text == "]" || t.text == "}" || t.text == "++" ||
             t.text == "--";
    default:
      return false;
  }
}

bool isOpen(const Token& t) {
  return t.kind == TokenKind::Punct &&
         (t.text == "(" || t.text == "[" || t.text == "{");
}
bool isClose(const Token& t) {
  return t.kind == TokenKind::Punct &&
         (t.text == ")" || t.text == "]" || t.text == "}");
}

class Parser {
 public:
  Parser(std::string_view src, std::vector<Token> toks)
      : src_(src), toks_(std::move(toks)) {}

  std::variant<SourceModule, ParseError> run(
      std::string path, std::shared_ptr<const std::string> buffer);

 private:
  std::string_view src_;
  std::vector<Token> toks_;
  std::vector<std::size_t> match_;  // delimiter partner per token index

  bool buildMatchMap(ParseError* err);
  std::vector<Stmt> parseList(std::size_t first, std::size_t last,
                              std::size_t trivia_from, std::size_t* tail_begin);
  std::size_t statementEnd(std::size_t i, std::size_t last) const;
  std::size_t blockStatementEnd(std::size_t i, std::size_t last) const;
  std::size_t expressionEnd(std::size_t i, std::size_t last) const;
  Stmt classify(std::size_t first, std::size_t last);

  // Matchers. Window tokens are [first, last); `last` excludes any trailing
  // `;` already (see classify). They return false when the shape is not met.
  bool matchFunctionDecl(std::size_t first, std::size_t last, Stmt* out);
  bool matchVarDecl(std::size_t first, std::size_t last, Stmt* out);
  bool matchClassDecl(std::size_t first, std::size_t last, Stmt* out);
  bool parseMembers(std::size_t first, std::size_t last,
                    std::vector<ClassMember>* out);
  bool matchExprPattern(std::size_t first, std::size_t last, Stmt* out);
  bool matchIife(std::size_t first, std::size_t last, Stmt* out);

  // Parses `function name? (params) { body }` occupying exactly [first, last).
  bool parseFunctionExactly(std::size_t first, std::size_t last, FunctionInfo* out);
  std::size_t parsePath(std::size_t i, std::size_t last,
                        std::vector<std::string>* segments) const;
  bool hasTopLevelAssign(std::size_t first, std::size_t last) const;

  const Token& tok(std::size_t i) const { return toks_[i]; }
};

bool Parser::buildMatchMap(ParseError* err) {
  match_.assign(toks_.size(), kNone);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i + 1 < toks_.size(); ++i) {  // skip EOF
    const Token& t = toks_[i];
    if (isOpen(t)) {
      stack.push_back(i);
    } else if (isClose(t)) {
      static const std::string_view kPair = "()[]{}";
      if (stack.empty()) {
        *err = {t.begin, "unbalanced delimiter"};
        return false;
      }
      std::string_view open = toks_[stack.back()].text;
      std::size_t oi = kPair.find(open);
      if (kPair.substr(oi + 1, 1) != t.text) {
        *err = {t.begin, "mismatched delimiter"};
        return false;
      }
      match_[stack.back()] = i;
      match_[i] = stack.back();
      stack.pop_back();
    }
  }
  if (!stack.empty()) {
    *err = {toks_[stack.back()].begin, "unbalanced delimiter"};
    return false;
  }
  return true;
}

std::variant<SourceModule, ParseError> Parser::run(
    std::string path, std::shared_ptr<const std::string> buffer) {
  ParseError err;
  if (!buildMatchMap(&err)) return err;

  SourceModule mod;
  mod.path = std::move(path);
  mod.format = detectFormat(src_);

  std::size_t eof = toks_.size() - 1;
  std::size_t tail_begin = 0;
  mod.statements = parseList(0, eof, 0, &tail_begin);
  mod.tail_begin = tail_begin;
  mod.tokens = std::move(toks_);
  mod.buffer = std::move(buffer);
  return mod;
}

std::vector<Stmt> Parser::parseList(std::size_t first, std::size_t last,
                                    std::size_t trivia_from,
                                    std::size_t* tail_begin) {
  std::vector<Stmt> stmts;
  std::size_t i = first;
  std::size_t trivia = trivia_from;
  while (i < last) {
    std::size_t end_idx = statementEnd(i, last);
    assert(end_idx > i);
    Stmt s = classify(i, end_idx);
    s.trivia_begin = trivia;
    s.begin = tok(i).begin;
    s.end = tok(end_idx - 1).end;
    s.tok_begin = i;
    s.tok_end = end_idx;
    trivia = s.end;
    stmts.push_back(std::move(s));
    i = end_idx;
  }
  *tail_begin = trivia;
  return stmts;
}

std::size_t Parser::statementEnd(std::size_t i, std::size_t last) const {
  const Token& t = tok(i);
  if (t.kind == TokenKind::Identifier) {
    if (t.text == "function" && i + 1 < last &&
        tok(i + 1).kind == TokenKind::Identifier && !isKeyword(tok(i + 1).text)) {
      // Declaration: function Name (params) { body }
      std::size_t p = i + 2;
      if (p < last && isPunct(tok(p), "(") && match_[p] != kNone) {
        std::size_t body = match_[p] + 1;
        if (body < last && isPunct(tok(body), "{") && match_[body] != kNone &&
            match_[body] < last) {
          return match_[body] + 1;
        }
      }
      return expressionEnd(i, last);
    }
    if (t.text == "class") {
      int depth = 0;
      std::size_t j = i + 1;
      while (j < last) {
        if (depth == 0 && isPunct(tok(j), "{")) break;
        if (isOpen(tok(j))) depth++;
        if (isClose(tok(j))) depth--;
        ++j;
      }
      if (j < last && match_[j] != kNone && match_[j] < last) return match_[j] + 1;
      return expressionEnd(i, last);
    }
    if (t.text == "if" || t.text == "for" || t.text == "while" ||
        t.text == "do" || t.text == "switch" || t.text == "try" ||
        t.text == "with") {
      return blockStatementEnd(i, last);
    }
  }
  if (isPunct(t, "{")) {
    if (match_[i] != kNone && match_[i] < last) return match_[i] + 1;
  }
  if (isPunct(t, ";")) return i + 1;
  return expressionEnd(i, last);
}

std::size_t Parser::blockStatementEnd(std::size_t i, std::size_t last) const {
  bool is_do = isIdent(tok(i), "do");
  int depth = 0;
  std::size_t j = i;
  while (j < last) {
    const Token& t = tok(j);
    if (isOpen(t)) depth++;
    if (isClose(t)) {
      if (depth == 0) return j;  // enclosing closer; should not happen
      depth--;
      if (depth == 0 && t.text == "}") {
        std::size_t n = j + 1;
        while (n < last && isPunct(tok(n), ";")) ++n;
        bool continues = false;
        if (n < last && tok(n).kind == TokenKind::Identifier) {
          std::string_view w = tok(n).text;
          continues = (w == "else" || w == "catch" || w == "finally" ||
                       (is_do && w == "while"));
        }
        if (!continues) {
          // `do {...} while (cond);` handled above; other block statements
          // end at their closing brace. Any ';' run directly after belongs
          // to the statement only when it terminates a do-while.
          return j + 1;
        }
        j = n;
        continue;
      }
    }
    if (depth == 0 && isPunct(t, ";")) {
      std::size_t n = j + 1;
      bool continues = false;
      if (n < last && tok(n).kind == TokenKind::Identifier) {
        std::string_view w = tok(n).text;
        continues = (w == "else" || w == "catch" || w == "finally" ||
                     (is_do && w == "while"));
      }
      if (!continues) return j + 1;
      j = n;
      continue;
    }
    ++j;
  }
  return last;
}

std::size_t Parser::expressionEnd(std::size_t i, std::size_t last) const {
  int depth = 0;
  std::size_t j = i;
  while (j < last) {
    const Token& t = tok(j);
    if (isOpen(t)) {
      depth++;
      ++j;
      continue;
    }
    if (isClose(t)) {
      if (depth == 0) return j;  // enclosing closer
      depth--;
      if (depth == 0 && t.text == "}" && j + 1 < last) {
        const Token& next = tok(j + 1);
        if (!isPunct(next, ";") && next.newline_before &&
            !isContinuationToken(next)) {
          return j + 1;
        }
      }
      if (depth == 0 && t.text == "}" && j + 1 >= last) return j + 1;
      ++j;
      continue;
    }
    if (depth == 0) {
      if (isPunct(t, ";")) return j + 1;
      if (j > i && t.newline_before && !isContinuationToken(t) &&
          endsExpression(tok(j - 1))) {
        return j;  // automatic semicolon insertion
      }
    }
    ++j;
  }
  return last;
}

Stmt Parser::classify(std::size_t first, std::size_t last) {
  Stmt out;
  if (matchFunctionDecl(first, last, &out)) return out;
  if (matchVarDecl(first, last, &out)) return out;
  if (matchClassDecl(first, last, &out)) return out;
  if (matchExprPattern(first, last, &out)) return out;
  out.kind = StmtKind::Opaque;
  return out;
}

bool Parser::parseFunctionExactly(std::size_t first, std::size_t last,
                                  FunctionInfo* out) {
  if (first >= last || !isIdent(tok(first), "function")) return false;
  std::size_t p = first + 1;
  std::string name;
  if (p < last && tok(p).kind == TokenKind::Identifier && !isKeyword(tok(p).text)) {
    name = std::string(tok(p).text);
    ++p;
  }
  if (p >= last || !isPunct(tok(p), "(") || match_[p] == kNone) return false;
  std::size_t close_paren = match_[p];
  std::size_t body = close_paren + 1;
  if (body >= last || !isPunct(tok(body), "{") || match_[body] == kNone) return false;
  std::size_t close_brace = match_[body];
  if (close_brace != last - 1) return false;

  out->name = std::move(name);
  out->keyword_begin = tok(first).begin;
  out->params_span = {tok(p).end, tok(close_paren).begin};
  out->body_span = {tok(body).begin, tok(close_brace).end};
  out->body_tok_begin = body + 1;
  out->body_tok_end = close_brace;
  std::size_t tail = 0;
  out->body = parseList(body + 1, close_brace, tok(body).end, &tail);
  out->body_tail_begin = tail;
  return true;
}

bool Parser::matchFunctionDecl(std::size_t first, std::size_t last, Stmt* out) {
  if (!isIdent(tok(first), "function") || first + 1 >= last ||
      tok(first + 1).kind != TokenKind::Identifier ||
      isKeyword(tok(first + 1).text)) {
    return false;
  }
  FunctionInfo fn;
  if (!parseFunctionExactly(first, last, &fn)) return false;
  out->kind = StmtKind::FunctionDecl;
  out->fn = std::move(fn);
  return true;
}

bool Parser::matchVarDecl(std::size_t first, std::size_t last, Stmt* out) {
  const Token& t = tok(first);
  if (t.kind != TokenKind::Identifier ||
      (t.text != "var" && t.text != "let" && t.text != "const")) {
    return false;
  }
  if (first + 1 >= last || tok(first + 1).kind != TokenKind::Identifier ||
      isKeyword(tok(first + 1).text)) {
    return false;  // destructuring and friends stay opaque
  }
  VarDeclInfo info;
  info.keyword = std::string(t.text);
  info.name = std::string(tok(first + 1).text);

  std::size_t end = last;
  if (end > first && isPunct(tok(end - 1), ";")) --end;

  // Depth-0 commas mean several declarators.
  int depth = 0;
  for (std::size_t j = first + 2; j < end; ++j) {
    if (isOpen(tok(j))) depth++;
    if (isClose(tok(j))) depth--;
    if (depth == 0 && isPunct(tok(j), ",")) {
      info.single_declarator = false;
      break;
    }
  }

  if (first + 2 >= end) {
    info.init_kind = VarInitKind::None;
  } else if (isPunct(tok(first + 2), "=")) {
    std::size_t v = first + 3;
    if (v >= end) return false;
    info.init_span = {tok(v).begin, tok(end - 1).end};
    info.init_kind = VarInitKind::Other;
    if (info.single_declarator) {
      if (isIdent(tok(v), "function")) {
        FunctionInfo fn;
        if (parseFunctionExactly(v, end, &fn)) {
          info.init_kind = VarInitKind::Function;
          info.fn = std::move(fn);
        }
      } else if (isIdent(tok(v), "new") && v + 1 < end &&
                 tok(v + 1).kind == TokenKind::Identifier &&
                 !isKeyword(tok(v + 1).text)) {
        if (v + 2 == end) {
          info.init_kind = VarInitKind::New;
          info.new_class = std::string(tok(v + 1).text);
          info.new_args_span = {tok(v + 1).end, tok(v + 1).end};
        } else if (isPunct(tok(v + 2), "(") && match_[v + 2] == end - 1) {
          info.init_kind = VarInitKind::New;
          info.new_class = std::string(tok(v + 1).text);
          info.new_args_span = {tok(v + 2).end, tok(end - 1).begin};
        }
      } else if (isIdent(tok(v), "require") && v + 1 < end &&
                 isPunct(tok(v + 1), "(") && match_[v + 1] == end - 1 &&
                 v + 2 < end && tok(v + 2).kind == TokenKind::String &&
                 v + 3 == end - 1) {
        info.init_kind = VarInitKind::Require;
        std::string_view raw = tok(v + 2).text;
        info.require_path = std::string(raw.substr(1, raw.size() - 2));
      }
    }
  } else if (!info.single_declarator) {
    info.init_kind = VarInitKind::None;
  } else {
    return false;  // something other than `= init` follows the name
  }

  out->kind = StmtKind::VarDecl;
  out->var = std::move(info);
  return true;
}

bool Parser::matchClassDecl(std::size_t first, std::size_t last, Stmt* out) {
  if (!isIdent(tok(first), "class") || first + 1 >= last ||
      tok(first + 1).kind != TokenKind::Identifier ||
      isKeyword(tok(first + 1).text)) {
    return false;
  }
  ClassDeclInfo info;
  info.name = std::string(tok(first + 1).text);
  info.name_tok = first + 1;
  std::size_t j = first + 2;
  if (j < last && isIdent(tok(j), "extends")) {
    info.has_heritage = true;
    if (j + 1 < last && tok(j + 1).kind == TokenKind::Identifier &&
        !isKeyword(tok(j + 1).text) && j + 2 < last && isPunct(tok(j + 2), "{")) {
      info.superclass = std::string(tok(j + 1).text);
    }
  }
  // Body: first depth-0 `{`, which must close the statement.
  int depth = 0;
  std::size_t open = kNone;
  for (; j < last; ++j) {
    if (depth == 0 && isPunct(tok(j), "{")) {
      open = j;
      break;
    }
    if (isOpen(tok(j))) depth++;
    if (isClose(tok(j))) depth--;
  }
  if (open != kNone && match_[open] == last - 1) {
    std::size_t close = match_[open];
    info.body_span = {tok(open).begin, tok(close).end};
    info.body_tok_begin = open + 1;
    info.body_tok_end = close;
    info.body_parsed = parseMembers(open + 1, close, &info.members);
    if (!info.body_parsed) info.members.clear();
  }
  out->kind = StmtKind::ClassDecl;
  out->cls = std::move(info);
  return true;
}

bool Parser::parseMembers(std::size_t first, std::size_t last,
                          std::vector<ClassMember>* out) {
  std::size_t i = first;
  while (i < last) {
    if (isPunct(tok(i), ";")) {
      ++i;
      continue;
    }
    ClassMember m;
    m.begin_tok = i;
    if (isIdent(tok(i), "static") && i + 1 < last && !isPunct(tok(i + 1), "(")) {
      m.is_static = true;
      ++i;
    }
    if (i + 1 < last && (isIdent(tok(i), "get") || isIdent(tok(i), "set")) &&
        !isPunct(tok(i + 1), "(")) {
      m.kind = isIdent(tok(i), "get") ? MemberKind::Getter : MemberKind::Setter;
      ++i;
    }
    // Any identifier token works as a member name, keywords included.
    if (i >= last || tok(i).kind != TokenKind::Identifier) return false;
    m.name = std::string(tok(i).text);
    m.name_tok = i;
    std::size_t p = i + 1;
    if (p >= last || !isPunct(tok(p), "(") || match_[p] == kNone ||
        match_[p] >= last) {
      return false;
    }
    std::size_t close_paren = match_[p];
    std::size_t body = close_paren + 1;
    if (body >= last || !isPunct(tok(body), "{") || match_[body] == kNone ||
        match_[body] >= last) {
      return false;
    }
    std::size_t close_brace = match_[body];
    m.fn.name = m.name;
    m.fn.keyword_begin = tok(m.begin_tok).begin;
    m.fn.params_span = {tok(p).end, tok(close_paren).begin};
    m.fn.body_span = {tok(body).begin, tok(close_brace).end};
    m.fn.body_tok_begin = body + 1;
    m.fn.body_tok_end = close_brace;
    std::size_t tail = 0;
    m.fn.body = parseList(body + 1, close_brace, tok(body).end, &tail);
    m.fn.body_tail_begin = tail;
    out->push_back(std::move(m));
    i = close_brace + 1;
  }
  return true;
}

std::size_t Parser::parsePath(std::size_t i, std::size_t last,
                              std::vector<std::string>* segments) const {
  if (i >= last || tok(i).kind != TokenKind::Identifier || isKeyword(tok(i).text)) {
    return i;
  }
  segments->push_back(std::string(tok(i).text));
  std::size_t j = i + 1;
  while (j + 1 < last && isPunct(tok(j), ".") &&
         tok(j + 1).kind == TokenKind::Identifier) {
    // Allow `prototype` and friends; reject keywords as segments except
    // member names that the lexer classifies as keywords never appear here
    // because member selectors accept any identifier token.
    segments->push_back(std::string(tok(j + 1).text));
    j += 2;
  }
  return j;
}

bool Parser::matchIife(std::size_t first, std::size_t last, Stmt* out) {
  std::size_t i = first;
  if (i < last && tok(i).kind == TokenKind::Punct &&
      (tok(i).text == "!" || tok(i).text == "~" || tok(i).text == "+" ||
       tok(i).text == "-")) {
    ++i;
  } else if (i < last && isIdent(tok(i), "void")) {
    ++i;
  }

  std::size_t fn_first = kNone;
  std::size_t fn_last = kNone;
  if (i < last && isPunct(tok(i), "(") && match_[i] != kNone && match_[i] < last) {
    std::size_t close = match_[i];
    if (i + 1 < close && isIdent(tok(i + 1), "function")) {
      // Either (function(){...})(...) or (function(){...}(...)).
      std::size_t after = close + 1;
      if (after < last && isPunct(tok(after), "(") && match_[after] == last - 1) {
        fn_first = i + 1;
        fn_last = close;
      } else if (after == last) {
        // Call parens inside: function body must end before an inner call.
        std::size_t body_close = close - 1;
        if (isPunct(tok(body_close), ")") && match_[body_close] != kNone) {
          fn_first = i + 1;
          fn_last = match_[body_close];
        }
      }
    }
  } else if (i < last && i > first && isIdent(tok(i), "function")) {
    // Prefix form: !function(){...}(...)
    std::size_t call_close = last - 1;
    if (isPunct(tok(call_close), ")") && match_[call_close] != kNone) {
      fn_first = i;
      fn_last = match_[call_close];
    }
  }

  if (fn_first == kNone || fn_last == kNone || fn_last <= fn_first) return false;
  FunctionInfo fn;
  if (!parseFunctionExactly(fn_first, fn_last, &fn)) return false;
  out->kind = StmtKind::ExprStmt;
  out->pattern = IifeStmt{std::move(fn)};
  return true;
}

bool Parser::hasTopLevelAssign(std::size_t first, std::size_t last) const {
  int depth = 0;
  for (std::size_t i = first; i < last; ++i) {
    if (isOpen(tok(i))) {
      depth++;
    } else if (isClose(tok(i))) {
      depth--;
    } else if (depth == 0 && isPunct(tok(i), "=")) {
      return true;
    }
  }
  return false;
}

bool Parser::matchExprPattern(std::size_t first, std::size_t last, Stmt* out) {
  std::size_t end = last;
  if (end > first && isPunct(tok(end - 1), ";")) --end;
  if (end <= first) return false;

  if (matchIife(first, end, out)) return true;

  // this.prop = value
  if (isIdent(tok(first), "this") && first + 3 < end && isPunct(tok(first + 1), ".") &&
      tok(first + 2).kind == TokenKind::Identifier && isPunct(tok(first + 3), "=")) {
    std::size_t v = first + 4;
    if (v >= end) return false;
    // Assignment chains (`this.a = this.b = fn`) stay opaque.
    if (hasTopLevelAssign(v, end)) return false;
    ThisPropAssign pat;
    pat.prop = std::string(tok(first + 2).text);
    pat.value_span = {tok(v).begin, tok(end - 1).end};
    if (isIdent(tok(v), "function")) {
      FunctionInfo fn;
      if (parseFunctionExactly(v, end, &fn)) {
        pat.is_function = true;
        pat.fn = std::move(fn);
      }
    }
    out->kind = StmtKind::ExprStmt;
    out->pattern = std::move(pat);
    return true;
  }

  // new C(...) at statement position
  if (isIdent(tok(first), "new") && first + 1 < end &&
      tok(first + 1).kind == TokenKind::Identifier &&
      !isKeyword(tok(first + 1).text)) {
    if (first + 2 < end && isPunct(tok(first + 2), "(") &&
        match_[first + 2] == end - 1) {
      NewExprStmt pat;
      pat.class_name = std::string(tok(first + 1).text);
      pat.args_span = {tok(first + 2).end, tok(end - 1).begin};
      out->kind = StmtKind::ExprStmt;
      out->pattern = std::move(pat);
      return true;
    }
    return false;
  }

  std::vector<std::string> path;
  std::size_t after = parsePath(first, end, &path);
  if (path.empty()) return false;

  // Call forms: D.call(this, ...), D.m.call(this, ...),
  // D.prototype.m.call(this, ...), C.prototype.__defineGetter__(...)
  if (after < end && isPunct(tok(after), "(") && match_[after] == end - 1) {
    std::size_t open = after;
    std::size_t close = end - 1;
    std::string_view tail_seg = path.back();
    if ((tail_seg == "call" || tail_seg == "apply") && path.size() >= 2 &&
        path.size() <= 4 && open + 1 < close && isIdent(tok(open + 1), "this")) {
      bool is_apply = (tail_seg == "apply");
      ByteSpan args{tok(close).begin, tok(close).begin};
      if (open + 2 < close) {
        if (!isPunct(tok(open + 2), ",")) return false;
        if (open + 3 < close) args = {tok(open + 3).begin, tok(close - 1).end};
      }
      if (is_apply && open + 3 < close) {
        // apply takes a single array expression after `this`.
        int depth = 0;
        for (std::size_t j = open + 3; j < close; ++j) {
          if (isOpen(tok(j))) depth++;
          if (isClose(tok(j))) depth--;
          if (depth == 0 && isPunct(tok(j), ",")) return false;
        }
      }
      ByteSpan call{tok(first).begin, tok(close).end};
      if (path.size() == 2) {
        out->kind = StmtKind::ExprStmt;
        out->pattern = SuperCtorCall{path[0], args, call, is_apply};
        return true;
      }
      if (path.size() == 3) {
        out->kind = StmtKind::ExprStmt;
        out->pattern = SuperMethodCall{path[0], path[1], args, call, is_apply};
        return true;
      }
      if (path.size() == 4 && path[1] == "prototype") {
        out->kind = StmtKind::ExprStmt;
        out->pattern = SuperMethodCall{path[0], path[2], args, call, is_apply};
        return true;
      }
      return false;
    }
    if ((tail_seg == "__defineGetter__" || tail_seg == "__defineSetter__") &&
        path.size() == 3 && path[1] == "prototype") {
      // First argument up to a depth-0 comma, second a function expression.
      std::size_t comma = kNone;
      int depth = 0;
      for (std::size_t j = open + 1; j < end - 1; ++j) {
        if (isOpen(tok(j))) depth++;
        if (isClose(tok(j))) depth--;
        if (depth == 0 && isPunct(tok(j), ",")) {
          comma = j;
          break;
        }
      }
      if (comma == kNone || comma <= open + 1) return false;
      AccessorDefine pat;
      pat.is_getter = (tail_seg == "__defineGetter__");
      pat.class_name = path[0];
      pat.name_span = {tok(open + 1).begin, tok(comma - 1).end};
      if (comma == open + 2 && tok(open + 1).kind == TokenKind::String) {
        std::string_view raw = tok(open + 1).text;
        pat.literal_name = true;
        pat.name = std::string(raw.substr(1, raw.size() - 2));
      }
      std::size_t fn_first = comma + 1;
      std::size_t fn_last = end - 1;
      if (fn_first < fn_last && isPunct(tok(fn_first), "(") &&
          match_[fn_first] == fn_last - 1) {
        ++fn_first;
        --fn_last;
      }
      FunctionInfo fn;
      if (fn_first < fn_last && parseFunctionExactly(fn_first, fn_last, &fn)) {
        pat.fn = std::move(fn);
      }
      out->kind = StmtKind::ExprStmt;
      out->pattern = std::move(pat);
      return true;
    }
    return false;
  }

  // Assignment forms.
  if (after >= end || !isPunct(tok(after), "=")) return false;
  std::size_t v = after + 1;
  if (v >= end) return false;

  // module.exports = Ident
  if (path.size() == 2 && path[0] == "module" && path[1] == "exports" &&
      v + 1 == end && tok(v).kind == TokenKind::Identifier &&
      !isKeyword(tok(v).text)) {
    out->kind = StmtKind::ExprStmt;
    out->pattern = ModuleExportAssign{std::string(tok(v).text)};
    return true;
  }

  // C.prototype = new D(...)  |  Object.create(D.prototype)
  if (path.size() == 2 && path[1] == "prototype") {
    if (isIdent(tok(v), "new") && v + 1 < end &&
        tok(v + 1).kind == TokenKind::Identifier && !isKeyword(tok(v + 1).text)) {
      bool plain = (v + 2 == end) ||
                   (isPunct(tok(v + 2), "(") && match_[v + 2] == end - 1);
      if (plain) {
        out->kind = StmtKind::ExprStmt;
        out->pattern = ProtoChainAssign{path[0], std::string(tok(v + 1).text)};
        return true;
      }
    }
    if (isIdent(tok(v), "Object") && v + 6 < end && isPunct(tok(v + 1), ".") &&
        isIdent(tok(v + 2), "create") && isPunct(tok(v + 3), "(") &&
        match_[v + 3] == end - 1 && tok(v + 4).kind == TokenKind::Identifier &&
        isPunct(tok(v + 5), ".") && isIdent(tok(v + 6), "prototype") &&
        v + 7 == end - 1) {
      out->kind = StmtKind::ExprStmt;
      out->pattern = ProtoChainAssign{path[0], std::string(tok(v + 4).text)};
      return true;
    }
    return false;
  }

  // Paths of the form <class...>.prototype.<member>
  if (path.size() >= 3 && path[path.size() - 2] == "prototype") {
    std::vector<std::string> class_path(path.begin(), path.end() - 2);
    std::string member = path.back();

    // Alias chain: further `C.prototype.x =` groups before the function.
    std::vector<std::string> alias_methods{member};
    std::size_t cursor = v;
    while (true) {
      std::vector<std::string> next_path;
      std::size_t next_after = parsePath(cursor, end, &next_path);
      if (next_path.size() == 3 && next_path[1] == "prototype" &&
          next_path[0] == path[0] && class_path.size() == 1 &&
          next_after < end && isPunct(tok(next_after), "=")) {
        alias_methods.push_back(next_path[2]);
        cursor = next_after + 1;
        continue;
      }
      break;
    }
    if (alias_methods.size() >= 2) {
      FunctionInfo fn;
      if (cursor < end && parseFunctionExactly(cursor, end, &fn)) {
        out->kind = StmtKind::ExprStmt;
        out->pattern = AliasChainAssign{path[0], std::move(alias_methods), std::move(fn)};
        return true;
      }
      return false;
    }

    FunctionInfo fn;
    if (isIdent(tok(v), "function") && parseFunctionExactly(v, end, &fn)) {
      out->kind = StmtKind::ExprStmt;
      out->pattern = ProtoMethodAssign{std::move(class_path), std::move(member), std::move(fn)};
      return true;
    }
    // Mixed chains (`A.prototype.a = B.prototype.b = fn`) stay opaque.
    if (hasTopLevelAssign(v, end)) return false;
    ProtoPropAssign pat;
    pat.class_path = std::move(class_path);
    pat.prop = std::move(member);
    pat.value_span = {tok(v).begin, tok(end - 1).end};
    out->kind = StmtKind::ExprStmt;
    out->pattern = std::move(pat);
    return true;
  }

  // C.m = function | value
  if (path.size() == 2) {
    CtorPropAssign pat;
    pat.class_name = path[0];
    pat.prop = path[1];
    pat.value_span = {tok(v).begin, tok(end - 1).end};
    if (isIdent(tok(v), "function")) {
      FunctionInfo fn;
      if (parseFunctionExactly(v, end, &fn)) {
        pat.is_function = true;
        pat.fn = std::move(fn);
      }
    }
    if (!pat.is_function && hasTopLevelAssign(v, end)) return false;
    out->kind = StmtKind::ExprStmt;
    out->pattern = std::move(pat);
    return true;
  }

  return false;
}

}  // namespace

std::variant<SourceModule, ParseError> parse(std::string path, std::string text) {
  auto buffer = std::make_shared<const std::string>(std::move(text));
  if (!isValidUtf8(*buffer)) {
    return ParseError{0, "invalid UTF-8"};
  }
  auto lexed = lex(*buffer);
  if (std::holds_alternative<LexError>(lexed)) {
    const LexError& e = std::get<LexError>(lexed);
    return ParseError{e.offset, e.message};
  }
  Parser parser(*buffer, std::move(std::get<std::vector<Token>>(lexed)));
  return parser.run(std::move(path), std::move(buffer));
}

}  // namespace classlift
