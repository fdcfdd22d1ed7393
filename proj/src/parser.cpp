// Copyright 2026 The RSLR Workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rslr/parser.hpp"

#include <array>
#include <cctype>

namespace rslr {

namespace {

enum class Tok { Ident, Number, String, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  // Unicode spellings map onto their ASCII forms.
  static const std::array<std::pair<std::string_view, std::string_view>, 4> kUnicode = {{
      {"\xCE\xBB", "\\"},          // λ
      {"\xC2\xAC", "~"},           // ¬
      {"\xE2\x96\xA1", "[]"},      // □
      {"\xE2\x96\xA0", "[#]"},     // ■
  }};
  static const std::array<std::string_view, 19> kSymbols = {
      "->", "[#]", "[]", "\\", ":", ".", "(", ")", "{",
      "}",  "|",   "=",  "~",  ";", "^", ",", "*", "[", "]"};

  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
      ++i;
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "--") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Span span{line, col};
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), span});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), span});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') throw Error("syntax", "unterminated string", span);
      std::string bits(src.substr(i + 1, j - i - 1));
      for (char b : bits) {
        if (b != '0' && b != '1')
          throw Error("syntax", "string literals may only contain 0 and 1", span);
      }
      out.push_back({Tok::String, bits, span});
      advance(j + 1 - i);
      continue;
    }
    bool matched = false;
    for (const auto& [u, ascii] : kUnicode) {
      if (src.substr(i, u.size()) == u) {
        out.push_back({Tok::Sym, std::string(ascii), span});
        advance(u.size());
        matched = true;
        break;
      }
    }
    if (matched) continue;
    for (auto sym : kSymbols) {
      if (src.substr(i, sym.size()) == sym) {
        out.push_back({Tok::Sym, std::string(sym), span});
        advance(sym.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw Error("syntax", "unexpected character '" + std::string(1, c) + "'", span);
    }
  }
  out.push_back({Tok::End, "", Span{line, col}});
  return out;
}

bool is_keyword(const std::string& s) {
  static const std::array<std::string_view, 11> kw = {
      "let", "case", "rec", "of", "if", "then", "else", "rand", "tail", "Str", "main"};
  for (auto k : kw) {
    if (s == k) return true;
  }
  return false;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  SurfaceProgram program() {
    SurfaceProgram p;
    while (!at_end()) {
      if (is_ident("let")) {
        Span span = next().span;
        SurfaceDefinition d;
        d.span = span;
        d.name = ident("definition name");
        expect(":");
        d.type = type();
        expect("=");
        d.term = term();
        expect(";");
        p.defs.push_back(std::move(d));
      } else if (is_ident("main")) {
        p.main_span = next().span;
        expect("=");
        p.main = ident("entry point name");
        expect(";");
      } else {
        fail("expected `let` or `main`");
      }
    }
    return p;
  }

  TermRef whole_term() {
    TermRef t = term();
    if (!at_end()) fail("unexpected input after term");
    return t;
  }

  TypeRef whole_type() {
    TypeRef t = type();
    if (!at_end()) fail("unexpected input after type");
    return t;
  }

  std::vector<SurfaceAction> trace() {
    std::vector<SurfaceAction> out;
    while (!at_end()) {
      std::string kw = ident("`pass` or `view`");
      expect("(");
      SurfaceAction a;
      if (kw == "pass") {
        if (accept("*")) {
          a.kind = SurfaceAction::Kind::PassAny;
        } else if (peek().kind == Tok::Number && peek().text == "1" && peek(1).text == "^" &&
                   peek(2).kind == Tok::Ident && peek(2).text == "n") {
          pos_ += 3;
          a.kind = SurfaceAction::Kind::PassSecurity;
        } else {
          a.kind = SurfaceAction::Kind::Pass;
          a.term = term();
        }
      } else if (kw == "view") {
        if (accept("*")) {
          a.kind = SurfaceAction::Kind::ViewAny;
        } else if (accept("{")) {
          a.kind = SurfaceAction::Kind::ViewSet;
          do {
            a.set.insert(bit_string());
          } while (accept(","));
          expect("}");
        } else if (is_ident("dist")) {
          next();
          a.kind = SurfaceAction::Kind::ViewDist;
          std::size_t start = pos_;
          a.term = term();
          a.name = start + 1 == pos_ && toks_[start].kind == Tok::Ident ? toks_[start].text
                                                                         : pretty(a.term);
        } else {
          a.kind = SurfaceAction::Kind::ViewStr;
          a.bits = bit_string();
        }
      } else {
        fail("expected `pass` or `view`");
      }
      expect(")");
      out.push_back(std::move(a));
      if (!accept(";")) break;
    }
    if (!at_end()) fail("unexpected input after trace");
    return out;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is_sym(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  bool is_ident(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == s;
  }
  bool accept(std::string_view s) {
    if (!is_sym(s)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "`" + t.text + "`";
    throw Error("syntax", msg + ", found " + found, t.span);
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail("expected `" + std::string(s) + "`");
  }
  std::string ident(const std::string& what) {
    if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail("expected " + what);
    return next().text;
  }

  std::string bit_string() {
    const Token& t = peek();
    if (t.kind == Tok::String) return next().text;
    if (t.kind == Tok::Number) {
      for (char c : t.text) {
        if (c != '0' && c != '1') fail("expected a binary string");
      }
      return next().text;
    }
    if (t.kind == Tok::Ident && t.text == "e") {
      next();
      return "";
    }
    fail("expected a binary string");
  }

  // -- types --------------------------------------------------------------

  bool at_aspect() const { return is_sym("[]") || is_sym("[#]"); }

  TypeRef type() {
    if (at_aspect()) {
      Aspect a = next().text == "[]" ? Aspect::Poly : Aspect::Const;
      TypeRef arg = atomic_type();
      expect("->");
      return Type::arrow(a, arg, type());
    }
    TypeRef t = atomic_type();
    if (is_sym("->")) fail("an arrow needs an aspect `[]` or `[#]` in front of its argument");
    return t;
  }

  TypeRef atomic_type() {
    if (is_ident("Str")) {
      next();
      return Type::str();
    }
    if (accept("(")) {
      TypeRef t = type();
      expect(")");
      return t;
    }
    fail("expected a type");
  }

  bool at_type_start() const {
    if (is_ident("Str") || at_aspect()) return true;
    return is_sym("(") && (is_ident("Str", 1) || is_sym("[]", 1) || is_sym("[#]", 1) ||
                           is_sym("(", 1));
  }

  // -- terms --------------------------------------------------------------

  TermRef term() {
    Span span = peek().span;
    if (accept("\\")) {
      std::string name = ident("a binder name");
      expect(":");
      if (!at_aspect()) fail("expected an aspect `[]` or `[#]`");
      Aspect a = next().text == "[]" ? Aspect::Poly : Aspect::Const;
      TypeRef t = atomic_type();
      expect(".");
      TermRef body = term();
      return make_lam(name, a, t, body, span);
    }
    if (is_ident("if")) {
      next();
      TermRef c = term();
      if (!is_ident("then")) fail("expected `then`");
      next();
      TermRef a = term();
      if (!is_ident("else")) fail("expected `else`");
      next();
      TermRef b = term();
      return make_if(c, a, b, span);
    }
    TermRef lhs = application();
    if (is_sym("=")) {
      Span eq_span = next().span;
      return make_eq(lhs, application(), eq_span);
    }
    return lhs;
  }

  bool at_unary_start() const {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::String:
        return true;
      case Tok::Number:
        return t.text == "0" || t.text == "1";
      case Tok::Ident:
        return !is_keyword(t.text) || t.text == "rand" || t.text == "tail" ||
               t.text == "case" || t.text == "rec";
      case Tok::Sym:
        return t.text == "~" || t.text == "(";
      default:
        return false;
    }
  }

  TermRef application() {
    TermRef f = unary();
    while (at_unary_start()) {
      Span span = peek().span;
      f = make_app(f, unary(), span);
    }
    return f;
  }

  TermRef unary() {
    Span span = peek().span;
    if (accept("~")) return make_not(unary(), span);
    return atom();
  }

  TermRef atom() {
    const Token& t = peek();
    Span span = t.span;
    switch (t.kind) {
      case Tok::String:
        return make_str(next().text, span);
      case Tok::Number: {
        std::string digits = next().text;
        if ((digits == "0" || digits == "1") && accept("(")) {
          TermRef inner = term();
          expect(")");
          return make_prepend(digits[0], inner, span);
        }
        if (digits == "1" && accept("^")) {
          if (peek().kind != Tok::Number) fail("expected a numeral exponent");
          std::string n = next().text;
          if (n.size() > 6) throw Error("syntax", "numeral too large", span);
          return make_ones(std::stoul(n), span);
        }
        throw Error("syntax", "bare number `" + digits + "`; write strings in quotes", span);
      }
      case Tok::Ident: {
        if (t.text == "rand") {
          next();
          return make_rand(span);
        }
        if (t.text == "tail") {
          next();
          expect("(");
          TermRef inner = term();
          expect(")");
          return make_tail(inner, span);
        }
        if (t.text == "case" || t.text == "rec") return case_or_rec();
        if (is_keyword(t.text)) fail("unexpected keyword");
        return make_var(next().text, span);
      }
      case Tok::Sym:
        if (accept("(")) {
          TermRef inner = term();
          expect(")");
          return inner;
        }
        break;
      default:
        break;
    }
    fail("expected a term");
  }

  TermRef case_or_rec() {
    const Token& kw = next();
    bool is_rec = kw.text == "rec";
    Span span = kw.span;
    TypeRef annot = at_type_start() ? type() : nullptr;
    TermRef scrut = term();
    if (!is_ident("of")) fail("expected `of`");
    next();
    expect("{");
    std::array<TermRef, 3> br;
    for (int i = 0; i < 3; ++i) {
      if (i > 0) expect("|");
      int slot;
      if (peek().kind == Tok::Number && peek().text == "0") {
        slot = 0;
      } else if (peek().kind == Tok::Number && peek().text == "1") {
        slot = 1;
      } else if (is_ident("e")) {
        slot = 2;
      } else {
        fail("expected a branch label `0`, `1` or `e`");
      }
      if (br[slot]) fail("duplicate branch label");
      next();
      expect("->");
      br[slot] = term();
    }
    expect("}");
    if (is_rec) {
      if (!annot) throw Error("syntax", "rec needs a result type", span);
      return make_rec(annot, scrut, br[0], br[1], br[2], span);
    }
    return make_case(annot, scrut, br[0], br[1], br[2], span);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

SurfaceProgram parse_program(std::string_view text) { return Parser(text).program(); }

TermRef parse_term(std::string_view text) { return Parser(text).whole_term(); }

TypeRef parse_type(std::string_view text) { return Parser(text).whole_type(); }

std::vector<SurfaceAction> parse_trace_literal(std::string_view text) {
  return Parser(text).trace();
}

}  // namespace rslr
