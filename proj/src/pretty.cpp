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

#include <algorithm>

#include "rslr/syntax.hpp"

namespace rslr {

namespace {

// Binding strength, loosest first. A subterm printed below the level its
// position requires gets parentheses.
enum Level { kTop = 0, kEq = 1, kApp = 2, kUnary = 3, kAtom = 4 };

bool valid_ident(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

class Printer {
 public:
  explicit Printer(const TermRef& root) : reserved_(free_names(root)) {}

  std::string print(const TermRef& t, int need) {
    std::string out;
    int own = level(*t);
    if (own < need) {
      out += "(";
      emit(t, out);
      out += ")";
    } else {
      emit(t, out);
    }
    return out;
  }

 private:
  static int level(const Term& t) {
    switch (t.kind) {
      case TermKind::Lam:
      case TermKind::If:
        return kTop;
      case TermKind::Eq:
        return kEq;
      case TermKind::App:
        return kApp;
      case TermKind::Not:
        return kUnary;
      default:
        return kAtom;
    }
  }

  std::string fresh(const std::string& hint) {
    std::string base = valid_ident(hint) && !is_keyword(hint) ? hint : "x";
    auto taken = [&](const std::string& n) {
      return reserved_.count(n) > 0 ||
             std::find(scope_.begin(), scope_.end(), n) != scope_.end();
    };
    if (!taken(base)) return base;
    for (int i = 1;; ++i) {
      std::string n = base + std::to_string(i);
      if (!taken(n)) return n;
    }
  }

  static bool is_keyword(const std::string& s) {
    static const char* kw[] = {"let", "main", "case", "rec", "of", "if", "then",
                               "else", "rand", "tail", "Str", "e"};
    return std::any_of(std::begin(kw), std::end(kw), [&](const char* k) { return s == k; });
  }

  std::string branches(const TermRef& t) {
    return " of {0 -> " + print(t->kids[1], kTop) + " | 1 -> " + print(t->kids[2], kTop) +
           " | e -> " + print(t->kids[3], kTop) + "}";
  }

  std::string annotation(const TypeRef& type) {
    if (!type) return " ";
    std::string s = to_string(*type);
    return type->is_arrow() ? " (" + s + ") " : " " + s + " ";
  }

  void emit(const TermRef& t, std::string& out) {
    const auto& k = t->kids;
    switch (t->kind) {
      case TermKind::Var:
        if (t->index >= 0) {
          std::size_t pos = scope_.size() - 1 - static_cast<std::size_t>(t->index);
          out += t->index < static_cast<int>(scope_.size()) ? scope_[pos]
                                                            : "#" + std::to_string(t->index);
        } else {
          out += t->text == hole_name() ? "[.]" : t->text;
        }
        break;
      case TermKind::Str:
        out += "\"" + t->text + "\"";
        break;
      case TermKind::Zero:
        out += "0(" + print(k[0], kTop) + ")";
        break;
      case TermKind::One:
        out += "1(" + print(k[0], kTop) + ")";
        break;
      case TermKind::Tail:
        out += "tail(" + print(k[0], kTop) + ")";
        break;
      case TermKind::App:
        out += print(k[0], kApp) + " " + print(k[1], kUnary);
        break;
      case TermKind::Case:
        out += "case" + annotation(t->type) + print(k[0], kTop) + branches(t);
        break;
      case TermKind::Rec:
        out += "rec" + annotation(t->type) + print(k[0], kTop) + branches(t);
        break;
      case TermKind::Rand:
        out += "rand";
        break;
      case TermKind::Lam: {
        std::string name = fresh(t->text);
        std::string type = to_string(*t->type);
        if (t->type->is_arrow()) type = "(" + type + ")";
        out += "\\" + name + ":" + std::string(aspect_symbol(t->aspect)) + type + ". ";
        scope_.push_back(name);
        out += print(k[0], kTop);
        scope_.pop_back();
        break;
      }
      case TermKind::If:
        out += "if " + print(k[0], kTop) + " then " + print(k[1], kTop) + " else " +
               print(k[2], kTop);
        break;
      case TermKind::Eq:
        out += print(k[0], kApp) + " = " + print(k[1], kApp);
        break;
      case TermKind::Not:
        out += "~" + print(k[0], kUnary);
        break;
      case TermKind::Ones:
        out += "1^" + std::to_string(t->count);
        break;
    }
  }

  std::set<std::string> reserved_;
  std::vector<std::string> scope_;
};

}  // namespace

std::string pretty(const TermRef& t) { return Printer(t).print(t, kTop); }

std::string pretty(const ContextRef& c) { return pretty(c->image); }

}  // namespace rslr
