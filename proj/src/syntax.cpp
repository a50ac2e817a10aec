#include "signet/syntax.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace signet {

namespace {

// --- Printing ---------------------------------------------------------------

struct Spelling {
  const char* negation;
  const char* conj;
  const char* disj;
  const char* implies;
  const char* in;
  const char* forall;
  const char* exists;
  const char* open_tuple;
  const char* close_tuple;
};

constexpr Spelling kAscii{"~", "&", "|", "=>", "in", "forall", "exists", "<", ">"};
constexpr Spelling kUnicode{"¬", "&", "∨", "⇒", "∈", "∀", "∃", "⟨", "⟩"};

class Printer {
 public:
  Printer(Style style, bool canonical, bool modulo_alpha)
      : sp_(style == Style::Ascii ? kAscii : kUnicode),
        canonical_(canonical),
        modulo_alpha_(modulo_alpha) {}

  std::string formula(const Formula& f) {
    return std::visit(
        [&](const auto& n) -> std::string {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Member>) {
            return "(" + term(*n.lhs) + " " + sp_.in + " " + term(*n.rhs) + ")";
          } else if constexpr (std::is_same_v<T, Not>) {
            return sp_.negation + formula(*n.operand);
          } else if constexpr (std::is_same_v<T, Binary>) {
            std::string l = formula(*n.left);
            std::string r = formula(*n.right);
            if (canonical_ && n.op != Connective::Implies && r < l) std::swap(l, r);
            return "(" + l + " " + op(n.op) + " " + r + ")";
          } else {
            const char* q = n.quantifier == Quantifier::Forall ? sp_.forall : sp_.exists;
            binders_.push_back(n.var.name);
            std::string head = std::string(q) + "(" + name(n.var.name) + ")";
            std::string body = formula(*n.body);
            binders_.pop_back();
            return head + " [" + body + "]";
          }
        },
        f.node);
  }

  std::string term(const Term& t) {
    if (const auto* v = std::get_if<VarTerm>(&t.node)) return name(v->var.name);
    if (const auto* tu = std::get_if<TupleTerm>(&t.node)) {
      std::string out = sp_.open_tuple;
      for (std::size_t i = 0; i < tu->components.size(); ++i) {
        if (i) out += ", ";
        out += term(*tu->components[i]);
      }
      return out + sp_.close_tuple;
    }
    const auto& c = std::get<ComprehensionTerm>(t.node);
    for (const auto& b : c.bound) binders_.push_back(b.name);
    std::string out = "{";
    for (std::size_t i = 0; i < c.bound.size(); ++i) {
      if (i) out += ", ";
      out += name(c.bound[i].name);
    }
    out += " | " + formula(*c.body) + "}";
    binders_.resize(binders_.size() - c.bound.size());
    return out;
  }

 private:
  std::string op(Connective c) const {
    switch (c) {
      case Connective::And: return sp_.conj;
      case Connective::Or: return sp_.disj;
      case Connective::Implies: return sp_.implies;
    }
    return "?";
  }

  std::string name(const std::string& n) const {
    if (!modulo_alpha_) return n;
    for (std::size_t i = binders_.size(); i-- > 0;)
      if (binders_[i] == n) return "#" + std::to_string(binders_.size() - 1 - i);
    return n;
  }

  Spelling sp_;
  bool canonical_;
  bool modulo_alpha_;
  std::vector<std::string> binders_;
};

// --- Lexing -----------------------------------------------------------------

enum class Tok {
  LParen, RParen, LBrack, RBrack, LBrace, RBrace, LAngle, RAngle, Comma, Bar,
  Not, And, Or, Implies, In, Forall, Exists, Ident, End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based, in code points
};

std::vector<std::pair<char32_t, std::size_t>> decode_utf8(std::string_view s) {
  std::vector<std::pair<char32_t, std::size_t>> out;
  std::size_t i = 0;
  std::size_t column = 1;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    char32_t cp = 0;
    std::size_t len = 1;
    if (c < 0x80) {
      cp = c;
    } else if ((c >> 5) == 0x6) {
      cp = c & 0x1F;
      len = 2;
    } else if ((c >> 4) == 0xE) {
      cp = c & 0x0F;
      len = 3;
    } else if ((c >> 3) == 0x1E) {
      cp = c & 0x07;
      len = 4;
    } else {
      throw Error(ErrorCode::ParseError, "invalid UTF-8 at column " + std::to_string(column), column);
    }
    if (i + len > s.size())
      throw Error(ErrorCode::ParseError, "truncated UTF-8 at column " + std::to_string(column), column);
    for (std::size_t k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    out.emplace_back(cp, column);
    i += len;
    ++column;
  }
  out.emplace_back(U'\0', column);
  return out;
}

bool ident_start(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool ident_char(char32_t c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '_'; }

[[noreturn]] void fail(std::size_t column, const std::string& what) {
  throw Error(ErrorCode::ParseError, "parse error at column " + std::to_string(column) + ": " + what,
              column);
}

std::vector<Token> lex(std::string_view text) {
  const auto cps = decode_utf8(text);
  std::vector<Token> out;
  std::size_t i = 0;
  while (i + 1 < cps.size()) {
    const char32_t c = cps[i].first;
    const std::size_t col = cps[i].second;
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::string word;
      while (ident_char(cps[i].first)) word += static_cast<char>(cps[i++].first);
      while (cps[i].first == '\'') {
        word += '\'';
        ++i;
      }
      Tok kind = Tok::Ident;
      if (word == "in") kind = Tok::In;
      else if (word == "forall") kind = Tok::Forall;
      else if (word == "exists") kind = Tok::Exists;
      out.push_back({kind, word, col});
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBrack; break;
      case ']': kind = Tok::RBrack; break;
      case '{': kind = Tok::LBrace; break;
      case '}': kind = Tok::RBrace; break;
      case '<': case U'⟨': kind = Tok::LAngle; break;
      case '>': case U'⟩': kind = Tok::RAngle; break;
      case ',': kind = Tok::Comma; break;
      case '|': kind = Tok::Bar; break;
      case '~': case U'¬': kind = Tok::Not; break;
      case '&': case U'∧': kind = Tok::And; break;
      case U'∨': kind = Tok::Or; break;
      case U'⇒': kind = Tok::Implies; break;
      case U'∈': kind = Tok::In; break;
      case U'∀': kind = Tok::Forall; break;
      case U'∃': kind = Tok::Exists; break;
      case '=':
        if (cps[i + 1].first == '>') {
          out.push_back({Tok::Implies, "=>", col});
          i += 2;
          continue;
        }
        [[fallthrough]];
      default:
        fail(col, "unexpected character");
    }
    out.push_back({kind, "", col});
    ++i;
  }
  out.push_back({Tok::End, "", cps.back().second});
  return out;
}

// --- Parsing ----------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Expr expr() {
    Expr e;
    switch (peek().kind) {
      case Tok::Ident:
      case Tok::LAngle:
      case Tok::LBrace:
        e = term();
        break;
      default:
        e = formula();
    }
    if (peek().kind != Tok::End) fail(peek().column, "trailing input");
    return e;
  }

  FormulaPtr formula() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        next();
        return negation(formula());
      case Tok::Forall:
      case Tok::Exists: {
        next();
        const Quantifier q = t.kind == Tok::Forall ? Quantifier::Forall : Quantifier::Exists;
        expect(Tok::LParen, "'('");
        Variable v = variable();
        expect(Tok::RParen, "')'");
        expect(Tok::LBrack, "'['");
        FormulaPtr body = formula();
        expect(Tok::RBrack, "']'");
        return quantified(q, v, std::move(body));
      }
      case Tok::LBrack: {
        next();
        FormulaPtr inner = formula();
        expect(Tok::RBrack, "']'");
        return inner;
      }
      case Tok::LParen: {
        next();
        if (starts_formula(peek().kind)) {
          FormulaPtr left = formula();
          Connective op;
          switch (peek().kind) {
            case Tok::And: op = Connective::And; break;
            case Tok::Or:
            case Tok::Bar: op = Connective::Or; break;
            case Tok::Implies: op = Connective::Implies; break;
            default: fail(peek().column, "expected a connective");
          }
          next();
          FormulaPtr right = formula();
          expect(Tok::RParen, "')'");
          return binary(op, std::move(left), std::move(right));
        }
        TermPtr lhs = term();
        expect(Tok::In, "'in'");
        TermPtr rhs = term();
        expect(Tok::RParen, "')'");
        return member(std::move(lhs), std::move(rhs));
      }
      default:
        fail(t.column, "expected a formula");
    }
  }

  TermPtr term() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        return var_term(variable());
      case Tok::LAngle: {
        next();
        std::vector<TermPtr> parts{term()};
        while (peek().kind == Tok::Comma) {
          next();
          parts.push_back(term());
        }
        expect(Tok::RAngle, "'>'");
        return tuple_term(std::move(parts));
      }
      case Tok::LBrace: {
        next();
        std::vector<Variable> bound;
        const bool tuple_head = peek().kind == Tok::LAngle;
        if (tuple_head) next();
        bound.push_back(variable());
        while (peek().kind == Tok::Comma) {
          next();
          bound.push_back(variable());
        }
        if (tuple_head) expect(Tok::RAngle, "'>'");
        expect(Tok::Bar, "'|'");
        FormulaPtr body = formula();
        expect(Tok::RBrace, "'}'");
        return comprehension(std::move(bound), std::move(body));
      }
      default:
        fail(t.column, "expected a term");
    }
  }

 private:
  static bool starts_formula(Tok k) {
    return k == Tok::LParen || k == Tok::Not || k == Tok::Forall || k == Tok::Exists ||
           k == Tok::LBrack;
  }

  Variable variable() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail(t.column, "expected a variable");
    next();
    return make_variable(t.text);
  }

  const Token& peek() const { return toks_[pos_]; }
  void next() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }
  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(peek().column, std::string("expected ") + what);
    next();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string render(const Formula& f, Style style) { return Printer(style, false, false).formula(f); }
std::string render(const Term& t, Style style) { return Printer(style, false, false).term(t); }
std::string render(const Expr& e, Style style) {
  return is_formula(e) ? render(*std::get<FormulaPtr>(e), style) : render(*std::get<TermPtr>(e), style);
}

Expr parse(std::string_view text) {
  Expr e = Parser(lex(text)).expr();
  require_well_sorted(e);
  return e;
}

FormulaPtr parse_formula(std::string_view text) {
  Expr e = parse(text);
  if (!is_formula(e)) throw Error(ErrorCode::NotAFormula, "expected a formula: " + std::string(text));
  return std::get<FormulaPtr>(e);
}

TermPtr parse_term(std::string_view text) {
  Expr e = parse(text);
  if (is_formula(e)) throw Error(ErrorCode::SortMismatch, "expected a term: " + std::string(text));
  return std::get<TermPtr>(e);
}

std::string canonical_form(const Formula& f, bool modulo_alpha) {
  return "F:" + Printer(Style::Ascii, true, modulo_alpha).formula(f);
}

std::string canonical_form(const Term& t, bool modulo_alpha) {
  return "T:" + Printer(Style::Ascii, true, modulo_alpha).term(t);
}

std::string canonical_form(const Expr& e, bool modulo_alpha) {
  return is_formula(e) ? canonical_form(*std::get<FormulaPtr>(e), modulo_alpha)
                       : canonical_form(*std::get<TermPtr>(e), modulo_alpha);
}

}  // namespace signet
