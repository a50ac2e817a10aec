#pragma once

// Concrete syntax, in two interchangeable spellings:
//
//   formula := member | NOT formula | "(" formula BINOP formula ")"
//            | QUANT "(" var ")" "[" formula "]" | "[" formula "]"
//   member  := "(" term IN term ")"
//   term    := var | "<" term ("," term)+ ">" | "{" var ("," var)* "|" formula "}"
//
//   ascii:   ~  &  |  =>  in  forall  exists  < >
//   unicode: ¬  &  ∨  ⇒   ∈   ∀       ∃       ⟨ ⟩
//
// The parser accepts both spellings (and ∧ for conjunction) in any mix, plus
// the tuple-headed comprehension "{⟨x0, x1⟩ | ...}".

#include <string>
#include <string_view>

#include "signet/formula.hpp"

namespace signet {

enum class Style { Ascii, Unicode };

std::string render(const Formula& f, Style style = Style::Unicode);
std::string render(const Term& t, Style style = Style::Unicode);
std::string render(const Expr& e, Style style = Style::Unicode);

// Parses and sort-checks. ParseError carries a 1-based code-point column.
Expr parse(std::string_view text);
FormulaPtr parse_formula(std::string_view text);
TermPtr parse_term(std::string_view text);

// Deduplication key. And/Or operands are ordered by their own keys; nothing
// else is normalized unless modulo_alpha, which also replaces bound variables
// with binder indices.
std::string canonical_form(const Formula& f, bool modulo_alpha = false);
std::string canonical_form(const Term& t, bool modulo_alpha = false);
std::string canonical_form(const Expr& e, bool modulo_alpha = false);

}  // namespace signet
