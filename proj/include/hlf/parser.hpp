#pragma once

// Expression language for the CLI. LL(1) recursive descent; offsets in
// errors are 1-based columns.
//
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := '-' factor | primary ('^' sint)?
//   primary := INT | 'g' | t<k> | '(' expr ')'
//   symsum  := ['-'] symterm (('+'|'-') symterm)*
//   symterm := [INT '*'] '{' expr (',' expr)* '}'
//   wittlit := 'w' '(' expr (';' expr)* ')'
//
// `g` is the fixed multiplicative generator of the residue field; integers
// are taken mod p.

#include <memory>
#include <string>
#include <vector>

#include "hlf/ksym.hpp"

namespace hlf {

struct Ast {
    enum class Kind { Int, Gen, Var, Neg, Add, Sub, Mul, Div, Pow, Symbol, SymScaled, SymSum, Witt };
    Kind kind = Kind::Int;
    i64 ival = 0;  // Int value, Var index, Pow exponent, SymScaled coefficient
    std::vector<Ast> kids;

    friend bool operator==(const Ast&, const Ast&) = default;
};

Ast parse_series(const std::string& text);
Ast parse_symbol_sum(const std::string& text);
Ast parse_witt(const std::string& text);

/// Canonical printing; parse(print(a)) == a.
std::string print_ast(const Ast& a);

FqSeries eval_series(const FqSeriesRing& SR, const Ast& a);
SymbolSum eval_symbol_sum(const FqSeriesRing& SR, const Ast& a);
std::vector<FqSeries> eval_witt(const FqSeriesRing& SR, const Ast& a);

/// Deterministic text renderings used by the CLI.
std::string series_to_string(const FqSeriesRing& SR, const FqSeries& s);
std::string symbol_to_string(const FqSeriesRing& SR, const SymbolSum& s);

}  // namespace hlf
