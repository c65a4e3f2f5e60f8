#include "hlf/parser.hpp"

namespace hlf {

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;

    explicit Lexer(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    int col() const { return static_cast<int>(pos) + 1; }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    char get() {
        skip_ws();
        return pos < s.size() ? s[pos++] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        skip_ws();
        if (pos >= s.size() || s[pos] != c)
            throw ParseError(std::string("expected '") + c + "'", col());
        ++pos;
    }

    i64 integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected an integer", col());
        return std::stoll(s.substr(start, pos - start));
    }
    i64 signed_integer() {
        skip_ws();
        bool neg = eat('-');
        i64 v = integer();
        return neg ? -v : v;
    }
    bool at_int() {
        skip_ws();
        return pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]));
    }
    void done() {
        skip_ws();
        if (pos < s.size()) throw ParseError("trailing input", col());
    }
};

Ast mk(Ast::Kind k, i64 v = 0) {
    Ast a;
    a.kind = k;
    a.ival = v;
    return a;
}

Ast mk2(Ast::Kind k, Ast l, Ast r) {
    Ast a;
    a.kind = k;
    a.kids.push_back(std::move(l));
    a.kids.push_back(std::move(r));
    return a;
}

Ast parse_expr(Lexer& lx);

Ast parse_primary(Lexer& lx) {
    char c = lx.peek();
    if (c == '(') {
        lx.get();
        Ast inner = parse_expr(lx);
        lx.expect(')');
        return inner;
    }
    if (isdigit(static_cast<unsigned char>(c))) return mk(Ast::Kind::Int, lx.integer());
    if (c == 'g') {
        lx.get();
        return mk(Ast::Kind::Gen);
    }
    if (c == 't') {
        int at = lx.col();
        lx.get();
        if (!lx.at_int()) throw ParseError("expected a variable index after 't'", at + 1);
        i64 v = lx.integer();
        if (v < 1 || v > kMaxN) throw ParseError("unknown variable t" + std::to_string(v), at);
        return mk(Ast::Kind::Var, v);
    }
    throw ParseError("expected a value", lx.col());
}

Ast parse_factor(Lexer& lx) {
    if (lx.peek() == '-') {
        lx.get();
        Ast inner = parse_factor(lx);
        Ast n = mk(Ast::Kind::Neg);
        n.kids.push_back(std::move(inner));
        return n;
    }
    Ast base = parse_primary(lx);
    if (lx.eat('^')) {
        i64 e = lx.signed_integer();
        Ast p = mk(Ast::Kind::Pow, e);
        p.kids.push_back(std::move(base));
        return p;
    }
    return base;
}

Ast parse_term(Lexer& lx) {
    Ast left = parse_factor(lx);
    for (;;) {
        char c = lx.peek();
        if (c == '*') {
            lx.get();
            left = mk2(Ast::Kind::Mul, std::move(left), parse_factor(lx));
        } else if (c == '/') {
            lx.get();
            left = mk2(Ast::Kind::Div, std::move(left), parse_factor(lx));
        } else {
            return left;
        }
    }
}

Ast parse_expr(Lexer& lx) {
    Ast left = parse_term(lx);
    for (;;) {
        char c = lx.peek();
        if (c == '+') {
            lx.get();
            left = mk2(Ast::Kind::Add, std::move(left), parse_term(lx));
        } else if (c == '-') {
            lx.get();
            left = mk2(Ast::Kind::Sub, std::move(left), parse_term(lx));
        } else {
            return left;
        }
    }
}

Ast parse_symbol(Lexer& lx) {
    lx.expect('{');
    Ast sym = mk(Ast::Kind::Symbol);
    sym.kids.push_back(parse_expr(lx));
    while (lx.eat(',')) sym.kids.push_back(parse_expr(lx));
    lx.expect('}');
    return sym;
}

Ast parse_symterm(Lexer& lx) {
    i64 coef = 1;
    if (lx.at_int()) {
        coef = lx.integer();
        lx.expect('*');
    }
    Ast sym = parse_symbol(lx);
    Ast sc = mk(Ast::Kind::SymScaled, coef);
    sc.kids.push_back(std::move(sym));
    return sc;
}

}  // namespace

Ast parse_series(const std::string& text) {
    Lexer lx(text);
    Ast a = parse_expr(lx);
    lx.done();
    return a;
}

Ast parse_symbol_sum(const std::string& text) {
    Lexer lx(text);
    Ast sum = mk(Ast::Kind::SymSum);
    bool neg = lx.eat('-');
    Ast first = parse_symterm(lx);
    if (neg) first.ival = -first.ival;
    sum.kids.push_back(std::move(first));
    for (;;) {
        char c = lx.peek();
        if (c == '+' || c == '-') {
            lx.get();
            Ast t = parse_symterm(lx);
            if (c == '-') t.ival = -t.ival;
            sum.kids.push_back(std::move(t));
        } else {
            break;
        }
    }
    lx.done();
    return sum;
}

Ast parse_witt(const std::string& text) {
    Lexer lx(text);
    if (lx.get() != 'w') throw ParseError("expected 'w('", 1);
    lx.expect('(');
    Ast w = mk(Ast::Kind::Witt);
    w.kids.push_back(parse_expr(lx));
    while (lx.eat(';')) w.kids.push_back(parse_expr(lx));
    lx.expect(')');
    lx.done();
    return w;
}

namespace {

int prec_of(const Ast& a) {
    switch (a.kind) {
        case Ast::Kind::Add:
        case Ast::Kind::Sub: return 1;
        case Ast::Kind::Mul:
        case Ast::Kind::Div: return 2;
        case Ast::Kind::Neg: return 3;
        case Ast::Kind::Pow: return 4;
        default: return 5;
    }
}

void print_expr(const Ast& a, int parent_prec, std::string& out) {
    int prec = prec_of(a);
    bool parens = prec < parent_prec;
    if (parens) out += '(';
    switch (a.kind) {
        case Ast::Kind::Int: out += std::to_string(a.ival); break;
        case Ast::Kind::Gen: out += 'g'; break;
        case Ast::Kind::Var: out += "t" + std::to_string(a.ival); break;
        case Ast::Kind::Neg:
            out += '-';
            print_expr(a.kids[0], prec, out);
            break;
        case Ast::Kind::Add:
            print_expr(a.kids[0], prec, out);
            out += '+';
            print_expr(a.kids[1], prec + 1, out);
            break;
        case Ast::Kind::Sub:
            print_expr(a.kids[0], prec, out);
            out += '-';
            print_expr(a.kids[1], prec + 1, out);
            break;
        case Ast::Kind::Mul:
            print_expr(a.kids[0], prec, out);
            out += '*';
            print_expr(a.kids[1], prec + 1, out);
            break;
        case Ast::Kind::Div:
            print_expr(a.kids[0], prec, out);
            out += '/';
            print_expr(a.kids[1], prec + 1, out);
            break;
        case Ast::Kind::Pow:
            print_expr(a.kids[0], prec + 1, out);
            out += '^' + std::to_string(a.ival);
            break;
        default: throw InternalError("print_expr on a non-expression node");
    }
    if (parens) out += ')';
}

}  // namespace

std::string print_ast(const Ast& a) {
    std::string out;
    switch (a.kind) {
        case Ast::Kind::Symbol: {
            out += '{';
            for (size_t i = 0; i < a.kids.size(); ++i) {
                if (i) out += ", ";
                print_expr(a.kids[i], 0, out);
            }
            out += '}';
            return out;
        }
        case Ast::Kind::SymScaled: {
            if (a.ival != 1) out += std::to_string(a.ival) + "*";
            out += print_ast(a.kids[0]);
            return out;
        }
        case Ast::Kind::SymSum: {
            for (size_t i = 0; i < a.kids.size(); ++i) {
                const Ast& t = a.kids[i];
                i64 c = t.ival;
                if (i == 0) {
                    if (c < 0) out += '-';
                } else {
                    out += c < 0 ? " - " : " + ";
                }
                Ast abs = t;
                abs.ival = c < 0 ? -c : c;
                out += print_ast(abs);
            }
            return out;
        }
        case Ast::Kind::Witt: {
            out += "w(";
            for (size_t i = 0; i < a.kids.size(); ++i) {
                if (i) out += "; ";
                print_expr(a.kids[i], 0, out);
            }
            out += ')';
            return out;
        }
        default: {
            print_expr(a, 0, out);
            return out;
        }
    }
}

FqSeries eval_series(const FqSeriesRing& SR, const Ast& a) {
    switch (a.kind) {
        case Ast::Kind::Int: return SR.from_int(a.ival);
        case Ast::Kind::Gen: return SR.constant(SR.k.gen());
        case Ast::Kind::Var: {
            if (a.ival > SR.n) throw DomainError("variable t" + std::to_string(a.ival) + " exceeds dimension n");
            MIdx i{};
            i.e[a.ival - 1] = 1;
            return SR.monomial(i, SR.k.one());
        }
        case Ast::Kind::Neg: return SR.neg(eval_series(SR, a.kids[0]));
        case Ast::Kind::Add: return SR.add(eval_series(SR, a.kids[0]), eval_series(SR, a.kids[1]));
        case Ast::Kind::Sub: return SR.sub(eval_series(SR, a.kids[0]), eval_series(SR, a.kids[1]));
        case Ast::Kind::Mul: return SR.mul(eval_series(SR, a.kids[0]), eval_series(SR, a.kids[1]));
        case Ast::Kind::Div: return SR.mul(eval_series(SR, a.kids[0]), SR.inv(eval_series(SR, a.kids[1])));
        case Ast::Kind::Pow: {
            FqSeries base = eval_series(SR, a.kids[0]);
            if (a.ival >= 0) return SR.pow_int(base, static_cast<u64>(a.ival));
            return SR.pow_int(SR.inv(base), static_cast<u64>(-a.ival));
        }
        default: throw DomainError("expected a series expression");
    }
}

SymbolSum eval_symbol_sum(const FqSeriesRing& SR, const Ast& a) {
    if (a.kind == Ast::Kind::Symbol) {
        std::vector<FqSeries> ents;
        for (const Ast& kid : a.kids) ents.push_back(eval_series(SR, kid));
        return sym_make(SR, std::move(ents));
    }
    if (a.kind == Ast::Kind::SymScaled) return sym_scale(a.ival, eval_symbol_sum(SR, a.kids[0]));
    if (a.kind == Ast::Kind::SymSum) {
        SymbolSum s;
        for (const Ast& kid : a.kids) s = sym_add(s, eval_symbol_sum(SR, kid));
        return sym_normalize(SR, s);
    }
    throw DomainError("expected a symbol");
}

std::vector<FqSeries> eval_witt(const FqSeriesRing& SR, const Ast& a) {
    if (a.kind != Ast::Kind::Witt) throw DomainError("expected a Witt literal w(...)");
    std::vector<FqSeries> w;
    for (const Ast& kid : a.kids) w.push_back(eval_series(SR, kid));
    return w;
}

std::string series_to_string(const FqSeriesRing& SR, const FqSeries& s) {
    if (s.t.empty()) return "0";
    const FqField& k = SR.k;
    std::string out;
    bool first = true;
    for (const auto& [i, c] : s.t) {
        if (!first) out += "+";
        first = false;
        std::string cs = k.to_string(c);
        bool is_one = (c == k.one());
        std::string mono;
        for (int v = 0; v < SR.n; ++v) {
            if (!i.e[v]) continue;
            if (!mono.empty()) mono += "*";
            mono += "t" + std::to_string(v + 1);
            if (i.e[v] != 1) mono += "^" + std::to_string(i.e[v]);
        }
        if (mono.empty()) {
            out += cs.find('+') != std::string::npos ? "(" + cs + ")" : cs;
        } else if (is_one) {
            out += mono;
        } else if (cs.find('+') != std::string::npos) {
            out += "(" + cs + ")*" + mono;
        } else {
            out += cs + "*" + mono;
        }
    }
    return out;
}

std::string symbol_to_string(const FqSeriesRing& SR, const SymbolSum& s) {
    if (s.terms.empty()) return "0";
    std::string out;
    for (size_t t = 0; t < s.terms.size(); ++t) {
        i64 c = s.terms[t].coef;
        if (t == 0) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        u64 absc = static_cast<u64>(c < 0 ? -c : c);
        if (absc != 1) out += std::to_string(absc) + "*";
        out += "{";
        for (size_t e = 0; e < s.terms[t].ents.size(); ++e) {
            if (e) out += ", ";
            out += series_to_string(SR, s.terms[t].ents[e]);
        }
        out += "}";
    }
    return out;
}

}  // namespace hlf
