#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>

#include "hlf/parser.hpp"
#include "hlf/rng.hpp"
#include "hlf/session.hpp"

using namespace hlf;

TEST_CASE("grammar instances") {
    Ast sym = parse_symbol_sum("{1 + g*t1, t2}");
    CHECK(sym.kind == Ast::Kind::SymSum);
    CHECK(sym.kids.size() == 1);
    CHECK(sym.kids[0].kids[0].kids.size() == 2);  // degree 2

    Ast w = parse_witt("w(t1^-1; 0)");
    CHECK(w.kind == Ast::Kind::Witt);
    CHECK(w.kids.size() == 2);  // level-2 literal
}

TEST_CASE("syntax errors carry 1-based offsets") {
    try {
        parse_symbol_sum("{t1,}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset == 5);
    }
    CHECK_THROWS_AS(parse_series("t9"), ParseError);
    CHECK_THROWS_AS(parse_series("1 +"), ParseError);
    CHECK_THROWS_AS(parse_series("(1"), ParseError);
    CHECK_THROWS_AS(parse_witt("w(1; )"), ParseError);
    CHECK_THROWS_AS(parse_series("1 2"), ParseError);
}

TEST_CASE("evaluation against hand values") {
    FqField k(3, 1);
    FqSeriesRing SR(k, 2, Window::box(2, 4));

    FqSeries s = eval_series(SR, parse_series("1 + 2*t1^2*t2^-1"));
    MIdx i{};
    i.e[0] = 2;
    i.e[1] = -1;
    CHECK(SR.coeff_at(s, MIdx{}) == k.one());
    CHECK(SR.coeff_at(s, i) == k.from_int(2));

    // g evaluates to the residue generator
    FqSeries gs = eval_series(SR, parse_series("g"));
    CHECK(SR.coeff_at(gs, MIdx{}) == k.gen());

    // division by a unit
    FqSeries inv = eval_series(SR, parse_series("1/(1-t1)"));
    MIdx one{};
    one.e[0] = 1;
    CHECK(SR.coeff_at(inv, one) == k.one());

    SymbolSum sum = eval_symbol_sum(SR, parse_symbol_sum("2*{t1, t2} + {t2, t1}"));
    CHECK(sum.terms.size() == 2);

    CHECK_THROWS_AS(eval_series(SR, parse_series("t3")), DomainError);
    CHECK_THROWS_AS(eval_symbol_sum(SR, parse_symbol_sum("{0, t1}")), DomainError);
}

TEST_CASE("print/parse round trip on generated expressions") {
    Rng rng(97);
    auto gen_expr = [&](auto&& self, int depth) -> Ast {
        Ast a;
        u64 pick = rng.below(depth <= 0 ? 3 : 7);
        switch (pick) {
            case 0: a.kind = Ast::Kind::Int; a.ival = static_cast<i64>(rng.below(9)); break;
            case 1: a.kind = Ast::Kind::Gen; break;
            case 2: a.kind = Ast::Kind::Var; a.ival = 1 + static_cast<i64>(rng.below(2)); break;
            case 3: {
                a.kind = Ast::Kind::Pow;
                a.ival = static_cast<i64>(rng.range(-3, 3));
                Ast base;
                // pow base must be a primary; wrap non-atoms in parens, which
                // the printer does automatically
                base = self(self, 0);
                a.kids.push_back(std::move(base));
                break;
            }
            case 4: a.kind = Ast::Kind::Neg; a.kids.push_back(self(self, depth - 1)); break;
            default: {
                a.kind = pick == 5 ? Ast::Kind::Add : Ast::Kind::Mul;
                a.kids.push_back(self(self, depth - 1));
                a.kids.push_back(self(self, depth - 1));
                break;
            }
        }
        return a;
    };
    for (int t = 0; t < 100; ++t) {
        Ast a = gen_expr(gen_expr, 3);
        std::string s1 = print_ast(a);
        Ast b = parse_series(s1);
        std::string s2 = print_ast(b);
        CHECK(s1 == s2);  // print . parse . print = print
    }
    // symbol sums and witt literals
    for (int t = 0; t < 50; ++t) {
        Ast sum;
        sum.kind = Ast::Kind::SymSum;
        int terms = 1 + static_cast<int>(rng.below(3));
        for (int j = 0; j < terms; ++j) {
            Ast sc;
            sc.kind = Ast::Kind::SymScaled;
            sc.ival = static_cast<i64>(rng.range(-3, 3));
            if (sc.ival == 0) sc.ival = 1;
            Ast sym;
            sym.kind = Ast::Kind::Symbol;
            int deg = 1 + static_cast<int>(rng.below(2));
            for (int e = 0; e < deg; ++e) sym.kids.push_back(gen_expr(gen_expr, 2));
            sc.kids.push_back(std::move(sym));
            sum.kids.push_back(std::move(sc));
        }
        std::string s1 = print_ast(sum);
        CHECK(print_ast(parse_symbol_sum(s1)) == s1);
    }
}

TEST_CASE("config files parse and flags win") {
    std::string path = "/tmp/hlf_test_session.cfg";
    {
        std::ofstream out(path);
        out << "# sample config\np=3\nf=2\nn=2\nwindow=5\nr=2\nseed=99\nmodulus=2,2,1\n";
    }
    SessionConfig cfg;
    cfg.load_file(path);
    CHECK(cfg.p == 3);
    CHECK(cfg.f == 2);
    CHECK(cfg.n == 2);
    CHECK(cfg.window_radius == 5);
    CHECK(cfg.r == 2);
    CHECK(cfg.seed == 99);
    CHECK(cfg.modulus == std::vector<u64>{2, 2, 1});
    Session s(cfg);
    CHECK(s.field.q == 9);
    CHECK(s.ring.n == 2);

    {
        std::ofstream out(path);
        out << "bogus line\n";
    }
    SessionConfig bad;
    CHECK_THROWS_AS(bad.load_file(path), DomainError);
}

TEST_CASE("series rendering is parse-stable") {
    FqField k(2, 2);
    FqSeriesRing SR(k, 2, Window::box(2, 4));
    Rng rng(101);
    for (int t = 0; t < 50; ++t) {
        FqSeries s = rng.series_in(SR, Window::box(2, 3), 3);
        std::string txt = series_to_string(SR, s);
        FqSeries back = eval_series(SR, parse_series(txt));
        CHECK(back.t == s.t);
    }
}
