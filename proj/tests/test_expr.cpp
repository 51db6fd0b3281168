#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mazer/expr.hpp"

using mazer::ExpressionTree;
using mazer::parse_profile_expr;
using Op = ExpressionTree::Op;

TEST_CASE("constants and identifiers") {
    CHECK(parse_profile_expr("1").eval(3.0, 10.0) == 1.0);
    CHECK(parse_profile_expr("z").eval(3.5, 10.0) == 3.5);
    CHECK(parse_profile_expr("L").eval(0.0, 7.0) == 7.0);
    CHECK(parse_profile_expr("pi").eval(0.0, 1.0) == doctest::Approx(std::numbers::pi));
    CHECK(parse_profile_expr("2.5e-1").eval(0.0, 1.0) == 0.25);
}

TEST_CASE("precedence and associativity") {
    CHECK(parse_profile_expr("1+2*3").eval(0, 1) == 7.0);
    CHECK(parse_profile_expr("(1+2)*3").eval(0, 1) == 9.0);
    CHECK(parse_profile_expr("2^3^2").eval(0, 1) == 512.0);    // right-assoc
    CHECK(parse_profile_expr("-2^2").eval(0, 1) == -4.0);      // ^ binds tighter than unary -
    CHECK(parse_profile_expr("2^-1").eval(0, 1) == 0.5);
    CHECK(parse_profile_expr("1-2-3").eval(0, 1) == -4.0);     // left-assoc
    CHECK(parse_profile_expr("8/4/2").eval(0, 1) == 1.0);
    CHECK(parse_profile_expr("--3").eval(0, 1) == 3.0);
}

TEST_CASE("functions") {
    CHECK(parse_profile_expr("sin(pi/2)").eval(0, 1) == doctest::Approx(1.0));
    CHECK(parse_profile_expr("cos(0)").eval(0, 1) == 1.0);
    CHECK(parse_profile_expr("exp(0)").eval(0, 1) == 1.0);
    CHECK(parse_profile_expr("sech(0)").eval(0, 1) == 1.0);
    CHECK(parse_profile_expr("tanh(0)").eval(0, 1) == 0.0);
    CHECK(parse_profile_expr("abs(-3)").eval(0, 1) == 3.0);
    CHECK(parse_profile_expr("sqrt(9)").eval(0, 1) == 3.0);
    CHECK(parse_profile_expr("sin(pi*z/L)^2").eval(5.0, 10.0) == doctest::Approx(1.0));
    CHECK(parse_profile_expr("sech((z-L/2)/2)^2").eval(5.0, 10.0) == 1.0);
}

TEST_CASE("whitespace insensitivity") {
    const double a = parse_profile_expr("sin(pi*z/L)^2").eval(2.0, 10.0);
    const double b = parse_profile_expr("  sin ( pi * z / L ) ^ 2 ").eval(2.0, 10.0);
    CHECK(a == b);
}

TEST_CASE("syntax errors carry byte offsets") {
    CHECK_THROWS_AS(parse_profile_expr("sin("), mazer::ParseError);
    try {
        parse_profile_expr("sin(");
    } catch (const mazer::ParseError& e) {
        CHECK(e.offset() == 4);
        CHECK(!e.expected().empty());
    }
    try {
        parse_profile_expr("1 + ");
    } catch (const mazer::ParseError& e) {
        CHECK(e.offset() == 4);
    }
    try {
        parse_profile_expr("(1 + 2");
    } catch (const mazer::ParseError& e) {
        CHECK(e.offset() == 6);
        CHECK(e.expected() == "')'");
    }
    CHECK_THROWS_AS(parse_profile_expr(""), mazer::ParseError);
    CHECK_THROWS_AS(parse_profile_expr("1 $ 2"), mazer::ParseError);
    CHECK_THROWS_AS(parse_profile_expr("1 2"), mazer::ParseError);
}

TEST_CASE("unknown identifiers") {
    CHECK_THROWS_AS(parse_profile_expr("x + 1"), mazer::ParseError);
    CHECK_THROWS_AS(parse_profile_expr("foo(2)"), mazer::ParseError);
    try {
        parse_profile_expr("2 * bogus");
    } catch (const mazer::ParseError& e) {
        CHECK(e.offset() == 4);
    }
}

TEST_CASE("evaluation errors") {
    CHECK_THROWS_AS(parse_profile_expr("1/(z-1)").eval(1.0, 10.0), mazer::EvalError);
    CHECK_THROWS_AS(parse_profile_expr("sqrt(z-5)").eval(1.0, 10.0), mazer::EvalError);
    CHECK_THROWS_AS(parse_profile_expr("exp(10000)").eval(0.0, 10.0), mazer::EvalError);
    CHECK_NOTHROW(parse_profile_expr("1/(z-1)").eval(2.0, 10.0));
}

namespace {

// Random canonical tree: nonnegative constants (the parser never produces
// negative constant nodes; a leading '-' parses as negation).
ExpressionTree random_tree(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, 9);
    if (depth <= 0) {
        switch (pick(rng) % 4) {
            case 0: return ExpressionTree::leaf(Op::VarZ);
            case 1: return ExpressionTree::leaf(Op::ConstPi);
            case 2: return ExpressionTree::leaf(Op::ConstLen);
            default: {
                std::uniform_real_distribution<double> value(0.0, 8.0);
                return ExpressionTree::constant(value(rng));
            }
        }
    }
    switch (pick(rng)) {
        case 0:
            return ExpressionTree::binary(Op::Add, random_tree(rng, depth - 1),
                                          random_tree(rng, depth - 1));
        case 1:
            return ExpressionTree::binary(Op::Sub, random_tree(rng, depth - 1),
                                          random_tree(rng, depth - 1));
        case 2:
            return ExpressionTree::binary(Op::Mul, random_tree(rng, depth - 1),
                                          random_tree(rng, depth - 1));
        case 3:
            return ExpressionTree::binary(Op::Div, random_tree(rng, depth - 1),
                                          random_tree(rng, depth - 1));
        case 4:
            return ExpressionTree::binary(Op::Pow, random_tree(rng, depth - 1),
                                          random_tree(rng, depth - 1));
        case 5: return ExpressionTree::unary(Op::Neg, random_tree(rng, depth - 1));
        case 6: return ExpressionTree::unary(Op::Sin, random_tree(rng, depth - 1));
        case 7: return ExpressionTree::unary(Op::Cos, random_tree(rng, depth - 1));
        case 8: return ExpressionTree::unary(Op::Tanh, random_tree(rng, depth - 1));
        default: return ExpressionTree::unary(Op::Sqrt, random_tree(rng, depth - 1));
    }
}

} // namespace

TEST_CASE("print/parse round-trip on random trees") {
    std::mt19937 rng(20260809);
    for (int i = 0; i < 300; ++i) {
        const ExpressionTree tree = random_tree(rng, 1 + i % 4);
        const std::string printed = tree.print();
        CAPTURE(printed);
        const ExpressionTree reparsed = parse_profile_expr(printed);
        CHECK(reparsed == tree);
    }
}

TEST_CASE("printed form evaluates identically") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> zs(-2.0, 12.0);
    for (int i = 0; i < 100; ++i) {
        const ExpressionTree tree = random_tree(rng, 3);
        const ExpressionTree reparsed = parse_profile_expr(tree.print());
        const double z = zs(rng);
        double a = 0, b = 0;
        bool threw_a = false, threw_b = false;
        try {
            a = tree.eval(z, 10.0);
        } catch (const mazer::EvalError&) {
            threw_a = true;
        }
        try {
            b = reparsed.eval(z, 10.0);
        } catch (const mazer::EvalError&) {
            threw_b = true;
        }
        CHECK(threw_a == threw_b);
        if (!threw_a)
            CHECK(a == b);
    }
}
