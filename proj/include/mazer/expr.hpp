#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mazer/errors.hpp"

namespace mazer {

/// Parsed arithmetic expression over the variable z and the symbolic
/// constants pi and L (the cavity length). Nodes live in a flat pool, so
/// trees are cheap values. Evaluation is pure and thread-safe.
class ExpressionTree {
public:
    enum class Op {
        Constant,
        VarZ,
        ConstPi,
        ConstLen,
        Add,
        Sub,
        Mul,
        Div,
        Pow,
        Neg,
        Sin,
        Cos,
        Exp,
        Sech,
        Tanh,
        Abs,
        Sqrt,
    };

    struct Node {
        Op op;
        double value = 0.0; // Constant payload
        int lhs = -1;
        int rhs = -1;

        bool operator==(const Node&) const = default;
    };

    /// Evaluate at position z with cavity length `length` substituted for L.
    /// Throws EvalError on division by zero, sqrt of a negative value, or any
    /// non-finite intermediate.
    double eval(double z, double length) const;

    /// Canonical printer: minimal parentheses, constants via "%.17g".
    /// Parsing the printed form rebuilds the identical tree.
    std::string print() const;

    bool operator==(const ExpressionTree& other) const {
        return nodes_ == other.nodes_ && root_ == other.root_;
    }

    // Programmatic builders (used by tests to generate random trees).
    static ExpressionTree constant(double v);
    static ExpressionTree leaf(Op op);
    static ExpressionTree unary(Op op, ExpressionTree child);
    static ExpressionTree binary(Op op, ExpressionTree lhs, ExpressionTree rhs);

    /// Low-level tree assembly; the parser builds trees through these.
    int add_node(Node n);
    void set_root(int idx) { root_ = idx; }

private:
    friend ExpressionTree parse_profile_expr(std::string_view text);

    int graft(const ExpressionTree& other); // copy other's pool, return its root
    double eval_node(int idx, double z, double length) const;
    void print_node(int idx, int parent_prec, bool rhs_slot, std::string& out) const;

    std::vector<Node> nodes_;
    int root_ = -1;
};

/// Recursive-descent parser. Grammar (whitespace-insensitive):
///
///   expr   := term { ('+'|'-') term }
///   term   := unary { ('*'|'/') unary }
///   unary  := '-' unary | power
///   power  := atom [ '^' unary ]
///   atom   := number | 'z' | 'pi' | 'L' | func '(' expr ')' | '(' expr ')'
///   func   := sin | cos | exp | sech | tanh | abs | sqrt
///
/// Throws ParseError with a byte offset and the expected-token set.
ExpressionTree parse_profile_expr(std::string_view text);

} // namespace mazer
