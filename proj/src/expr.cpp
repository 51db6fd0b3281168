#include "mazer/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

namespace mazer {

namespace {

enum class TokKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    TokKind kind;
    std::size_t offset;
    double value = 0.0;  // Number
    std::string text;    // Ident
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        tok_.offset = pos_;
        tok_.text.clear();
        if (pos_ >= src_.size()) {
            tok_.kind = TokKind::End;
            return;
        }
        char c = src_[pos_];
        switch (c) {
            case '+': tok_.kind = TokKind::Plus; ++pos_; return;
            case '-': tok_.kind = TokKind::Minus; ++pos_; return;
            case '*': tok_.kind = TokKind::Star; ++pos_; return;
            case '/': tok_.kind = TokKind::Slash; ++pos_; return;
            case '^': tok_.kind = TokKind::Caret; ++pos_; return;
            case '(': tok_.kind = TokKind::LParen; ++pos_; return;
            case ')': tok_.kind = TokKind::RParen; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = src_.data() + pos_;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin)
                throw ParseError("syntax error: malformed number", pos_, "number");
            tok_.kind = TokKind::Number;
            tok_.value = v;
            pos_ += static_cast<std::size_t>(end - begin);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size()
                   && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            tok_.kind = TokKind::Ident;
            tok_.text.assign(src_.substr(start, pos_ - start));
            return;
        }
        throw ParseError(std::string("syntax error: unexpected character '") + c + "'", pos_,
                         "number, identifier, '(', or operator");
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token tok_;
};

const char* tok_name(TokKind k) {
    switch (k) {
        case TokKind::Number: return "number";
        case TokKind::Ident: return "identifier";
        case TokKind::Plus: return "'+'";
        case TokKind::Minus: return "'-'";
        case TokKind::Star: return "'*'";
        case TokKind::Slash: return "'/'";
        case TokKind::Caret: return "'^'";
        case TokKind::LParen: return "'('";
        case TokKind::RParen: return "')'";
        case TokKind::End: return "end of input";
    }
    return "?";
}

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    ExpressionTree run() {
        int root = parse_expr();
        if (lex_.peek().kind != TokKind::End)
            fail("syntax error", "operator or end of input");
        tree_.set_root(root);
        return std::move(tree_);
    }

private:
    [[noreturn]] void fail(const std::string& msg, const std::string& expected) {
        throw ParseError(msg + ": got " + tok_name(lex_.peek().kind), lex_.peek().offset, expected);
    }

    void expect(TokKind k, const char* what) {
        if (lex_.peek().kind != k)
            fail("syntax error", what);
        lex_.take();
    }

    int parse_expr() {
        int lhs = parse_term();
        while (lex_.peek().kind == TokKind::Plus || lex_.peek().kind == TokKind::Minus) {
            auto op = lex_.take().kind == TokKind::Plus ? ExpressionTree::Op::Add
                                                        : ExpressionTree::Op::Sub;
            int rhs = parse_term();
            lhs = tree_.add_node({op, 0.0, lhs, rhs});
        }
        return lhs;
    }

    int parse_term() {
        int lhs = parse_unary();
        while (lex_.peek().kind == TokKind::Star || lex_.peek().kind == TokKind::Slash) {
            auto op = lex_.take().kind == TokKind::Star ? ExpressionTree::Op::Mul
                                                        : ExpressionTree::Op::Div;
            int rhs = parse_unary();
            lhs = tree_.add_node({op, 0.0, lhs, rhs});
        }
        return lhs;
    }

    int parse_unary() {
        if (lex_.peek().kind == TokKind::Minus) {
            lex_.take();
            int child = parse_unary();
            return tree_.add_node({ExpressionTree::Op::Neg, 0.0, child, -1});
        }
        return parse_power();
    }

    int parse_power() {
        int base = parse_atom();
        if (lex_.peek().kind == TokKind::Caret) {
            lex_.take();
            int exp = parse_unary(); // right-associative, allows 2^-3
            return tree_.add_node({ExpressionTree::Op::Pow, 0.0, base, exp});
        }
        return base;
    }

    int parse_atom() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case TokKind::Number: {
                Token num = lex_.take();
                return tree_.add_node({ExpressionTree::Op::Constant, num.value, -1, -1});
            }
            case TokKind::LParen: {
                lex_.take();
                int inner = parse_expr();
                expect(TokKind::RParen, "')'");
                return inner;
            }
            case TokKind::Ident: {
                Token id = lex_.take();
                if (lex_.peek().kind == TokKind::LParen)
                    return parse_call(id);
                if (id.text == "z")
                    return tree_.add_node({ExpressionTree::Op::VarZ, 0.0, -1, -1});
                if (id.text == "pi")
                    return tree_.add_node({ExpressionTree::Op::ConstPi, 0.0, -1, -1});
                if (id.text == "L")
                    return tree_.add_node({ExpressionTree::Op::ConstLen, 0.0, -1, -1});
                throw ParseError("unknown identifier '" + id.text + "'", id.offset,
                                 "z, pi, or L");
            }
            default:
                fail("syntax error", "number, identifier, '-', or '('");
        }
    }

    int parse_call(const Token& id) {
        ExpressionTree::Op op;
        if (id.text == "sin") op = ExpressionTree::Op::Sin;
        else if (id.text == "cos") op = ExpressionTree::Op::Cos;
        else if (id.text == "exp") op = ExpressionTree::Op::Exp;
        else if (id.text == "sech") op = ExpressionTree::Op::Sech;
        else if (id.text == "tanh") op = ExpressionTree::Op::Tanh;
        else if (id.text == "abs") op = ExpressionTree::Op::Abs;
        else if (id.text == "sqrt") op = ExpressionTree::Op::Sqrt;
        else
            throw ParseError("unknown function '" + id.text + "'", id.offset,
                             "sin, cos, exp, sech, tanh, abs, or sqrt");
        expect(TokKind::LParen, "'('");
        int arg = parse_expr();
        expect(TokKind::RParen, "')'");
        return tree_.add_node({op, 0.0, arg, -1});
    }

    Lexer lex_;
    ExpressionTree tree_;
};

int precedence(ExpressionTree::Op op) {
    using Op = ExpressionTree::Op;
    switch (op) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div: return 2;
        case Op::Neg: return 3;
        case Op::Pow: return 4;
        default: return 5; // atoms and function calls
    }
}

} // namespace

ExpressionTree parse_profile_expr(std::string_view text) {
    return Parser(text).run();
}

int ExpressionTree::add_node(Node n) {
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
}

int ExpressionTree::graft(const ExpressionTree& other) {
    int base = static_cast<int>(nodes_.size());
    for (Node n : other.nodes_) {
        if (n.lhs >= 0) n.lhs += base;
        if (n.rhs >= 0) n.rhs += base;
        nodes_.push_back(n);
    }
    return other.root_ + base;
}

ExpressionTree ExpressionTree::constant(double v) {
    ExpressionTree t;
    t.root_ = t.add_node({Op::Constant, v, -1, -1});
    return t;
}

ExpressionTree ExpressionTree::leaf(Op op) {
    ExpressionTree t;
    t.root_ = t.add_node({op, 0.0, -1, -1});
    return t;
}

ExpressionTree ExpressionTree::unary(Op op, ExpressionTree child) {
    ExpressionTree t;
    int c = t.graft(child);
    t.root_ = t.add_node({op, 0.0, c, -1});
    return t;
}

ExpressionTree ExpressionTree::binary(Op op, ExpressionTree lhs, ExpressionTree rhs) {
    ExpressionTree t;
    int l = t.graft(lhs);
    int r = t.graft(rhs);
    t.root_ = t.add_node({op, 0.0, l, r});
    return t;
}

double ExpressionTree::eval(double z, double length) const {
    return eval_node(root_, z, length);
}

double ExpressionTree::eval_node(int idx, double z, double length) const {
    const Node& n = nodes_[static_cast<std::size_t>(idx)];
    double result;
    switch (n.op) {
        case Op::Constant: return n.value;
        case Op::VarZ: return z;
        case Op::ConstPi: return std::numbers::pi;
        case Op::ConstLen: return length;
        case Op::Add: result = eval_node(n.lhs, z, length) + eval_node(n.rhs, z, length); break;
        case Op::Sub: result = eval_node(n.lhs, z, length) - eval_node(n.rhs, z, length); break;
        case Op::Mul: result = eval_node(n.lhs, z, length) * eval_node(n.rhs, z, length); break;
        case Op::Div: {
            double denom = eval_node(n.rhs, z, length);
            if (denom == 0.0)
                throw EvalError("division by zero");
            result = eval_node(n.lhs, z, length) / denom;
            break;
        }
        case Op::Pow:
            result = std::pow(eval_node(n.lhs, z, length), eval_node(n.rhs, z, length));
            break;
        case Op::Neg: result = -eval_node(n.lhs, z, length); break;
        case Op::Sin: result = std::sin(eval_node(n.lhs, z, length)); break;
        case Op::Cos: result = std::cos(eval_node(n.lhs, z, length)); break;
        case Op::Exp: result = std::exp(eval_node(n.lhs, z, length)); break;
        case Op::Sech: result = 1.0 / std::cosh(eval_node(n.lhs, z, length)); break;
        case Op::Tanh: result = std::tanh(eval_node(n.lhs, z, length)); break;
        case Op::Abs: result = std::fabs(eval_node(n.lhs, z, length)); break;
        case Op::Sqrt: {
            double arg = eval_node(n.lhs, z, length);
            if (arg < 0.0)
                throw EvalError("sqrt of negative value");
            result = std::sqrt(arg);
            break;
        }
        default: throw EvalError("corrupt expression node");
    }
    if (!std::isfinite(result))
        throw EvalError("non-finite intermediate value");
    return result;
}

std::string ExpressionTree::print() const {
    std::string out;
    print_node(root_, 0, false, out);
    return out;
}

void ExpressionTree::print_node(int idx, int parent_prec, bool rhs_slot, std::string& out) const {
    const Node& n = nodes_[static_cast<std::size_t>(idx)];
    int prec = precedence(n.op);

    // Left-associative binaries need parens around an equal-precedence right
    // child. '^' is special: its base must be an atom, while its exponent
    // slot admits a bare unary minus or another '^'.
    bool parens = false;
    if (prec < 5) {
        if (parent_prec == 4)
            parens = rhs_slot ? (prec <= 2) : true;
        else if (prec < parent_prec)
            parens = true;
        else if (prec == parent_prec && rhs_slot && (prec == 1 || prec == 2))
            parens = true;
    }

    if (parens) out += '(';
    switch (n.op) {
        case Op::Constant: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += buf;
            break;
        }
        case Op::VarZ: out += 'z'; break;
        case Op::ConstPi: out += "pi"; break;
        case Op::ConstLen: out += 'L'; break;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div:
        case Op::Pow: {
            const char* sym = n.op == Op::Add ? " + "
                            : n.op == Op::Sub ? " - "
                            : n.op == Op::Mul ? "*"
                            : n.op == Op::Div ? "/"
                                              : "^";
            print_node(n.lhs, prec, false, out);
            out += sym;
            print_node(n.rhs, prec, true, out);
            break;
        }
        case Op::Neg:
            out += '-';
            print_node(n.lhs, prec, false, out);
            break;
        case Op::Sin:
        case Op::Cos:
        case Op::Exp:
        case Op::Sech:
        case Op::Tanh:
        case Op::Abs:
        case Op::Sqrt: {
            const char* name = n.op == Op::Sin ? "sin"
                             : n.op == Op::Cos ? "cos"
                             : n.op == Op::Exp ? "exp"
                             : n.op == Op::Sech ? "sech"
                             : n.op == Op::Tanh ? "tanh"
                             : n.op == Op::Abs ? "abs"
                                               : "sqrt";
            out += name;
            out += '(';
            print_node(n.lhs, 0, false, out);
            out += ')';
            break;
        }
    }
    if (parens) out += ')';
}

} // namespace mazer
