#pragma once

#include <cctype>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nlds/errors.hpp"

namespace nlds {

/// Parsed arithmetic expression over the variable x with + - * / ^,
/// parentheses, numeric literals, the constant pi, and the functions
/// sin, cos, exp, sqrt, abs. '^' is right-associative and binds tighter
/// than unary minus (-x^2 == -(x^2)).
class Expression {
    struct Node;
    using NodePtr = std::unique_ptr<Node>;
    struct Node {
        enum class Kind { number, var, binary, unary_minus, call } kind;
        double value = 0.0;   // number
        char op = 0;          // binary
        std::string fn;       // call
        NodePtr lhs, rhs;     // binary: both; unary/call: lhs only

        double eval(double x) const {
            switch (kind) {
                case Kind::number: return value;
                case Kind::var: return x;
                case Kind::unary_minus: return -lhs->eval(x);
                case Kind::call: {
                    const double a = lhs->eval(x);
                    if (fn == "sin") return std::sin(a);
                    if (fn == "cos") return std::cos(a);
                    if (fn == "exp") return std::exp(a);
                    if (fn == "sqrt") return std::sqrt(a);
                    return std::abs(a);  // "abs"
                }
                case Kind::binary: {
                    const double a = lhs->eval(x);
                    const double b = rhs->eval(x);
                    switch (op) {
                        case '+': return a + b;
                        case '-': return a - b;
                        case '*': return a * b;
                        case '/': return a / b;
                        default: return std::pow(a, b);
                    }
                }
            }
            return 0.0;
        }

        bool references_var() const {
            if (kind == Kind::var) return true;
            if (lhs && lhs->references_var()) return true;
            if (rhs && rhs->references_var()) return true;
            return false;
        }

        void render(std::ostringstream& os) const {
            switch (kind) {
                case Kind::number: {
                    std::ostringstream num;
                    num.precision(17);
                    num << value;
                    os << num.str();
                    break;
                }
                case Kind::var: os << "x"; break;
                case Kind::unary_minus:
                    os << "(-";
                    lhs->render(os);
                    os << ")";
                    break;
                case Kind::call:
                    os << fn << "(";
                    lhs->render(os);
                    os << ")";
                    break;
                case Kind::binary:
                    os << "(";
                    lhs->render(os);
                    os << op;
                    rhs->render(os);
                    os << ")";
                    break;
            }
        }
    };

public:
    static Expression parse(const std::string& text) {
        Parser p(text);
        Expression e;
        e.root_ = p.parse_expr();
        p.expect_end();
        e.source_ = text;
        return e;
    }

    double eval(double x) const { return root_->eval(x); }
    bool references_var() const { return root_->references_var(); }
    const std::string& source() const { return source_; }

    /// Fully parenthesized canonical form; parse(render()) reproduces the tree.
    std::string render() const {
        std::ostringstream os;
        root_->render(os);
        return os.str();
    }

private:
    NodePtr root_;
    std::string source_;

    struct Token {
        enum class Kind { number, ident, op, lparen, rparen, end } kind;
        double value = 0.0;
        std::string text;
        std::size_t column = 0;  // 1-based
    };

    class Parser {
    public:
        explicit Parser(const std::string& s) { tokenize(s); }

        NodePtr parse_expr() {
            NodePtr lhs = parse_term();
            while (peek().kind == Token::Kind::op && (peek().text == "+" || peek().text == "-")) {
                const char op = take().text[0];
                lhs = make_binary(op, std::move(lhs), parse_term());
            }
            return lhs;
        }

        void expect_end() {
            if (peek().kind != Token::Kind::end)
                throw parse_error("unexpected token '" + peek().text + "'", peek().column);
        }

    private:
        std::vector<Token> tokens_;
        std::size_t pos_ = 0;

        NodePtr parse_term() {
            NodePtr lhs = parse_factor();
            while (peek().kind == Token::Kind::op && (peek().text == "*" || peek().text == "/")) {
                const char op = take().text[0];
                lhs = make_binary(op, std::move(lhs), parse_factor());
            }
            return lhs;
        }

        NodePtr parse_factor() {
            if (peek().kind == Token::Kind::op && peek().text == "-") {
                take();
                auto node = std::make_unique<Node>();
                node->kind = Node::Kind::unary_minus;
                node->lhs = parse_factor();
                return node;
            }
            return parse_power();
        }

        NodePtr parse_power() {
            NodePtr base = parse_atom();
            if (peek().kind == Token::Kind::op && peek().text == "^") {
                take();
                return make_binary('^', std::move(base), parse_factor());
            }
            return base;
        }

        NodePtr parse_atom() {
            const Token& t = peek();
            switch (t.kind) {
                case Token::Kind::number: {
                    take();
                    auto node = std::make_unique<Node>();
                    node->kind = Node::Kind::number;
                    node->value = t.value;
                    return node;
                }
                case Token::Kind::ident: {
                    take();
                    if (t.text == "x") {
                        auto node = std::make_unique<Node>();
                        node->kind = Node::Kind::var;
                        return node;
                    }
                    if (t.text == "pi") {
                        auto node = std::make_unique<Node>();
                        node->kind = Node::Kind::number;
                        node->value = std::numbers::pi;
                        return node;
                    }
                    if (t.text == "sin" || t.text == "cos" || t.text == "exp" ||
                        t.text == "sqrt" || t.text == "abs") {
                        expect_lparen(t);
                        auto node = std::make_unique<Node>();
                        node->kind = Node::Kind::call;
                        node->fn = t.text;
                        node->lhs = parse_expr();
                        expect_rparen();
                        return node;
                    }
                    throw parse_error("unknown identifier '" + t.text + "'", t.column);
                }
                case Token::Kind::lparen: {
                    take();
                    NodePtr inner = parse_expr();
                    expect_rparen();
                    return inner;
                }
                default:
                    throw parse_error(t.kind == Token::Kind::end
                                          ? "unexpected end of expression"
                                          : "unexpected token '" + t.text + "'",
                                      error_column(t));
            }
        }

        void expect_lparen(const Token& fn_tok) {
            if (peek().kind != Token::Kind::lparen)
                throw parse_error("expected '(' after '" + fn_tok.text + "'", error_column(peek()));
            take();
        }

        void expect_rparen() {
            if (peek().kind != Token::Kind::rparen)
                throw parse_error("expected ')'", error_column(peek()));
            take();
        }

        // End-of-input errors point at the last real token, not one past it.
        std::size_t error_column(const Token& t) const {
            if (t.kind == Token::Kind::end && pos_ > 0) return tokens_[pos_ - 1].column;
            return t.column;
        }

        static NodePtr make_binary(char op, NodePtr lhs, NodePtr rhs) {
            auto node = std::make_unique<Node>();
            node->kind = Node::Kind::binary;
            node->op = op;
            node->lhs = std::move(lhs);
            node->rhs = std::move(rhs);
            return node;
        }

        const Token& peek() const { return tokens_[pos_]; }
        const Token& take() { return tokens_[pos_++]; }

        void tokenize(const std::string& s) {
            std::size_t i = 0;
            while (i < s.size()) {
                const char c = s[i];
                if (std::isspace(static_cast<unsigned char>(c))) {
                    ++i;
                    continue;
                }
                const std::size_t col = i + 1;
                if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                    std::size_t end = 0;
                    double v = 0.0;
                    try {
                        v = std::stod(s.substr(i), &end);
                    } catch (const std::exception&) {
                        throw parse_error("malformed number", col);
                    }
                    tokens_.push_back({Token::Kind::number, v, s.substr(i, end), col});
                    i += end;
                } else if (std::isalpha(static_cast<unsigned char>(c))) {
                    std::size_t j = i;
                    while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
                    tokens_.push_back({Token::Kind::ident, 0.0, s.substr(i, j - i), col});
                    i = j;
                } else if (c == '(') {
                    tokens_.push_back({Token::Kind::lparen, 0.0, "(", col});
                    ++i;
                } else if (c == ')') {
                    tokens_.push_back({Token::Kind::rparen, 0.0, ")", col});
                    ++i;
                } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
                    tokens_.push_back({Token::Kind::op, 0.0, std::string(1, c), col});
                    ++i;
                } else {
                    throw parse_error("unexpected character '" + std::string(1, c) + "'", col);
                }
            }
            tokens_.push_back({Token::Kind::end, 0.0, "", s.size() + 1});
        }
    };
};

}  // namespace nlds
