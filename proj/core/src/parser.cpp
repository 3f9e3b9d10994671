#include "hadafact/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace hadafact {

namespace {

enum class Tok { Number, Coord, Func, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    int line;
    int col;
    double number = 0.0;   // Number
    bool integral = false; // Number: literal had no '.' or exponent
    int index = 0;         // Coord
    Prim fn = Prim::Sin;   // Func
    std::string text;
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
            bump();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Tok::End;
            tok_.text = "end of input";
            return;
        }
        char c = src_[pos_];
        switch (c) {
            case '+': single(Tok::Plus, c); return;
            case '-': single(Tok::Minus, c); return;
            case '*': single(Tok::Star, c); return;
            case '/': single(Tok::Slash, c); return;
            case '^': single(Tok::Caret, c); return;
            case '(': single(Tok::LParen, c); return;
            case ')': single(Tok::RParen, c); return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            lex_word();
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    void single(Tok kind, char c) {
        tok_.kind = kind;
        tok_.text = std::string(1, c);
        bump();
    }

    void lex_number() {
        std::size_t start = pos_;
        bool integral = true;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            integral = false;
            bump();
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            integral = false;
            bump();
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) bump();
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                throw ParseError("malformed exponent in number literal", tok_.line, tok_.col);
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
        }
        std::string_view text = src_.substr(start, pos_ - start);
        if (text == ".") throw ParseError("malformed number literal", tok_.line, tok_.col);
        double value = 0.0;
        auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
            throw ParseError("malformed number literal '" + std::string(text) + "'", tok_.line,
                             tok_.col);
        tok_.kind = Tok::Number;
        tok_.number = value;
        tok_.integral = integral;
        tok_.text = std::string(text);
    }

    void lex_word() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            bump();
        std::string word(src_.substr(start, pos_ - start));
        tok_.text = word;
        if (word == "sin" || word == "cos" || word == "exp") {
            tok_.kind = Tok::Func;
            tok_.fn = word == "sin" ? Prim::Sin : word == "cos" ? Prim::Cos : Prim::Exp;
            return;
        }
        if (word.size() > 1 && word[0] == 'x' &&
            std::all_of(word.begin() + 1, word.end(),
                        [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            int index = 0;
            auto res = std::from_chars(word.data() + 1, word.data() + word.size(), index);
            if (res.ec != std::errc{} || index < 1)
                throw ParseError("coordinate index must be a positive integer in '" + word + "'",
                                 tok_.line, tok_.col);
            tok_.kind = Tok::Coord;
            tok_.index = index;
            return;
        }
        throw ParseError("unknown identifier '" + word + "'", tok_.line, tok_.col);
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    SmoothExpr run() {
        SmoothExpr e = parse_expr();
        const Token& t = lex_.peek();
        if (t.kind != Tok::End)
            throw ParseError("unexpected trailing input '" + t.text + "'", t.line, t.col);
        return e;
    }

private:
    SmoothExpr parse_expr() {
        SmoothExpr e = parse_term();
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            Token op = lex_.take();
            SmoothExpr rhs = parse_term();
            if (op.kind == Tok::Plus)
                e = std::move(e) + std::move(rhs);
            else
                e = std::move(e) - std::move(rhs);
        }
        return e;
    }

    SmoothExpr parse_term() {
        SmoothExpr e = parse_factor();
        while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
            Token op = lex_.take();
            Token rhs_start = lex_.peek();
            SmoothExpr rhs = parse_factor();
            if (op.kind == Tok::Star) {
                e = std::move(e) * std::move(rhs);
            } else {
                if (!rhs.is_constant())
                    throw ParseError("division is only allowed by constants", rhs_start.line,
                                     rhs_start.col);
                double d = rhs.constant_value();
                if (d == 0.0)
                    throw ParseError("division by zero", rhs_start.line, rhs_start.col);
                e = SmoothExpr::scale(1.0 / d, std::move(e));
            }
        }
        return e;
    }

    SmoothExpr parse_factor() {
        SmoothExpr e = parse_atom();
        if (lex_.peek().kind == Tok::Caret) {
            lex_.take();
            const Token& t = lex_.peek();
            if (t.kind == Tok::Minus)
                throw ParseError("exponent must be a nonnegative integer", t.line, t.col);
            if (t.kind != Tok::Number || !t.integral)
                throw ParseError("non-integer exponent (expected a nonnegative integer literal)",
                                 t.line, t.col);
            Token num = lex_.take();
            double v = num.number;
            if (v < 0 || v != static_cast<double>(static_cast<int>(v)) || v > 1e6)
                throw ParseError("exponent out of range", num.line, num.col);
            e = SmoothExpr::int_pow(std::move(e), static_cast<int>(v));
        }
        return e;
    }

    SmoothExpr parse_atom() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Tok::Number: {
                Token num = lex_.take();
                return SmoothExpr::constant(num.number);
            }
            case Tok::Coord: {
                Token c = lex_.take();
                return SmoothExpr::coord(c.index);
            }
            case Tok::Func: {
                Token f = lex_.take();
                expect(Tok::LParen, "'(' after function name");
                SmoothExpr arg = parse_expr();
                expect(Tok::RParen, "')'");
                return SmoothExpr::prim(f.fn, std::move(arg));
            }
            case Tok::LParen: {
                lex_.take();
                SmoothExpr e = parse_expr();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Minus: {
                lex_.take();
                return SmoothExpr::scale(-1.0, parse_atom());
            }
            default:
                throw ParseError("expected a number, coordinate, function call, or '(', got '" +
                                     t.text + "'",
                                 t.line, t.col);
        }
    }

    void expect(Tok kind, const char* what) {
        const Token& t = lex_.peek();
        if (t.kind != kind)
            throw ParseError("expected " + std::string(what) + ", got '" + t.text + "'", t.line,
                             t.col);
        lex_.take();
    }

    Lexer lex_;
};

}  // namespace

SmoothExpr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace hadafact
