#include "fcq/eval.hpp"

#include <cctype>
#include <set>
#include <vector>

namespace fcq {

namespace {

struct Token {
    enum Kind { Num, Ident, Sym, End } kind;
    std::string text;
    size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
        } else if (std::isdigit(c)) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Num, s.substr(i, j - i), i});
            i = j;
        } else if (std::isalpha(c)) {
            size_t j = i;
            while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Ident, s.substr(i, j - i), i});
            i = j;
        } else if (std::string("+-*^()[]{},").find(static_cast<char>(c)) != std::string::npos) {
            out.push_back({Token::Sym, std::string(1, static_cast<char>(c)), i});
            ++i;
        } else {
            throw ParseError("unexpected character '" + std::string(1, static_cast<char>(c)) + "' at " + std::to_string(i));
        }
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

bool is_param(const std::string& id, int n) {
    if (id == "tau" || id == "t") return true;
    for (const char* pre : {"eps", "del"}) {
        std::string ps(pre);
        if (id.size() > ps.size() && id.compare(0, ps.size(), ps) == 0) {
            std::string idx = id.substr(ps.size());
            if (idx.find_first_not_of("0123456789") != std::string::npos) return false;
            int i = std::stoi(idx);
            return i >= 1 && i <= n;
        }
    }
    return false;
}

class Parser {
public:
    Parser(std::vector<Token> toks, WeylPtr alg, A0Ptr sp) : t_(std::move(toks)), alg_(std::move(alg)), sp_(std::move(sp)) {}

    WeylElem parse() {
        WeylElem e = expr();
        if (peek().kind != Token::End) fail("trailing input");
        return e;
    }

private:
    const Token& peek() const { return t_[i_]; }
    bool accept(const std::string& sym) {
        if (peek().kind == Token::Sym && peek().text == sym) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(const std::string& sym) {
        if (!accept(sym)) fail("expected '" + sym + "'");
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at position " + std::to_string(peek().pos));
    }

    WeylElem expr() {
        WeylElem e = term();
        while (true) {
            if (accept("+")) e = e + term();
            else if (accept("-")) e = e - term();
            else return e;
        }
    }
    WeylElem term() {
        WeylElem e = unary();
        while (accept("*")) e = e * unary();
        return e;
    }
    WeylElem unary() {
        if (accept("-")) return -unary();
        return power();
    }
    WeylElem power() {
        bool is_h = peek().kind == Token::Ident && peek().text == "h";
        WeylElem base = atom();
        if (!accept("^")) return base;
        bool neg = accept("-");
        if (peek().kind != Token::Num) fail("expected an integer exponent");
        int e = std::stoi(t_[i_++].text);
        if (neg && !is_h) fail("negative exponent on something other than h");
        if (is_h) return WeylElem::h_power(alg_, neg ? -e : e);
        return base.pow(static_cast<unsigned>(e));
    }
    WeylElem atom() {
        const Token& tk = peek();
        if (tk.kind == Token::Num) {
            ++i_;
            return WeylElem::scalar(alg_, std::stoll(tk.text) % alg_->p());
        }
        if (accept("(")) {
            WeylElem e = expr();
            expect(")");
            return e;
        }
        if (accept("[")) {
            WeylElem a = expr();
            expect(",");
            WeylElem b = expr();
            expect("]");
            return commutator(a, b);
        }
        if (accept("{")) {
            WeylElem a = expr();
            expect(",");
            WeylElem b = expr();
            expect("}");
            return lift(alg_, poisson_bracket(symbol(a, sp_), symbol(b, sp_)));
        }
        if (tk.kind == Token::Ident) {
            ++i_;
            if (tk.text == "exp") {
                expect("(");
                WeylElem g = expr();
                expect(")");
                return restricted_exp(g);
            }
            if (tk.text == "h") return WeylElem::h_power(alg_, 1);
            const RingPtr& R = alg_->ring();
            for (int g = 0; g < R->ngens(); ++g)
                if (R->name(g) == tk.text) return WeylElem::scalar(alg_, CRElem::gen(R, g));
            for (int g = 0; g < alg_->ngens(); ++g)
                if (alg_->gen_name(g) == tk.text) return WeylElem::gen(alg_, g);
            --i_;
            fail("unknown identifier '" + tk.text + "'");
        }
        fail("unexpected token '" + tk.text + "'");
    }

    std::vector<Token> t_;
    size_t i_ = 0;
    WeylPtr alg_;
    A0Ptr sp_;
};

}  // namespace

WeylElem evaluate(const std::string& text, int p, int n, std::optional<Window> window) {
    require_prime(p);
    auto toks = tokenize(text);
    bool flat = false;
    std::set<std::string> params;
    for (const auto& tk : toks) {
        if (tk.kind != Token::Ident) continue;
        if (is_param(tk.text, n)) params.insert(tk.text);
        else if (!tk.text.empty() && (tk.text[0] == 'v' || tk.text[0] == 'u') && tk.text.size() > 1 &&
                 std::isdigit(static_cast<unsigned char>(tk.text[1])))
            flat = true;
    }
    // Fixed parameter order keeps the rendering canonical.
    std::vector<std::string> names;
    for (const char* pre : {"eps", "del"})
        for (int i = 1; i <= n; ++i)
            if (params.count(pre + std::to_string(i))) names.push_back(pre + std::to_string(i));
    for (const char* s : {"tau", "t"})
        if (params.count(s)) names.push_back(s);
    auto R = CoeffRing::make(p, names);
    Window w = window ? *window : default_window(p, n);
    auto alg = WeylAlgebra::make(p, n, flat ? Flavor::Flat : Flavor::Standard, R, w);
    auto sp = A0Space::make(p, n, R, flat);
    return Parser(std::move(toks), alg, sp).parse();
}

}  // namespace fcq
