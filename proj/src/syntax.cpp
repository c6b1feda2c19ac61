#include "rho/syntax.hpp"

#include <cctype>
#include <set>

#include "rho/combinators.hpp"

namespace rho {

namespace {

enum class Tok { Ident, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') advance(1);
            continue;
        }
        int l = line, k = col;
        if (ident_char(c)) {
            std::size_t j = i;
            while (j < s.size() && ident_char(s[j])) ++j;
            std::string w = s.substr(i, j - i);
            if (w == "repeat" && j < s.size() && s[j] == '*') {
                w += '*';
                ++j;
            }
            advance(j - i);
            out.push_back({Tok::Ident, w, l, k});
            continue;
        }
        for (const char* p : {"->", "<<", ">>"}) {
            if (s.compare(i, 2, p) == 0) {
                out.push_back({Tok::Punct, p, l, k});
                advance(2);
                goto next;
            }
        }
        if (std::string("[](){}<>,;:/").find(c) != std::string::npos) {
            out.push_back({Tok::Punct, std::string(1, c), l, k});
            advance(1);
            continue;
        }
        throw Error("parse-error", std::to_string(l) + ":" + std::to_string(k) + ": unexpected character '" +
                                       std::string(1, c) + "'");
    next:;
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

const std::set<std::string>& keywords() {
    static const std::set<std::string> k{"id",     "fail",     "try",    "first",  "dc",      "phi",
                                         "psi",    "theta",    "seq",    "sd",     "bottomup", "topdown",
                                         "oncebu", "oncetd",   "repeat*", "im",    "om",      "sig",
                                         "profile", "ctx"};
    return k;
}

struct Annotation {
    std::string var;
    Type type;
};

class Parser {
public:
    Parser(const std::string& text, Signature& sig, const ParseOptions& opt)
        : toks_(tokenize(text)), sig_(sig), opt_(opt) {}

    SourceFile file() {
        SourceFile f;
        while (!at_end()) {
            if (is_ident("sig")) {
                signature();
            } else if (is_ident("profile")) {
                profile();
            } else if (is_ident("ctx")) {
                context(f.ctx);
            } else {
                f.terms.push_back(top_term());
                if (!at_end()) expect(";");
            }
            while (is_punct(";")) ++pos_;
        }
        f.sig = sig_;
        return f;
    }

    Term single() {
        Term t = top_term();
        while (is_punct(";")) ++pos_;
        if (!at_end()) fail("unexpected '" + peek().text + "'");
        return t;
    }

    Type single_type() {
        Type t = type();
        if (!at_end()) fail("unexpected '" + peek().text + "'");
        return t;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool at_end() const { return peek().kind == Tok::End; }
    bool is_punct(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }
    bool is_ident(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

    [[noreturn]] void fail(const std::string& msg, const char* code = "parse-error") const {
        throw Error(code, std::to_string(peek().line) + ":" + std::to_string(peek().col) + ": " + msg);
    }

    void expect(const char* p) {
        if (!is_punct(p)) fail(std::string("expected '") + p + "'" + (at_end() ? " at end of input" : ", found '" + peek().text + "'"));
        ++pos_;
    }

    std::string ident(const char* what) {
        if (peek().kind != Tok::Ident) fail(std::string("expected ") + what);
        return toks_[pos_++].text;
    }

    std::string symbol_name() {
        const Token& t = peek();
        std::string s = ident("symbol");
        if (keywords().count(s)) throw_at(t, "keyword '" + s + "' cannot be a symbol");
        check_reserved(t, s);
        return s;
    }

    [[noreturn]] void throw_at(const Token& t, const std::string& msg, const char* code = "parse-error") const {
        throw Error(code, std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + msg);
    }

    void check_reserved(const Token& t, const std::string& s) const {
        if (!opt_.allow_reserved && is_reserved_name(s))
            throw_at(t, "identifier '" + s + "' uses the reserved prefix '_'", "reserved-identifier");
    }

    int number() {
        const Token& t = peek();
        std::string s = ident("arity");
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) throw_at(t, "expected an arity, found '" + s + "'");
        return std::stoi(s);
    }

    void declare(const Token& at, const std::string& f, int n) {
        auto a = sig_.arity(f);
        if (a && *a != n)
            throw_at(at, "symbol " + f + " has arity " + std::to_string(*a) + ", used with " + std::to_string(n),
                     "arity-mismatch");
        sig_.declare(f, n);
    }

    void signature() {
        ++pos_;
        do {
            const Token& at = peek();
            std::string f = symbol_name();
            expect("/");
            declare(at, f, number());
        } while (is_punct(",") && ++pos_);
        expect(";");
    }

    void profile() {
        ++pos_;
        const Token& at = peek();
        std::string f = symbol_name();
        expect(":");
        std::vector<Type> ts{type_no_arrow()};
        while (is_punct(",")) {
            ++pos_;
            ts.push_back(type_no_arrow());
        }
        Profile p;
        if (is_punct("->")) {
            ++pos_;
            p.args = ts;
            p.result = type();
        } else if (ts.size() == 1) {
            p.result = ts[0];
        } else {
            fail("expected '->' in profile");
        }
        if (!sig_.has(f)) declare(at, f, static_cast<int>(p.args.size()));
        try {
            sig_.add_profile(f, p);
        } catch (const Error& e) {
            throw_at(at, e.what(), "arity-mismatch");
        }
        expect(";");
    }

    void context(Context& ctx) {
        ++pos_;
        do {
            const Token& at = peek();
            std::string x = ident("variable");
            check_reserved(at, x);
            expect(":");
            ctx.emplace_back(x, type());
        } while (is_punct(",") && ++pos_);
        expect(";");
    }

    Type type() {
        Type d = type_no_arrow();
        if (is_punct("->")) {
            ++pos_;
            return Type::arrow(d, type());
        }
        return d;
    }

    Type type_no_arrow() {
        if (is_punct("(")) {
            ++pos_;
            Type t = type();
            expect(")");
            return t;
        }
        return Type::atom(ident("type"));
    }

    Term top_term() {
        Term t = term();
        if (!annots_.empty()) fail("type annotation outside a rule left-hand side");
        return t;
    }

    Term term() {
        std::size_t mark = annots_.size();
        Term l = atom();
        if (!is_punct("->")) return l;
        ++pos_;
        std::optional<Context> ctx;
        if (annots_.size() > mark) {
            Context c;
            for (std::size_t i = mark; i < annots_.size(); ++i) c.emplace_back(annots_[i].var, annots_[i].type);
            annots_.resize(mark);
            ctx = std::move(c);
        }
        Term r = term();
        return Term::rule(l, r, std::move(ctx));
    }

    Terms list(const char* close) {
        Terms out;
        if (is_punct(close)) {
            ++pos_;
            return out;
        }
        out.push_back(term());
        while (is_punct(",")) {
            ++pos_;
            out.push_back(term());
        }
        expect(close);
        return out;
    }

    Terms args(const std::string& kw, std::size_t min, std::size_t max) {
        expect("(");
        Terms a = list(")");
        if (a.size() < min || a.size() > max)
            fail(kw + " expects " + (min == max ? std::to_string(min) : "at least " + std::to_string(min)) +
                 " argument(s)");
        return a;
    }

    Term atom() {
        const Token& t = peek();
        if (t.kind == Tok::End) fail("unexpected end of input");
        if (t.kind == Tok::Punct) {
            ++pos_;
            if (t.text == "[") {
                Term f = term();
                expect("]");
                expect("(");
                Term a = term();
                expect(")");
                return Term::app(f, a);
            }
            if (t.text == "{") return Term::set(list("}"));
            if (t.text == "(") {
                Term x = term();
                expect(")");
                return x;
            }
            if (t.text == "<") return Term::choice(list(">"));
            if (t.text == "<<") return Term::uchoice(list(">>"));
            throw_at(t, "unexpected '" + t.text + "'");
        }
        ++pos_;
        const std::string& w = t.text;
        if (keywords().count(w)) return keyword(t);
        check_reserved(t, w);
        if (is_punct("(")) {
            ++pos_;
            Terms a = list(")");
            declare(t, w, static_cast<int>(a.size()));
            return Term::fun(w, std::move(a));
        }
        if (sig_.has(w)) {
            if (*sig_.arity(w) != 0)
                throw_at(t, "symbol " + w + " has arity " + std::to_string(*sig_.arity(w)) + ", used with 0",
                         "arity-mismatch");
            return Term::fun(w);
        }
        if (is_punct(":")) {
            ++pos_;
            annots_.push_back({w, type_no_arrow()});
        }
        return Term::var(w);
    }

    Term keyword(const Token& t) {
        const std::string& w = t.text;
        NameSupply& names = builder_names();
        if (w == "sig" || w == "profile" || w == "ctx") throw_at(t, "declaration inside a term");
        if (w == "id") return make_id(names);
        if (w == "fail") return make_fail(names);
        if (w == "theta") return make_fixpoint(names);
        if (w == "first") return Term::first(args(w, 1, SIZE_MAX));
        if (w == "dc") return Term::dc(args(w, 1, SIZE_MAX));
        if (w == "seq") {
            Terms a = args(w, 2, 2);
            return make_seq(a[0], a[1], names);
        }
        Term r = args(w, 1, 1)[0];
        if (w == "try") return make_try(r, names);
        if (w == "phi") return make_traverse(Combinator::Phi, r, sig_, opt_.expand_traverse, names);
        if (w == "psi") return make_traverse(Combinator::Psi, r, sig_, opt_.expand_traverse, names);
        if (w == "im") return make_normalizer(Combinator::Im, r, names);
        if (w == "om") return make_normalizer(Combinator::Om, r, names);
        auto c = parse_combinator(w);
        return make_recursor(*c, r, names);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Signature& sig_;
    ParseOptions opt_;
    std::vector<Annotation> annots_;
};

}  // namespace

SourceFile parse_file(const std::string& text, const ParseOptions& opt) {
    Signature sig;
    return Parser(text, sig, opt).file();
}

Term parse_term(const std::string& text, Signature& sig, const ParseOptions& opt) {
    return Parser(text, sig, opt).single();
}

Term parse_term(const std::string& text, const ParseOptions& opt) {
    Signature sig;
    return parse_term(text, sig, opt);
}

Type parse_type(const std::string& text) {
    Signature sig;
    return Parser(text, sig, {}).single_type();
}

std::string normalize_whitespace(const std::string& s) {
    std::string out;
    bool pending = false;
    auto sticky = [](char c) { return std::string("[](){},;:").find(c) != std::string::npos; };
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending = !out.empty();
            continue;
        }
        if (pending && !sticky(c) && !sticky(out.back())) out += ' ';
        pending = false;
        out += c;
    }
    return out;
}

}  // namespace rho
