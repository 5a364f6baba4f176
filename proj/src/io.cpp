#include "sftweyl/io.hpp"

#include <algorithm>
#include <cctype>

#include "sftweyl/errors.hpp"

namespace sftweyl {

namespace {

struct Token {
    enum Kind { Ident, Number, Punct, EndOfInput } kind = EndOfInput;
    std::string text;
    int line = 0, col = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : s_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        // skip whitespace and comments
        while (i_ < s_.size()) {
            char c = s_[i_];
            if (c == '#') {
                while (i_ < s_.size() && s_[i_] != '\n') ++i_;
            } else if (c == '\n') {
                ++line_;
                col_ = 1;
                ++i_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++col_;
                ++i_;
            } else {
                break;
            }
        }
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        if (i_ >= s_.size()) {
            tok_.kind = Token::EndOfInput;
            return;
        }
        char c = s_[i_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                ++i_;
            tok_.kind = Token::Ident;
            tok_.text = s_.substr(start, i_ - start);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            tok_.kind = Token::Number;
            tok_.text = s_.substr(start, i_ - start);
        } else if (c == '-' && i_ + 1 < s_.size() && s_[i_ + 1] == '>') {
            tok_.kind = Token::Punct;
            tok_.text = "->";
            i_ += 2;
        } else {
            tok_.kind = Token::Punct;
            tok_.text = std::string(1, c);
            ++i_;
        }
        col_ += static_cast<int>(i_ - (tok_.text.empty() ? i_ : i_ - tok_.text.size()));
        // col_ now points one past the token; recompute start columns lazily
        col_ = tok_.col + static_cast<int>(tok_.text.size());
    }

    const std::string& s_;
    std::size_t i_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

[[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw SyntaxError(t.line, t.col, msg);
}

int to_int(const Token& t) {
    try {
        return std::stoi(t.text);
    } catch (...) {
        fail(t, "integer out of range");
    }
}

// ---------------------------------------------------------------------------
// signature files

struct KeyVal {
    std::string key;
    std::string val;
    Token tok;
};

// Parses key=value and bare flags until end of logical line. The signature
// grammar is line-based, so we re-split the text into lines first.
std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    lines.push_back(cur);
    return lines;
}

struct LineTokens {
    std::vector<Token> toks;
    int line;
};

std::vector<Token> tokenize_line(const std::string& line, int lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token t;
        t.line = lineno;
        t.col = static_cast<int>(i) + 1;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i;
            while (i < line.size() &&
                   (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_'))
                ++i;
            t.kind = Token::Ident;
            t.text = line.substr(start, i - start);
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   (c == '-' && i + 1 < line.size() &&
                    std::isdigit(static_cast<unsigned char>(line[i + 1])))) {
            std::size_t start = i;
            if (c == '-') ++i;
            while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
            if (i < line.size() && line[i] == '/') {
                ++i;
                while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
            }
            t.kind = Token::Number;
            t.text = line.substr(start, i - start);
        } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
            t.kind = Token::Punct;
            t.text = "->";
            i += 2;
        } else {
            t.kind = Token::Punct;
            t.text = std::string(1, c);
            ++i;
        }
        out.push_back(std::move(t));
    }
    return out;
}

Rational rational_token(const Token& t) {
    try {
        return rational_from_string(t.text);
    } catch (const std::exception&) {
        fail(t, "malformed rational '" + t.text + "'");
    }
}

int int_token(const Token& t) {
    for (std::size_t i = (t.text.size() && t.text[0] == '-') ? 1 : 0; i < t.text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t.text[i])))
            fail(t, "expected integer, got '" + t.text + "'");
    if (t.text.empty() || t.text == "-") fail(t, "expected integer");
    return to_int(t);
}

struct OrbitLine {
    OrbitInfo info;
    std::optional<int> underlying_cz;
    Token tok;
};

} // namespace

SignatureFile parse_signature_file(const std::string& text) {
    std::optional<int> m;
    std::vector<OrbitLine> orbit_lines;
    std::vector<FormInfo> forms;
    std::vector<int> unit_forms, divisor_forms;
    std::vector<H2Info> h2;
    struct GeoLine {
        std::vector<Token> toks;
    };
    std::vector<GeoLine> geo_lines; // resolved after the signature is built

    auto lines = split_lines(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        auto toks = tokenize_line(lines[li], static_cast<int>(li) + 1);
        if (toks.empty()) continue;
        const Token& head = toks[0];
        if (head.kind != Token::Ident) fail(head, "expected a keyword");
        auto need = [&](std::size_t n) {
            if (toks.size() < n) fail(toks.back(), "truncated '" + head.text + "' line");
        };
        // tokenize_line splits "kappa=1" into Ident("kappa"), Punct("="), Number:
        // rejoin into key/value pairs; bare idents are flags.
        auto parse_attrs = [&](std::size_t start) {
            std::vector<KeyVal> attrs;
            std::size_t i = start;
            while (i < toks.size()) {
                if (toks[i].kind != Token::Ident) fail(toks[i], "expected attribute");
                if (i + 1 < toks.size() && toks[i + 1].kind == Token::Punct &&
                    toks[i + 1].text == "=") {
                    if (i + 2 >= toks.size()) fail(toks[i], "missing value after '='");
                    attrs.push_back({toks[i].text, toks[i + 2].text, toks[i + 2]});
                    i += 3;
                } else {
                    attrs.push_back({toks[i].text, "", toks[i]}); // bare flag
                    ++i;
                }
            }
            return attrs;
        };

        if (head.text == "m") {
            need(2);
            if (m) fail(head, "duplicate 'm' line");
            m = int_token(toks[1]);
        } else if (head.text == "orbit") {
            need(3);
            if (toks[1].kind != Token::Ident) fail(toks[1], "expected orbit id");
            OrbitLine ol;
            ol.info.name = toks[1].text;
            ol.tok = toks[1];
            bool have_kappa = false, have_cz = false;
            for (const KeyVal& kv : parse_attrs(2)) {
                if (kv.key == "kappa") {
                    ol.info.kappa = int_token(kv.tok);
                    have_kappa = true;
                } else if (kv.key == "cz") {
                    ol.info.cz = int_token(kv.tok);
                    have_cz = true;
                } else if (kv.key == "underlying_cz") {
                    ol.underlying_cz = int_token(kv.tok);
                } else if (kv.key == "end") {
                    if (kv.val == "+") ol.info.end = End::Plus;
                    else if (kv.val == "-") ol.info.end = End::Minus;
                    else fail(kv.tok, "end must be '+' or '-'");
                } else {
                    fail(kv.tok, "unknown orbit attribute '" + kv.key + "'");
                }
            }
            if (!have_kappa || !have_cz) fail(head, "orbit needs kappa= and cz=");
            orbit_lines.push_back(std::move(ol));
        } else if (head.text == "form") {
            need(3);
            if (toks[1].kind != Token::Ident) fail(toks[1], "expected form id");
            FormInfo f;
            f.name = toks[1].text;
            bool have_deg = false;
            bool unit = false, divisor = false;
            for (const KeyVal& kv : parse_attrs(2)) {
                if (kv.key == "deg") {
                    f.deg = int_token(kv.tok);
                    have_deg = true;
                } else if (kv.key == "unit" && kv.val.empty()) {
                    unit = true;
                } else if (kv.key == "divisor" && kv.val.empty()) {
                    divisor = true;
                } else {
                    fail(kv.tok, "unknown form attribute '" + kv.key + "'");
                }
            }
            if (!have_deg) fail(head, "form needs deg=");
            int idx = static_cast<int>(forms.size());
            forms.push_back(std::move(f));
            if (unit) unit_forms.push_back(idx);
            if (divisor) divisor_forms.push_back(idx);
        } else if (head.text == "h2") {
            need(3);
            if (toks[1].kind != Token::Ident) fail(toks[1], "expected h2 id");
            H2Info info;
            info.name = toks[1].text;
            bool have_c1 = false, have_pair = false;
            for (const KeyVal& kv : parse_attrs(2)) {
                if (kv.key == "c1") {
                    info.c1 = int_token(kv.tok);
                    have_c1 = true;
                } else if (kv.key == "pair") {
                    info.theta2_pairing = rational_token(kv.tok);
                    have_pair = true;
                } else {
                    fail(kv.tok, "unknown h2 attribute '" + kv.key + "'");
                }
            }
            if (!have_c1 || !have_pair) fail(head, "h2 needs c1= and pair=");
            h2.push_back(std::move(info));
        } else if (head.text == "d" || head.text == "cup" || head.text == "triple") {
            geo_lines.push_back({std::move(toks)});
        } else {
            fail(head, "unknown keyword '" + head.text + "'");
        }
    }

    if (!m) throw ValidationError("signature file lacks an 'm' line");
    if (unit_forms.size() != 1)
        throw ValidationError("signature needs exactly one unit form, found " +
                              std::to_string(unit_forms.size()));
    if (divisor_forms.size() > 1)
        throw ValidationError("signature admits at most one divisor form");

    std::vector<OrbitInfo> orbits;
    for (const OrbitLine& ol : orbit_lines) {
        if (ol.underlying_cz && orbit_is_bad(*ol.underlying_cz, ol.info.cz))
            throw ValidationError("orbit '" + ol.info.name + "' is bad (CZ parity differs from underlying orbit)");
        orbits.push_back(ol.info);
    }

    SignatureFile out;
    out.signature = std::make_shared<AlgebraSignature>(
        *m, std::move(orbits), std::move(forms), std::move(h2), unit_forms[0],
        divisor_forms.empty() ? -1 : divisor_forms[0]);

    const AlgebraSignature& sig = *out.signature;
    out.geometry = GeometryData(sig);
    for (const auto& gl : geo_lines) {
        const auto& toks = gl.toks;
        const Token& head = toks[0];
        auto form_id = [&](const Token& t) {
            auto idx = sig.find_form(t.text);
            if (!idx) throw UnknownGenerator(t.line, t.col, t.text);
            return *idx;
        };
        if (head.text == "d") {
            if (toks.size() != 3) fail(head, "d line needs: d <orbit-id> <rational>");
            auto idx = sig.find_orbit(toks[1].text);
            if (!idx) throw UnknownGenerator(toks[1].line, toks[1].col, toks[1].text);
            out.geometry.set_d(*idx, rational_token(toks[2]));
        } else if (head.text == "cup") {
            if (toks.size() != 6 || toks[3].text != "->")
                fail(head, "cup line needs: cup <form> <form> -> <form> <rational>");
            out.geometry.add_cup(sig, form_id(toks[1]), form_id(toks[2]), form_id(toks[4]),
                                 rational_token(toks[5]));
        } else { // triple
            if (toks.size() != 5)
                fail(head, "triple line needs: triple <form> <form> <form> <rational>");
            out.geometry.add_triple(sig, form_id(toks[1]), form_id(toks[2]), form_id(toks[3]),
                                    rational_token(toks[4]));
        }
    }
    return out;
}

SignaturePtr parse_signature(const std::string& text) {
    return parse_signature_file(text).signature;
}

GeometryData parse_geometry(const std::string& text, const AlgebraSignature& sig) {
    GeometryData geo(sig);
    auto lines = split_lines(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        auto toks = tokenize_line(lines[li], static_cast<int>(li) + 1);
        if (toks.empty()) continue;
        const Token& head = toks[0];
        auto form_id = [&](const Token& t) {
            auto idx = sig.find_form(t.text);
            if (!idx) throw UnknownGenerator(t.line, t.col, t.text);
            return *idx;
        };
        if (head.text == "d") {
            if (toks.size() != 3) fail(head, "d line needs: d <orbit-id> <rational>");
            auto idx = sig.find_orbit(toks[1].text);
            if (!idx) throw UnknownGenerator(toks[1].line, toks[1].col, toks[1].text);
            geo.set_d(*idx, rational_token(toks[2]));
        } else if (head.text == "cup") {
            if (toks.size() != 6 || toks[3].text != "->")
                fail(head, "cup line needs: cup <form> <form> -> <form> <rational>");
            geo.add_cup(sig, form_id(toks[1]), form_id(toks[2]), form_id(toks[4]),
                        rational_token(toks[5]));
        } else if (head.text == "triple") {
            if (toks.size() != 5)
                fail(head, "triple line needs: triple <form> <form> <form> <rational>");
            geo.add_triple(sig, form_id(toks[1]), form_id(toks[2]), form_id(toks[3]),
                           rational_token(toks[4]));
        } else {
            fail(head, "expected a geometry line (d/cup/triple)");
        }
    }
    return geo;
}

// ---------------------------------------------------------------------------
// series expressions

namespace {

class SeriesParser {
public:
    SeriesParser(const std::string& text, SignaturePtr sig, const TruncationWindow& w,
                 ProductKind mode)
        : lex_(text), sig_(std::move(sig)), win_(w), mode_(mode) {}

    Series parse() {
        Series out(sig_, win_);
        bool neg = false;
        if (is_punct("+") || is_punct("-")) neg = lex_.take().text == "-";
        parse_term(out, neg);
        while (is_punct("+") || is_punct("-")) {
            bool minus = lex_.take().text == "-";
            parse_term(out, minus);
        }
        const Token& t = lex_.peek();
        if (t.kind != Token::EndOfInput) fail(t, "unexpected '" + t.text + "'");
        return out;
    }

private:
    bool is_punct(const std::string& p) const {
        return lex_.peek().kind == Token::Punct && lex_.peek().text == p;
    }

    // rational := ["-"] int ["/" int]   (the sign is handled by the caller)
    Rational parse_rational(const Token& first) {
        std::string text = first.text;
        if (is_punct("/")) {
            lex_.take();
            const Token den = lex_.take();
            if (den.kind != Token::Number) fail(den, "expected denominator");
            text += "/" + den.text;
        }
        try {
            return rational_from_string(text);
        } catch (const std::exception&) {
            fail(first, "malformed rational '" + text + "'");
        }
    }

    int parse_signed_int() {
        bool neg = false;
        if (is_punct("-")) {
            lex_.take();
            neg = true;
        }
        const Token t = lex_.take();
        if (t.kind != Token::Number) fail(t, "expected integer exponent");
        int v = to_int(t);
        return neg ? -v : v;
    }

    struct Factor {
        Generator gen;
        int exp = 1;
        Token tok;
    };

    Factor parse_factor() {
        Token head = lex_.take();
        if (head.kind != Token::Ident) fail(head, "expected generator");
        Factor f;
        f.tok = head;
        const std::string& name = head.text;
        if (name == "h") {
            f.gen = Generator::hbar();
        } else if (name == "p" || name == "q" || name == "t" || name == "z") {
            std::optional<End> end_mark;
            if (is_punct("+") || is_punct("-")) {
                // end suffix: p+[id] / q-[id]
                end_mark = lex_.peek().text == "+" ? End::Plus : End::Minus;
                lex_.take();
            }
            if (!is_punct("[")) fail(lex_.peek(), "expected '[' after generator kind");
            lex_.take();
            Token id = lex_.take();
            if (id.kind != Token::Ident) fail(id, "expected id");
            int level = 0;
            if (name == "t") {
                if (!is_punct(",")) fail(lex_.peek(), "expected ',' in t[id,level]");
                lex_.take();
                Token lvl = lex_.take();
                if (lvl.kind != Token::Number) fail(lvl, "expected descendant level");
                level = to_int(lvl);
            }
            if (!is_punct("]")) fail(lex_.peek(), "expected ']'");
            lex_.take();

            if (name == "p" || name == "q") {
                auto idx = sig_->find_orbit(id.text);
                if (!idx) throw UnknownGenerator(id.line, id.col, id.text);
                if (end_mark) {
                    End have = sig_->orbits()[*idx].end;
                    if (have != End::Both && have != *end_mark)
                        throw WrongEnd("generator '" + name + "' of orbit '" + id.text +
                                       "' does not live on the requested end");
                }
                f.gen = name == "p" ? Generator::p(*idx) : Generator::q(*idx);
            } else if (name == "t") {
                if (end_mark) fail(head, "t carries no end suffix");
                auto idx = sig_->find_form(id.text);
                if (!idx) throw UnknownGenerator(id.line, id.col, id.text);
                f.gen = Generator::t(*idx, level);
            } else {
                if (end_mark) fail(head, "z carries no end suffix");
                auto idx = sig_->find_h2(id.text);
                if (!idx) throw UnknownGenerator(id.line, id.col, id.text);
                f.gen = Generator::z(*idx);
            }
        } else {
            fail(head, "unknown generator '" + name + "'");
        }
        if (is_punct("^")) {
            lex_.take();
            f.exp = parse_signed_int();
            if (f.exp < 0 && f.gen.kind != GenKind::HBAR)
                fail(f.tok, "negative exponent is allowed on h only");
        }
        return f;
    }

    void parse_term(Series& out, bool negate) {
        Rational coeff = 1;
        bool have_factor = false;
        Token first = lex_.peek();

        if (first.kind == Token::Number) {
            lex_.take();
            coeff = parse_rational(first);
            if (is_punct("*")) {
                lex_.take();
            } else {
                // constant term
                emit(out, negate ? Rational(-coeff) : coeff, 0, {}, {}, first);
                return;
            }
        }

        int hbar = 0;
        std::vector<int32_t> z(sig_->h2_basis().size(), 0);
        std::vector<Letter> word;
        while (true) {
            Factor f = parse_factor();
            have_factor = true;
            switch (f.gen.kind) {
            case GenKind::HBAR: hbar += f.exp; break;
            case GenKind::Z:
                if (f.exp < 0) fail(f.tok, "negative exponent is allowed on h only");
                z[f.gen.idx] += f.exp;
                break;
            default:
                for (int k = 0; k < f.exp; ++k)
                    word.push_back(Letter{f.gen.kind, f.gen.idx, f.gen.level});
                break;
            }
            if (is_punct("*")) lex_.take();
            else break;
        }
        if (!have_factor) fail(first, "expected a term");
        emit(out, negate ? Rational(-coeff) : coeff, hbar, std::move(z), std::move(word), first);
    }

    void emit(Series& out, const Rational& coeff, int hbar, std::vector<int32_t> z,
              std::vector<Letter> word, const Token& where) {
        // Literal window check before normal-forming.
        MonoKey probe;
        probe.hbar = hbar;
        probe.z = z.empty() ? std::vector<int32_t>(sig_->h2_basis().size(), 0) : z;
        probe.word = word;
        if (!monomial_inside(probe, win_))
            throw WindowOverflow(where.line, where.col, "term exceeds " + win_.str());
        out.add_word_term(coeff, hbar, std::move(probe.z), std::move(word), mode_);
        out.clip_to_window();
    }

    Lexer lex_;
    SignaturePtr sig_;
    TruncationWindow win_;
    ProductKind mode_;
};

void append_exponent(std::string& s, const std::string& base, int exp) {
    s += base;
    if (exp != 1) s += "^" + std::to_string(exp);
}

} // namespace

Series parse_series(const std::string& text, SignaturePtr sig, const TruncationWindow& w,
                    ProductKind mode) {
    SeriesParser parser(text, std::move(sig), w, mode);
    return parser.parse();
}

std::string print_canonical(const Series& f) {
    if (f.is_zero()) return "0";
    const AlgebraSignature& sig = *f.signature();
    std::string out;
    bool first = true;
    for (const auto& [key, coeff] : f.terms()) {
        Rational c = coeff;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }

        std::vector<std::string> pieces;   // separated by " * "
        std::string letters;               // t/q/p/z factors, '*'-tight

        bool coeff_shown = false;
        bool monomial_trivial = key.hbar == 0 && key.word.empty() &&
                                std::all_of(key.z.begin(), key.z.end(),
                                            [](int32_t e) { return e == 0; });
        if (c != 1 || monomial_trivial) {
            pieces.push_back(to_string(c));
            coeff_shown = true;
        }
        (void)coeff_shown;
        if (key.hbar != 0) {
            std::string h = "h";
            if (key.hbar != 1) h += "^" + std::to_string(key.hbar);
            pieces.push_back(h);
        }
        // letters in canonical order, with run-length exponents
        for (std::size_t i = 0; i < key.word.size();) {
            const Letter& l = key.word[i];
            std::size_t j = i;
            while (j < key.word.size() && key.word[j] == l) ++j;
            std::string base;
            switch (l.kind) {
            case GenKind::T:
                base = "t[" + sig.forms()[l.idx].name + "," + std::to_string(l.level) + "]";
                break;
            case GenKind::Q: base = "q[" + sig.orbits()[l.idx].name + "]"; break;
            default: base = "p[" + sig.orbits()[l.idx].name + "]"; break;
            }
            if (!letters.empty()) letters += "*";
            append_exponent(letters, base, static_cast<int>(j - i));
            i = j;
        }
        for (std::size_t i = 0; i < key.z.size(); ++i) {
            if (key.z[i] == 0) continue;
            if (!letters.empty()) letters += "*";
            append_exponent(letters, "z[" + sig.h2_basis()[i].name + "]", key.z[i]);
        }
        if (!letters.empty()) pieces.push_back(std::move(letters));

        for (std::size_t i = 0; i < pieces.size(); ++i) {
            if (i) out += " * ";
            out += pieces[i];
        }
    }
    return out;
}

} // namespace sftweyl
