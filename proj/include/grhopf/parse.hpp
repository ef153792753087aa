#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "invariant.hpp"
#include "presentation.hpp"

namespace grhopf {

/// Parse failure with position; `semantic` distinguishes well-formed text
/// that violates a declaration rule from raw syntax errors.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t col, const std::string& msg, bool semantic)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
          line_(line),
          col_(col),
          semantic_(semantic) {}
    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }
    bool semantic() const { return semantic_; }

private:
    std::size_t line_, col_;
    bool semantic_;
};

namespace parseimpl {

struct RawMono {
    std::vector<std::pair<std::string, unsigned>> factors;  // empty = the monomial 1
};

struct RawTerm {
    unsigned coeff = 1;
    bool coeff_explicit = false;
    RawMono left, right;
};

struct RawCoprod {
    std::string name;
    std::vector<RawTerm> terms;
    std::size_t line = 0;
};

struct RawGen {
    std::string name;
    unsigned degree = 0;
    unsigned height = 1;
    bool odd_height = false;
    std::size_t line = 0;
};

struct ParsedFile {
    std::optional<unsigned> prime;
    std::vector<RawGen> generators;
    std::vector<RawCoprod> deltabar;
    std::vector<RawCoprod> coaction;
};

class LineScanner {
public:
    LineScanner(const std::string& s, std::size_t line) : s_(s), line_(line) {}

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }
    bool eof() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c, const std::string& what) {
        if (!accept(c)) fail("expected '" + std::string(1, c) + "' " + what);
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            ++pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
        }
        if (start == pos_) fail("expected identifier");
        return s_.substr(start, pos_ - start);
    }
    unsigned integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        unsigned long v = std::stoul(s_.substr(start, pos_ - start));
        if (v > 1000000000ul) fail("integer out of range");
        return unsigned(v);
    }
    [[noreturn]] void fail(const std::string& msg, bool semantic = false) {
        throw ParseError(line_, pos_ + 1, msg, semantic);
    }
    std::size_t line() const { return line_; }
    std::size_t col() const { return pos_ + 1; }

private:
    const std::string& s_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

inline RawMono parse_mono(LineScanner& sc) {
    RawMono m;
    if (sc.peek() == '1') {
        sc.accept('1');
        return m;
    }
    for (;;) {
        std::string name = sc.ident();
        unsigned exp = 1;
        if (sc.accept('^')) exp = sc.integer();
        m.factors.push_back({name, exp});
        if (!sc.accept('*')) break;
        // a '*' may also precede the next name only
    }
    return m;
}

inline RawTerm parse_term(LineScanner& sc) {
    RawTerm t;
    if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
        // either a coefficient (followed by '*') or the monomial '1'
        if (sc.peek() == '1') {
            // lookahead: 1 alone is the unit monomial; 1* or plain digit run is a coefficient
        }
        unsigned v = sc.integer();
        if (sc.accept('*')) {
            t.coeff = v;
            t.coeff_explicit = true;
            t.left = parse_mono(sc);
        } else if (v == 1) {
            t.left = RawMono{};  // the monomial 1
        } else {
            sc.fail("bare integer is not a monomial");
        }
    } else {
        t.left = parse_mono(sc);
    }
    sc.expect('|', "between tensor factors");
    if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
        unsigned v = sc.integer();
        if (v != 1) sc.fail("bare integer is not a monomial");
        t.right = RawMono{};
    } else {
        t.right = parse_mono(sc);
    }
    return t;
}

inline ParsedFile parse_text(const std::string& text) {
    ParsedFile out;
    std::istringstream is(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = true;
        for (char c : line)
            if (c != ' ' && c != '\t' && c != '\r') blank = false;
        if (blank) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        LineScanner sc(line, lineno);
        std::string key = sc.ident();
        sc.expect(':', "after keyword");
        if (key == "prime") {
            if (out.prime) sc.fail("duplicate prime declaration", true);
            out.prime = sc.integer();
        } else if (key == "generator") {
            RawGen g;
            g.line = lineno;
            g.name = sc.ident();
            for (int k = 0; k < 2; ++k) {
                std::string attr = sc.ident();
                sc.expect('=', "after attribute name");
                if (attr == "degree") {
                    g.degree = sc.integer();
                } else if (attr == "height") {
                    if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
                        g.height = sc.integer();
                    } else {
                        std::string word = sc.ident();
                        if (word != "odd") sc.fail("height must be an integer or 'odd'");
                        g.odd_height = true;
                    }
                } else {
                    sc.fail("unknown generator attribute '" + attr + "'");
                }
            }
            out.generators.push_back(g);
        } else if (key == "deltabar" || key == "coaction") {
            RawCoprod c;
            c.line = lineno;
            c.name = sc.ident();
            sc.expect('=', "after name");
            c.terms.push_back(parse_term(sc));
            while (sc.accept('+')) c.terms.push_back(parse_term(sc));
            (key == "deltabar" ? out.deltabar : out.coaction).push_back(std::move(c));
        } else {
            sc.fail("unknown keyword '" + key + "'");
        }
        if (!sc.eof()) sc.fail("trailing input");
    }
    return out;
}

inline BasisIndex bind_mono(const MonomialBasis& basis, const RawMono& m,
                            const std::map<std::string, std::size_t>& index, std::size_t line) {
    std::vector<BasisIndex> expo(basis.num_gens(), 0);
    for (auto& [name, exp] : m.factors) {
        auto it = index.find(name);
        if (it == index.end()) throw ParseError(line, 1, "undeclared generator '" + name + "'", true);
        if (exp == 0) throw ParseError(line, 1, "zero exponent on '" + name + "'", true);
        std::uint64_t total = expo[it->second] + std::uint64_t(exp);
        if (total >= basis.bound(it->second))
            throw ParseError(line, 1, "exponent exceeds truncation on '" + name + "'", true);
        expo[it->second] = BasisIndex(total);
    }
    return basis.index_of(expo);
}

}  // namespace parseimpl

/// Bind a parsed file into a presentation. Throws ParseError on semantic
/// violations (undeclared names, exponent or coefficient range, parity and
/// height conflicts, tensor terms touching the unit).
inline PresPtr presentation_from_text(const std::string& text) {
    using namespace parseimpl;
    ParsedFile f = parse_text(text);
    if (!f.prime) throw ParseError(1, 1, "missing prime declaration", true);
    Prime p = [&] {
        try {
            return Prime(*f.prime);
        } catch (const AlgebraError& e) {
            throw ParseError(1, 1, e.what(), true);
        }
    }();
    if (!f.coaction.empty())
        throw ParseError(f.coaction.front().line, 1, "coaction block outside a module file", true);

    std::vector<GenSpec> gens;
    std::map<std::string, std::size_t> index;
    for (const RawGen& rg : f.generators) {
        if (index.count(rg.name))
            throw ParseError(rg.line, 1, "duplicate generator '" + rg.name + "'", true);
        GenSpec g;
        g.name = rg.name;
        g.degree = rg.degree;
        bool odd_needed = p.value() > 2 && rg.degree % 2 == 1;
        if (rg.odd_height) {
            if (!odd_needed)
                throw ParseError(rg.line, 1, "height 'odd' only valid for odd degree at odd primes", true);
            g.odd_trunc = true;
            g.height = 1;
        } else {
            if (odd_needed)
                throw ParseError(rg.line, 1,
                                 "odd-degree generator at odd prime must declare height=odd", true);
            if (rg.height < 1) throw ParseError(rg.line, 1, "height must be positive", true);
            g.height = rg.height;
        }
        index[rg.name] = gens.size();
        gens.push_back(g);
    }

    MonomialBasis basis(p, gens);
    std::vector<TensorElement> db(gens.size());
    std::vector<bool> seen(gens.size(), false);
    for (const RawCoprod& rc : f.deltabar) {
        auto it = index.find(rc.name);
        if (it == index.end())
            throw ParseError(rc.line, 1, "deltabar for undeclared generator '" + rc.name + "'", true);
        if (seen[it->second])
            throw ParseError(rc.line, 1, "duplicate deltabar for '" + rc.name + "'", true);
        seen[it->second] = true;
        for (const RawTerm& t : rc.terms) {
            if (t.coeff == 0 || t.coeff >= p.value())
                throw ParseError(rc.line, 1, "coefficient must be reduced and nonzero", true);
            BasisIndex l = bind_mono(basis, t.left, index, rc.line);
            BasisIndex r = bind_mono(basis, t.right, index, rc.line);
            if (l == 0 || r == 0)
                throw ParseError(rc.line, 1, "deltabar terms must avoid the unit factor", true);
            db[it->second].add_term(l, r, Scalar(t.coeff), p.value());
        }
    }
    return make_presentation(p, gens, db);
}

/// Bind a module file (generators of R plus coaction lines) against a parsed
/// main presentation.
inline ComoduleAlgebra comodule_from_text(PresPtr A, const std::string& text) {
    using namespace parseimpl;
    ParsedFile f = parse_text(text);
    if (f.prime && *f.prime != A->p())
        throw ParseError(1, 1, "module prime differs from the presentation", true);
    if (!f.deltabar.empty())
        throw ParseError(f.deltabar.front().line, 1, "deltabar not allowed in a module file", true);

    std::vector<GenSpec> gens;
    std::map<std::string, std::size_t> index;
    for (const RawGen& rg : f.generators) {
        if (index.count(rg.name))
            throw ParseError(rg.line, 1, "duplicate generator '" + rg.name + "'", true);
        GenSpec g;
        g.name = rg.name;
        g.degree = rg.degree;
        bool odd_needed = A->p() > 2 && rg.degree % 2 == 1;
        if (rg.odd_height) {
            if (!odd_needed)
                throw ParseError(rg.line, 1, "height 'odd' only valid for odd degree at odd primes", true);
            g.odd_trunc = true;
            g.height = 1;
        } else {
            if (odd_needed)
                throw ParseError(rg.line, 1,
                                 "odd-degree generator at odd prime must declare height=odd", true);
            g.height = rg.height;
        }
        index[rg.name] = gens.size();
        gens.push_back(g);
    }

    std::map<std::string, std::size_t> a_index;
    for (std::size_t g = 0; g < A->num_gens(); ++g) a_index[A->gen(g).name] = g;

    ComoduleAlgebra cm;
    cm.A = A;
    cm.R = MonomialBasis(A->prime(), gens);
    cm.coaction.assign(gens.size(), {});
    std::vector<bool> seen(gens.size(), false);
    for (const RawCoprod& rc : f.coaction) {
        auto it = index.find(rc.name);
        if (it == index.end())
            throw ParseError(rc.line, 1, "coaction for undeclared module generator '" + rc.name + "'",
                             true);
        if (seen[it->second])
            throw ParseError(rc.line, 1, "duplicate coaction for '" + rc.name + "'", true);
        seen[it->second] = true;
        for (const RawTerm& t : rc.terms) {
            if (t.coeff == 0 || t.coeff >= A->p())
                throw ParseError(rc.line, 1, "coefficient must be reduced and nonzero", true);
            BasisIndex l = bind_mono(A->basis(), t.left, a_index, rc.line);
            BasisIndex r = bind_mono(cm.R, t.right, index, rc.line);
            cm.coaction[it->second].add_term(l, r, Scalar(t.coeff), A->p());
        }
    }
    for (std::size_t g = 0; g < gens.size(); ++g)
        if (!seen[g])
            throw ParseError(1, 1, "missing coaction for module generator '" + gens[g].name + "'", true);
    return cm;
}

/// Canonical file text; parse(print) is the identity on canonical files.
inline std::string print_presentation(const HopfPresentation& h) {
    std::ostringstream os;
    os << "prime: " << h.p() << "\n";
    for (std::size_t g = 0; g < h.num_gens(); ++g) {
        const GenSpec& gs = h.gen(g);
        os << "generator: " << gs.name << " degree=" << gs.degree << " height=";
        if (gs.odd_trunc)
            os << "odd";
        else
            os << gs.height;
        os << "\n";
    }
    for (std::size_t g = 0; g < h.num_gens(); ++g) {
        const TensorElement& db = h.deltabar_gen(g);
        if (db.is_zero()) continue;
        os << "deltabar: " << h.gen(g).name << " =";
        bool first = true;
        for (auto& [k, c] : db.terms) {
            os << (first ? " " : " + ");
            if (c != 1) os << unsigned(c) << "*";
            os << h.monomial_string(tensor_left(k)) << " | " << h.monomial_string(tensor_right(k));
            first = false;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace grhopf
