#pragma once

#include <cctype>
#include <string>

#include "healie/tau.hpp"

namespace healie {

/// Parse failure with the offending position, for caret diagnostics.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t pos, const std::string& what)
        : std::runtime_error(what), pos_(pos)
    {
    }
    std::size_t pos() const { return pos_; }

private:
    std::size_t pos_;
};

/// Recursive-descent parser for element expressions:
///
///   expr  := term (('+'|'-') term)*
///   term  := [coef '*'] atom
///   atom  := K<digits>                      degree-0 central K_i
///          | d<digits>                      derivation d_i
///          | K '[' '(' coefs ')' ',' '(' ints ')' ']'   K(u, r)
///          | h '[' ints ']'                 Hamiltonian h_r
///          | label '(' ints ')'             loop term: basis label (x) t^r
///   coef  := ['-'] digits ['/' digits]
///
/// Note: 'h(...)' is the loop term of a basis element named h, while
/// 'h[...]' is the Hamiltonian; the bracket shape disambiguates.
class ExprParser {
public:
    ExprParser(const TauAlgebra& alg, std::string src)
        : alg_(alg), src_(std::move(src)), pos_(0)
    {
    }

    TauElement parse()
    {
        TauElement acc = parse_term(1);
        skip_ws();
        while (!eof() && (peek() == '+' || peek() == '-')) {
            const int sign = peek() == '+' ? 1 : -1;
            ++pos_;
            acc = acc + parse_term(sign);
            skip_ws();
        }
        skip_ws();
        if (!eof())
            fail("unexpected trailing input");
        return acc;
    }

private:
    TauElement parse_term(int outer_sign)
    {
        skip_ws();
        if (eof())
            fail("expected a term");
        Rational coef = rat(outer_sign);
        if (peek() == '-') {
            coef = -coef;
            ++pos_;
            skip_ws();
        }
        if (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            const long num = parse_nat();
            long den = 1;
            if (!eof() && peek() == '/') {
                ++pos_;
                den = parse_nat();
            }
            coef *= rat(num, den);
            skip_ws();
            if (eof() || peek() != '*')
                fail("a scalar is not an element of tau; expected '*' and a basis term");
            ++pos_; // '*'
            skip_ws();
        }
        TauElement atom = parse_atom();
        return atom * alg_.scalar(coef);
    }

    Rational parse_coef()
    {
        skip_ws();
        bool neg = false;
        if (!eof() && peek() == '-') {
            neg = true;
            ++pos_;
        }
        const long num = parse_nat();
        long den = 1;
        if (!eof() && peek() == '/') {
            ++pos_;
            den = parse_nat();
        }
        Rational q = rat(neg ? -num : num, den);
        return q;
    }

    TauElement parse_atom()
    {
        skip_ws();
        const std::size_t start = pos_;
        std::string ident;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            ident += src_[pos_++];
        if (ident.empty())
            fail("expected a basis term");
        skip_ws();

        // K_i / d_i shorthands: 'K1', 'd2', ...
        if (ident.size() > 1 && (ident[0] == 'K' || ident[0] == 'd') &&
            std::isdigit(static_cast<unsigned char>(ident[1]))) {
            long idx = 0;
            for (std::size_t t = 1; t < ident.size(); ++t) {
                if (!std::isdigit(static_cast<unsigned char>(ident[t])))
                    fail_at(start, "malformed K_i/d_i index");
                idx = idx * 10 + (ident[t] - '0');
            }
            if (idx < 1 || idx > alg_.n())
                fail_at(start, "index out of range 1.." + std::to_string(alg_.n()));
            return ident[0] == 'K' ? TauElement::central_K(alg_, static_cast<int>(idx - 1))
                                   : TauElement::derivation_d(alg_, static_cast<int>(idx - 1));
        }

        if (ident == "K" && !eof() && peek() == '[') {
            ++pos_;
            skip_ws();
            expect('(');
            std::vector<CycScalar> u;
            u.push_back(alg_.scalar(parse_coef()));
            while (peek_is(','))
                u.push_back(alg_.scalar((++pos_, parse_coef())));
            expect(')');
            skip_ws();
            expect(',');
            skip_ws();
            expect('(');
            LatticeVector r = parse_int_list();
            expect(')');
            skip_ws();
            expect(']');
            if (static_cast<int>(u.size()) != alg_.n() || r.size() != alg_.n())
                fail_at(start, "K[u,r] needs two length-" + std::to_string(alg_.n()) +
                                   " tuples");
            try {
                return TauElement::central(alg_, u, r);
            } catch (const std::domain_error& e) {
                fail_at(start, e.what());
            }
        }

        if (ident == "h" && !eof() && peek() == '[') {
            ++pos_;
            LatticeVector r = parse_int_list();
            expect(']');
            if (r.size() != alg_.n())
                fail_at(start, "h[r] needs a length-" + std::to_string(alg_.n()) + " degree");
            try {
                return TauElement::hamiltonian(alg_, r);
            } catch (const std::domain_error& e) {
                fail_at(start, e.what());
            }
        }

        if (!eof() && peek() == '(') {
            if (!alg_.lie().has_label(ident))
                fail_at(start, "unknown basis label '" + ident + "'");
            ++pos_;
            LatticeVector r = parse_int_list();
            expect(')');
            if (r.size() != alg_.n())
                fail_at(start, "loop degree needs " + std::to_string(alg_.n()) + " entries");
            try {
                return TauElement::loop(
                    alg_, GElement::basis(alg_.lie().index_of(ident), alg_.field()), r);
            } catch (const std::domain_error& e) {
                fail_at(start, e.what());
            }
        }

        fail_at(start, "unrecognized term '" + ident + "'");
    }

    LatticeVector parse_int_list()
    {
        std::vector<long> v;
        v.push_back(parse_int());
        while (peek_is(',')) {
            ++pos_;
            v.push_back(parse_int());
        }
        return LatticeVector(std::move(v));
    }

    long parse_int()
    {
        skip_ws();
        bool neg = false;
        if (!eof() && peek() == '-') {
            neg = true;
            ++pos_;
        }
        const long n = parse_nat();
        return neg ? -n : n;
    }

    long parse_nat()
    {
        skip_ws();
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected a number");
        long n = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
            n = n * 10 + (src_[pos_++] - '0');
        return n;
    }

    void expect(char c)
    {
        skip_ws();
        if (eof() || peek() != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool peek_is(char c)
    {
        skip_ws();
        return !eof() && peek() == c;
    }

    char peek() const { return src_[pos_]; }
    bool eof() const { return pos_ >= src_.size(); }
    void skip_ws()
    {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek())))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }
    [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const
    {
        throw ParseError(pos, msg);
    }

    const TauAlgebra& alg_;
    std::string src_;
    std::size_t pos_;
};

inline TauElement parse_element(const TauAlgebra& alg, const std::string& src)
{
    return ExprParser(alg, src).parse();
}

/// "  ^-- message" caret diagnostic for a parse failure.
inline std::string caret_diagnostic(const std::string& src, const ParseError& e)
{
    std::string out = src + "\n";
    out.append(e.pos(), ' ');
    out += "^ ";
    out += e.what();
    return out;
}

} // namespace healie
