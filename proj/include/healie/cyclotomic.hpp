#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <vector>

#include "healie/rational.hpp"

namespace healie {

namespace detail {

// Dense polynomials over Q, little-endian coefficient order.
using QPoly = std::vector<Rational>;

inline void poly_trim(QPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

inline int poly_deg(const QPoly& p)
{
    return static_cast<int>(p.size()) - 1; // deg(0) = -1
}

inline QPoly poly_mul(const QPoly& a, const QPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    poly_trim(r);
    return r;
}

// Long division; returns {quotient, remainder}. Divisor must be nonzero.
inline std::pair<QPoly, QPoly> poly_divmod(QPoly a, const QPoly& b)
{
    poly_trim(a);
    if (b.empty())
        throw std::domain_error("poly_divmod: division by zero polynomial");
    QPoly q;
    const Rational lead = b.back();
    while (poly_deg(a) >= poly_deg(b)) {
        const int shift = poly_deg(a) - poly_deg(b);
        const Rational c = a.back() / lead;
        if (static_cast<int>(q.size()) < shift + 1)
            q.resize(shift + 1, Rational(0));
        q[shift] += c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] -= c * b[i];
        poly_trim(a);
    }
    poly_trim(q);
    return {q, a};
}

} // namespace detail

/// The cyclotomic field Q(zeta_N). Holds the N-th cyclotomic polynomial
/// Phi_N, computed once at construction via x^N - 1 = prod_{d|N} Phi_d.
/// Instances are immutable and shared (see CycField::get).
class CycField {
public:
    explicit CycField(long N) : n_(N)
    {
        if (N < 1)
            throw ConfigError("CycField: N must be positive");
        // Ascend over divisors; each Phi_d is (x^d - 1) / prod of smaller ones.
        std::map<long, detail::QPoly> cache;
        for (long d = 1; d <= N; ++d) {
            if (N % d != 0)
                continue;
            detail::QPoly xd(d + 1, Rational(0));
            xd[0] = -1;
            xd[d] = 1;
            for (const auto& [e, phi_e] : cache) {
                if (d % e != 0)
                    continue;
                auto [q, r] = detail::poly_divmod(xd, phi_e);
                if (!r.empty())
                    throw std::logic_error("cyclotomic recursion left a remainder");
                xd = q;
            }
            cache[d] = xd;
        }
        phi_ = cache[N];
        deg_ = detail::poly_deg(phi_);
    }

    long order() const { return n_; }             // N
    long degree() const { return deg_; }          // phi(N) = [Q(zeta_N):Q]
    const detail::QPoly& modulus() const { return phi_; }

    /// Shared flyweight per N. Scalars over the same N compare/operate freely.
    static std::shared_ptr<const CycField> get(long N)
    {
        static std::mutex mtx;
        static std::map<long, std::shared_ptr<const CycField>> registry;
        std::lock_guard<std::mutex> lock(mtx);
        auto it = registry.find(N);
        if (it == registry.end())
            it = registry.emplace(N, std::make_shared<const CycField>(N)).first;
        return it->second;
    }

private:
    long n_;
    long deg_;
    detail::QPoly phi_;
};

using FieldPtr = std::shared_ptr<const CycField>;

/// An element of Q(zeta_N): a polynomial in zeta_N of degree < phi(N),
/// stored sparsely with no explicit zeros. Two scalars are equal iff their
/// canonical coefficient maps are identical. Immutable value semantics.
class CycScalar {
public:
    CycScalar() : f_(CycField::get(1)) {}

    static CycScalar from_rational(const FieldPtr& f, const Rational& q)
    {
        CycScalar s;
        s.f_ = f;
        if (q != 0)
            s.c_[0] = q;
        return s;
    }

    static CycScalar zero(const FieldPtr& f) { return from_rational(f, Rational(0)); }
    static CycScalar one(const FieldPtr& f) { return from_rational(f, Rational(1)); }

    /// zeta_N^e, e taken mod N, reduced against Phi_N.
    static CycScalar zeta_pow(const FieldPtr& f, long e)
    {
        const long N = f->order();
        e %= N;
        if (e < 0)
            e += N;
        detail::QPoly mono(e + 1, Rational(0));
        mono[e] = 1;
        return from_poly(f, std::move(mono));
    }

    const FieldPtr& field() const { return f_; }
    const std::map<long, Rational>& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    bool is_rational() const
    {
        return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0);
    }
    /// Requires is_rational().
    Rational to_rational() const
    {
        if (c_.empty())
            return Rational(0);
        if (!is_rational())
            throw std::domain_error("CycScalar::to_rational: not in the rational subfield");
        return c_.begin()->second;
    }

    CycScalar operator-() const
    {
        CycScalar r(*this);
        for (auto& [e, q] : r.c_)
            q = -q;
        return r;
    }

    CycScalar operator+(const CycScalar& o) const
    {
        auto [f, a, b] = aligned(*this, o);
        for (const auto& [e, q] : b) {
            auto it = a.find(e);
            if (it == a.end()) {
                a.emplace(e, q);
            } else {
                it->second += q;
                if (it->second == 0)
                    a.erase(it);
            }
        }
        CycScalar r;
        r.f_ = f;
        r.c_ = std::move(a);
        return r;
    }

    CycScalar operator-(const CycScalar& o) const { return *this + (-o); }

    CycScalar operator*(const CycScalar& o) const
    {
        auto [f, a, b] = aligned(*this, o);
        if (a.empty() || b.empty())
            return zero(f);
        detail::QPoly prod(static_cast<std::size_t>(a.rbegin()->first + b.rbegin()->first) + 1,
                           Rational(0));
        for (const auto& [ea, qa] : a)
            for (const auto& [eb, qb] : b)
                prod[ea + eb] += qa * qb;
        return from_poly(f, std::move(prod));
    }

    CycScalar operator*(const Rational& q) const
    {
        return *this * from_rational(f_, q);
    }

    /// Multiplicative inverse via extended gcd with Phi_N (irreducible, so
    /// the gcd is a nonzero constant).
    CycScalar inverse() const
    {
        if (is_zero())
            throw std::domain_error("CycScalar::inverse: division by zero");
        detail::QPoly r0 = f_->modulus();
        detail::QPoly r1 = densify();
        detail::QPoly s0;               // coefficient of *this in r0
        detail::QPoly s1 = {Rational(1)};
        while (detail::poly_deg(r1) > 0) {
            auto [q, r2] = detail::poly_divmod(r0, r1);
            detail::QPoly s2 = s0;
            detail::QPoly qs1 = detail::poly_mul(q, s1);
            if (s2.size() < qs1.size())
                s2.resize(qs1.size(), Rational(0));
            for (std::size_t i = 0; i < qs1.size(); ++i)
                s2[i] -= qs1[i];
            detail::poly_trim(s2);
            r0 = std::move(r1);
            r1 = std::move(r2);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r1.empty())
            throw std::logic_error("CycScalar::inverse: gcd with irreducible modulus vanished");
        const Rational g = r1[0];
        for (auto& q : s1)
            q /= g;
        return from_poly(f_, std::move(s1));
    }

    CycScalar pow(long e) const
    {
        if (e < 0)
            return inverse().pow(-e);
        CycScalar base = *this;
        CycScalar r = one(f_);
        while (e > 0) {
            if (e & 1)
                r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    bool operator==(const CycScalar& o) const
    {
        if (f_->order() == o.f_->order())
            return c_ == o.c_;
        // Cross-field equality only through the rational subfield.
        if (is_rational() && o.is_rational())
            return to_rational() == o.to_rational();
        return false;
    }
    bool operator!=(const CycScalar& o) const { return !(*this == o); }

    /// Total order for use as a container key; not a numeric order.
    /// Consistent with equality across fields: rationals (over any N) compare
    /// by value and precede every non-rational; non-rationals compare by
    /// (N, coefficient map).
    bool operator<(const CycScalar& o) const
    {
        const bool ra = is_rational(), rb = o.is_rational();
        if (ra != rb)
            return ra;
        if (ra)
            return to_rational() < o.to_rational();
        if (f_->order() != o.f_->order())
            return f_->order() < o.f_->order();
        auto it = c_.begin();
        auto jt = o.c_.begin();
        for (; it != c_.end() && jt != o.c_.end(); ++it, ++jt) {
            if (it->first != jt->first)
                return it->first < jt->first;
            const int cmpv = cmp(it->second, jt->second);
            if (cmpv != 0)
                return cmpv < 0;
        }
        return it == c_.end() && jt != o.c_.end();
    }

    std::string str() const
    {
        if (c_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, q] : c_) {
            if (!first)
                os << " + ";
            first = false;
            os << rational_str(q);
            if (e > 0)
                os << "*z^" << e;
        }
        return os.str();
    }

private:
    static CycScalar from_poly(const FieldPtr& f, detail::QPoly p)
    {
        auto [q, r] = detail::poly_divmod(std::move(p), f->modulus());
        (void)q;
        CycScalar s;
        s.f_ = f;
        for (std::size_t i = 0; i < r.size(); ++i)
            if (r[i] != 0)
                s.c_[static_cast<long>(i)] = r[i];
        return s;
    }

    detail::QPoly densify() const
    {
        detail::QPoly p;
        if (!c_.empty()) {
            p.assign(static_cast<std::size_t>(c_.rbegin()->first) + 1, Rational(0));
            for (const auto& [e, q] : c_)
                p[e] = q;
        }
        return p;
    }

    // Align the operands over a common field. Only the trivial field N=1
    // (the rational subfield) is promoted; any other mismatch is a
    // configuration error.
    static std::tuple<FieldPtr, std::map<long, Rational>, std::map<long, Rational>>
    aligned(const CycScalar& a, const CycScalar& b)
    {
        if (a.f_->order() == b.f_->order())
            return {a.f_, a.c_, b.c_};
        if (a.f_->order() == 1)
            return {b.f_, a.c_, b.c_};
        if (b.f_->order() == 1)
            return {a.f_, a.c_, b.c_};
        throw ConfigError("CycScalar: operands over mismatched cyclotomic fields N=" +
                          std::to_string(a.f_->order()) + " and N=" +
                          std::to_string(b.f_->order()));
    }

    FieldPtr f_;
    std::map<long, Rational> c_;
};

inline CycScalar operator*(const Rational& q, const CycScalar& s) { return s * q; }

/// Eigenvalue constructor: zeta_i^{r} where zeta_i = zeta_N^{N/m_i} is the
/// configured primitive m_i-th root of unity. Requires m_i | N.
inline CycScalar zeta_power(const FieldPtr& f, long order_mi, long r)
{
    if (order_mi < 1 || f->order() % order_mi != 0)
        throw ConfigError("zeta_power: automorphism order " + std::to_string(order_mi) +
                          " does not divide N=" + std::to_string(f->order()));
    const long step = f->order() / order_mi;
    long e = (r % order_mi) * step;
    return CycScalar::zeta_pow(f, e);
}

} // namespace healie
