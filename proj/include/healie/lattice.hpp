#pragma once

#include <algorithm>
#include <sstream>
#include <vector>

#include "healie/cyclotomic.hpp"
#include "healie/rational.hpp"

namespace healie {

/// A degree vector in Z^n. Comparable (lexicographic) so it can key maps.
class LatticeVector {
public:
    LatticeVector() = default;
    explicit LatticeVector(std::vector<long> entries) : e_(std::move(entries)) {}
    LatticeVector(std::initializer_list<long> entries) : e_(entries) {}

    static LatticeVector zero(int n) { return LatticeVector(std::vector<long>(n, 0)); }
    static LatticeVector unit(int n, int i)
    {
        std::vector<long> v(n, 0);
        v[i] = 1;
        return LatticeVector(std::move(v));
    }

    int size() const { return static_cast<int>(e_.size()); }
    long operator[](int i) const { return e_[i]; }
    long& operator[](int i) { return e_[i]; }
    const std::vector<long>& entries() const { return e_; }

    bool is_zero() const
    {
        return std::all_of(e_.begin(), e_.end(), [](long x) { return x == 0; });
    }

    LatticeVector operator+(const LatticeVector& o) const
    {
        check_len(o);
        LatticeVector r(*this);
        for (int i = 0; i < size(); ++i)
            r.e_[i] += o.e_[i];
        return r;
    }
    LatticeVector operator-(const LatticeVector& o) const
    {
        check_len(o);
        LatticeVector r(*this);
        for (int i = 0; i < size(); ++i)
            r.e_[i] -= o.e_[i];
        return r;
    }
    LatticeVector operator-() const
    {
        LatticeVector r(*this);
        for (auto& x : r.e_)
            x = -x;
        return r;
    }
    LatticeVector operator*(long c) const
    {
        LatticeVector r(*this);
        for (auto& x : r.e_)
            x *= c;
        return r;
    }

    bool operator==(const LatticeVector& o) const { return e_ == o.e_; }
    bool operator!=(const LatticeVector& o) const { return e_ != o.e_; }
    bool operator<(const LatticeVector& o) const { return e_ < o.e_; }

    std::string str() const
    {
        std::ostringstream os;
        os << "(";
        for (int i = 0; i < size(); ++i)
            os << (i ? "," : "") << e_[i];
        os << ")";
        return os.str();
    }

private:
    void check_len(const LatticeVector& o) const
    {
        if (o.size() != size())
            throw std::domain_error("LatticeVector: length mismatch " +
                                    std::to_string(size()) + " vs " +
                                    std::to_string(o.size()));
    }

    std::vector<long> e_;
};

/// The standard bilinear pairing (u,v) on Z^n.
inline long long dot(const LatticeVector& u, const LatticeVector& v)
{
    if (u.size() != v.size())
        throw std::domain_error("dot: length mismatch");
    long long s = 0;
    for (int i = 0; i < u.size(); ++i)
        s += static_cast<long long>(u[i]) * v[i];
    return s;
}

/// (u, v) with a field vector on the left.
inline CycScalar dot(const std::vector<CycScalar>& u, const LatticeVector& v,
                     const FieldPtr& f)
{
    if (static_cast<int>(u.size()) != v.size())
        throw std::domain_error("dot: length mismatch");
    CycScalar s = CycScalar::zero(f);
    for (int i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            s = s + u[i] * rat(v[i]);
    return s;
}

inline CycScalar dot(const std::vector<CycScalar>& u, const std::vector<CycScalar>& v,
                     const FieldPtr& f)
{
    if (u.size() != v.size())
        throw std::domain_error("dot: length mismatch");
    CycScalar s = CycScalar::zero(f);
    for (std::size_t i = 0; i < u.size(); ++i)
        s = s + u[i] * v[i];
    return s;
}

/// The grading data of the session: Z^n with n = 2k even, automorphism
/// orders m = (m_1..m_n), the sublattices GammaBar = (+) m_i Z (all slots),
/// Gamma (slots k and 2k omitted), Gamma_0 = m_k Z (+) m_2k Z, the quotient
/// Lambda = Z^{n-2}/Gamma, and the symplectic bar-twist.
class GradingLattice {
public:
    explicit GradingLattice(std::vector<long> orders) : m_(std::move(orders))
    {
        const int n = static_cast<int>(m_.size());
        if (n < 2 || n % 2 != 0)
            throw ConfigError("GradingLattice: n must be even and >= 2, got " +
                              std::to_string(n));
        for (long mi : m_)
            if (mi < 1)
                throw ConfigError("GradingLattice: automorphism orders must be >= 1");
        n_ = n;
        k_ = n / 2;
    }

    int n() const { return n_; }
    int k() const { return k_; }
    const std::vector<long>& orders() const { return m_; }
    long order(int i) const { return m_[i]; } // 0-based slot

    /// lcm of the orders; the N of the session's coefficient field.
    long field_order() const
    {
        long N = 1;
        for (long mi : m_)
            N = std::lcm(N, mi);
        return N;
    }

    /// bar(s) = (s_{k+1},...,s_{2k}, -s_1,...,-s_k).
    LatticeVector bar(const LatticeVector& s) const
    {
        if (s.size() != n_)
            throw std::domain_error("bar: expected length " + std::to_string(n_));
        std::vector<long> r(n_);
        for (int i = 0; i < k_; ++i) {
            r[i] = s[k_ + i];
            r[k_ + i] = -s[i];
        }
        return LatticeVector(std::move(r));
    }

    std::vector<CycScalar> bar(const std::vector<CycScalar>& s) const
    {
        if (static_cast<int>(s.size()) != n_)
            throw std::domain_error("bar: expected length " + std::to_string(n_));
        std::vector<CycScalar> r(n_);
        for (int i = 0; i < k_; ++i) {
            r[i] = s[k_ + i];
            r[k_ + i] = -s[i];
        }
        return r;
    }

    /// sympl(r,s) = (bar r, s), the standard alternating form.
    long long sympl(const LatticeVector& r, const LatticeVector& s) const
    {
        return dot(bar(r), s);
    }

    bool in_gamma_bar(const LatticeVector& r) const
    {
        if (r.size() != n_)
            throw std::domain_error("in_gamma_bar: expected length " + std::to_string(n_));
        for (int i = 0; i < n_; ++i)
            if (r[i] % m_[i] != 0)
                return false;
        return true;
    }

    /// Gamma lives in Z^{n-2} (slots k and 2k of the ambient lattice omitted).
    bool in_gamma(const LatticeVector& r) const
    {
        if (r.size() != n_ - 2)
            throw std::domain_error("in_gamma: expected length " + std::to_string(n_ - 2));
        const auto mp = m_prime();
        for (int i = 0; i < n_ - 2; ++i)
            if (r[i] % mp[i] != 0)
                return false;
        return true;
    }

    bool in_gamma0(const LatticeVector& r) const
    {
        if (r.size() != 2)
            throw std::domain_error("in_gamma0: expected length 2");
        return r[0] % m_[k_ - 1] == 0 && r[1] % m_[n_ - 1] == 0;
    }

    /// Ambient view of Gamma: length-n vectors with zero k,2k slots and
    /// m_i-divisible remaining slots.
    bool in_gamma_embedded(const LatticeVector& r) const
    {
        if (r.size() != n_)
            throw std::domain_error("in_gamma_embedded: expected length " + std::to_string(n_));
        if (r[k_ - 1] != 0 || r[n_ - 1] != 0)
            return false;
        for (int i = 0; i < n_; ++i)
            if (r[i] % m_[i] != 0)
                return false;
        return true;
    }

    /// Lambda-representative: componentwise least non-negative residues
    /// of an n-2 vector modulo m'.
    LatticeVector coset(const LatticeVector& r) const
    {
        if (r.size() != n_ - 2)
            throw std::domain_error("coset: expected length " + std::to_string(n_ - 2));
        const auto mp = m_prime();
        std::vector<long> c(n_ - 2);
        for (int i = 0; i < n_ - 2; ++i) {
            c[i] = r[i] % mp[i];
            if (c[i] < 0)
                c[i] += mp[i];
        }
        return LatticeVector(std::move(c));
    }

    std::vector<long> m_prime() const
    {
        std::vector<long> mp;
        mp.reserve(n_ - 2);
        for (int i = 0; i < n_; ++i)
            if (i != k_ - 1 && i != n_ - 1)
                mp.push_back(m_[i]);
        return mp;
    }

    /// Insert zeros at slots k and 2k.
    LatticeVector embed(const LatticeVector& r) const
    {
        if (r.size() != n_ - 2)
            throw std::domain_error("embed: expected length " + std::to_string(n_ - 2));
        std::vector<long> v(n_, 0);
        int j = 0;
        for (int i = 0; i < n_; ++i)
            if (i != k_ - 1 && i != n_ - 1)
                v[i] = r[j++];
        return LatticeVector(std::move(v));
    }

    /// Drop slots k and 2k.
    LatticeVector project(const LatticeVector& r) const
    {
        if (r.size() != n_)
            throw std::domain_error("project: expected length " + std::to_string(n_));
        std::vector<long> v;
        v.reserve(n_ - 2);
        for (int i = 0; i < n_; ++i)
            if (i != k_ - 1 && i != n_ - 1)
                v.push_back(r[i]);
        return LatticeVector(std::move(v));
    }

    /// Residue class of r in Z^n / (+) m_i Z, least non-negative entries.
    std::vector<long> residue_class(const LatticeVector& r) const
    {
        if (r.size() != n_)
            throw std::domain_error("residue_class: expected length " + std::to_string(n_));
        std::vector<long> c(n_);
        for (int i = 0; i < n_; ++i) {
            c[i] = r[i] % m_[i];
            if (c[i] < 0)
                c[i] += m_[i];
        }
        return c;
    }

private:
    std::vector<long> m_;
    int n_ = 0;
    int k_ = 0;
};

} // namespace healie
