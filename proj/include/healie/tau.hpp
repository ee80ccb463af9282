#pragma once

#include <map>
#include <vector>

#include "healie/algebra.hpp"

namespace healie {

/// Canonicalize K(u, r) in Z/K(m). For r = 0 the vector u itself is the
/// canonical datum (the degree-0 piece is n-dimensional). For r != 0 the
/// quotient by K(m) = {(u, rbar) = 0} together with the dA relation K(r,r)=0
/// leaves a single basis element K(rbar, r); the surviving coefficient is
/// the orthogonal projection c = (u, rbar)/(rbar, rbar).
inline CycScalar central_canonicalize(const TauAlgebra& alg,
                                      const std::vector<CycScalar>& u,
                                      const LatticeVector& r)
{
    if (!alg.lattice().in_gamma_bar(r))
        throw std::domain_error("central_canonicalize: degree " + r.str() +
                                " is not in GammaBar");
    if (r.is_zero())
        throw std::domain_error("central_canonicalize: degree 0 has no single-line quotient");
    const LatticeVector rbar = alg.lattice().bar(r);
    const CycScalar num = dot(u, rbar, alg.field());
    const long long den = dot(rbar, rbar);
    return num * rat(1, static_cast<long>(den));
}

/// An element of tau = LT (+) Z/K(m) (+) H_n(m), stored in canonical form:
///   - loop terms merged by degree, each g-part inside its eigenspace;
///   - nonzero-degree central terms as one coefficient on K(rbar, r);
///   - degree-0 central and derivation parts as coefficient vectors on
///     K_1..K_n and d_1..d_n;
///   - nonzero-degree derivations as coefficients on h_r (Hamiltonian only).
/// No zero coefficients are stored, so equality is map equality.
class TauElement {
public:
    TauElement() = default;

    // --- constructors for the generating set -------------------------------

    /// x tensor t^r; requires x in g(rbar).
    static TauElement loop(const TauAlgebra& alg, const GElement& x, const LatticeVector& r)
    {
        if (r.size() != alg.n())
            throw std::domain_error("loop term: degree has wrong length");
        if (!alg.in_eigenspace(alg.lattice().residue_class(r), x))
            throw std::domain_error("loop term: g-element is not in the eigenspace g(" +
                                    r.str() + " mod m)");
        TauElement e;
        if (!x.is_zero())
            e.loop_[r] = x;
        return e;
    }

    /// K(u, r): canonicalized central element.
    static TauElement central(const TauAlgebra& alg, const std::vector<CycScalar>& u,
                              const LatticeVector& r)
    {
        TauElement e;
        if (r.is_zero()) {
            e.set_central0(alg, u);
        } else {
            const CycScalar c = central_canonicalize(alg, u, r);
            if (!c.is_zero())
                e.central_[r] = c;
        }
        return e;
    }

    static TauElement central_K(const TauAlgebra& alg, int i)
    {
        std::vector<CycScalar> u = alg.zero_vector();
        u[i] = alg.one();
        return central(alg, u, LatticeVector::zero(alg.n()));
    }

    /// The canonical basis element K(rbar, r) of (Z/K(m))_r, r != 0.
    static TauElement central_basis(const TauAlgebra& alg, const LatticeVector& r)
    {
        return central(alg, alg.field_vector(alg.lattice().bar(r)), r);
    }

    /// h_r = D(rbar, r), r in GammaBar \ {0}.
    static TauElement hamiltonian(const TauAlgebra& alg, const LatticeVector& r)
    {
        if (!alg.lattice().in_gamma_bar(r))
            throw std::domain_error("h_r: degree " + r.str() + " is not in GammaBar");
        if (r.is_zero())
            throw std::domain_error("h_0 is not a basis element; use derivation(u)");
        TauElement e;
        e.ham_[r] = alg.one();
        return e;
    }

    /// D(u, 0) = sum u_i d_i.
    static TauElement derivation(const TauAlgebra& alg, const std::vector<CycScalar>& u)
    {
        TauElement e;
        e.set_deriv0(alg, u);
        return e;
    }

    static TauElement derivation_d(const TauAlgebra& alg, int i)
    {
        std::vector<CycScalar> u = alg.zero_vector();
        u[i] = alg.one();
        return derivation(alg, u);
    }

    // --- accessors ----------------------------------------------------------

    const std::map<LatticeVector, GElement>& loop_part() const { return loop_; }
    const std::vector<CycScalar>& central0() const { return central0_; }
    const std::map<LatticeVector, CycScalar>& central_part() const { return central_; }
    const std::vector<CycScalar>& deriv0() const { return deriv0_; }
    const std::map<LatticeVector, CycScalar>& ham_part() const { return ham_; }

    bool is_zero() const
    {
        return loop_.empty() && central_.empty() && ham_.empty() && central0_.empty() &&
               deriv0_.empty();
    }

    bool operator==(const TauElement& o) const
    {
        return loop_ == o.loop_ && central0_ == o.central0_ && central_ == o.central_ &&
               deriv0_ == o.deriv0_ && ham_ == o.ham_;
    }
    bool operator!=(const TauElement& o) const { return !(*this == o); }

    // --- linear structure ----------------------------------------------------

    TauElement operator+(const TauElement& o) const
    {
        TauElement r(*this);
        for (const auto& [d, x] : o.loop_)
            r.add_loop(d, x);
        for (const auto& [d, c] : o.central_)
            r.add_central(d, c);
        for (const auto& [d, c] : o.ham_)
            r.add_ham(d, c);
        r.central0_ = add_vectors(r.central0_, o.central0_);
        r.deriv0_ = add_vectors(r.deriv0_, o.deriv0_);
        return r;
    }

    TauElement operator-() const
    {
        return *this * CycScalar::from_rational(CycField::get(1), rat(-1));
    }

    TauElement operator-(const TauElement& o) const { return *this + (-o); }

    TauElement operator*(const CycScalar& s) const
    {
        TauElement r;
        if (s.is_zero())
            return r;
        for (const auto& [d, x] : loop_) {
            GElement y = x * s;
            if (!y.is_zero())
                r.loop_[d] = y;
        }
        for (const auto& [d, c] : central_) {
            CycScalar y = c * s;
            if (!y.is_zero())
                r.central_[d] = y;
        }
        for (const auto& [d, c] : ham_) {
            CycScalar y = c * s;
            if (!y.is_zero())
                r.ham_[d] = y;
        }
        r.central0_ = scale_vector(central0_, s);
        r.deriv0_ = scale_vector(deriv0_, s);
        return r;
    }

    // --- raw mutation (internal to the bracket implementation) ---------------

    void add_loop(const LatticeVector& d, const GElement& x)
    {
        if (x.is_zero())
            return;
        auto it = loop_.find(d);
        if (it == loop_.end()) {
            loop_[d] = x;
        } else {
            it->second = it->second + x;
            if (it->second.is_zero())
                loop_.erase(it);
        }
    }

    void add_central(const LatticeVector& d, const CycScalar& c)
    {
        if (c.is_zero())
            return;
        auto it = central_.find(d);
        if (it == central_.end()) {
            central_[d] = c;
        } else {
            it->second = it->second + c;
            if (it->second.is_zero())
                central_.erase(it);
        }
    }

    void add_ham(const LatticeVector& d, const CycScalar& c)
    {
        if (c.is_zero())
            return;
        auto it = ham_.find(d);
        if (it == ham_.end()) {
            ham_[d] = c;
        } else {
            it->second = it->second + c;
            if (it->second.is_zero())
                ham_.erase(it);
        }
    }

    void add_central0(const TauAlgebra& alg, int i, const CycScalar& c)
    {
        if (c.is_zero())
            return;
        if (central0_.empty())
            central0_ = alg.zero_vector();
        central0_[i] = central0_[i] + c;
        normalize_vector(central0_);
    }

    void add_deriv0(const TauAlgebra& alg, int i, const CycScalar& c)
    {
        if (c.is_zero())
            return;
        if (deriv0_.empty())
            deriv0_ = alg.zero_vector();
        deriv0_[i] = deriv0_[i] + c;
        normalize_vector(deriv0_);
    }

    void set_central0(const TauAlgebra& alg, const std::vector<CycScalar>& u)
    {
        check_vec(alg, u);
        central0_ = u;
        normalize_vector(central0_);
    }

    void set_deriv0(const TauAlgebra& alg, const std::vector<CycScalar>& u)
    {
        check_vec(alg, u);
        deriv0_ = u;
        normalize_vector(deriv0_);
    }

private:
    static void check_vec(const TauAlgebra& alg, const std::vector<CycScalar>& u)
    {
        if (static_cast<int>(u.size()) != alg.n())
            throw std::domain_error("coefficient vector has wrong length");
    }

    // empty vector = zero; collapse all-zero vectors to empty for canonical form
    static void normalize_vector(std::vector<CycScalar>& v)
    {
        for (const auto& c : v)
            if (!c.is_zero())
                return;
        v.clear();
    }

    static std::vector<CycScalar> add_vectors(const std::vector<CycScalar>& a,
                                              const std::vector<CycScalar>& b)
    {
        if (a.empty())
            return b;
        if (b.empty())
            return a;
        std::vector<CycScalar> r(a);
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = r[i] + b[i];
        normalize_vector(r);
        return r;
    }

    static std::vector<CycScalar> scale_vector(const std::vector<CycScalar>& a,
                                               const CycScalar& s)
    {
        if (a.empty())
            return a;
        std::vector<CycScalar> r(a);
        for (auto& c : r)
            c = c * s;
        normalize_vector(r);
        return r;
    }

    std::map<LatticeVector, GElement> loop_;
    std::vector<CycScalar> central0_;
    std::map<LatticeVector, CycScalar> central_;
    std::vector<CycScalar> deriv0_;
    std::map<LatticeVector, CycScalar> ham_;
};

/// Test hook for the acceptance negative controls; the default is the
/// faithful bracket.
struct BracketOptions {
    bool cocycle_2_3 = true; // the (u,s)(v,r)K(r,r+s) term of the D-D bracket
};

namespace detail {

// [D(u,p), K at degree s with vector v] per the central-action formula:
// (u,s) K(v, p+s) + (u,v) K(p, p+s). Emits into out, canonicalized.
inline void deriv_on_central(const TauAlgebra& alg, TauElement& out, const CycScalar& sign,
                             const std::vector<CycScalar>& u, const LatticeVector& p,
                             const std::vector<CycScalar>& v, const LatticeVector& s)
{
    const LatticeVector t = p + s;
    const CycScalar c1 = dot(u, s, alg.field());
    const CycScalar c2 = dot(u, v, alg.field());
    std::vector<CycScalar> w = alg.zero_vector();
    bool any = false;
    if (!c1.is_zero()) {
        for (int i = 0; i < alg.n(); ++i)
            w[i] = w[i] + c1 * v[i];
        any = true;
    }
    if (!c2.is_zero()) {
        for (int i = 0; i < alg.n(); ++i)
            w[i] = w[i] + c2 * alg.scalar(p[i]);
        any = true;
    }
    if (!any)
        return;
    if (t.is_zero()) {
        for (int i = 0; i < alg.n(); ++i)
            out.add_central0(alg, i, sign * w[i]);
    } else {
        out.add_central(t, sign * central_canonicalize(alg, w, t));
    }
}

// Iterate over the derivation part of a as (u, degree) pairs: the degree-0
// block D(u,0) plus each Hamiltonian coefficient c*h_r = D(c*rbar, r).
template <typename F>
inline void for_each_derivation(const TauAlgebra& alg, const TauElement& a, F&& fn)
{
    if (!a.deriv0().empty())
        fn(a.deriv0(), LatticeVector::zero(alg.n()));
    for (const auto& [r, c] : a.ham_part()) {
        std::vector<CycScalar> u = alg.zero_vector();
        const LatticeVector rbar = alg.lattice().bar(r);
        for (int i = 0; i < alg.n(); ++i)
            u[i] = c * alg.scalar(rbar[i]);
        fn(u, r);
    }
}

// Iterate over the central part of a as (v, degree) pairs.
template <typename F>
inline void for_each_central(const TauAlgebra& alg, const TauElement& a, F&& fn)
{
    if (!a.central0().empty())
        fn(a.central0(), LatticeVector::zero(alg.n()));
    for (const auto& [s, c] : a.central_part()) {
        std::vector<CycScalar> v = alg.zero_vector();
        const LatticeVector sbar = alg.lattice().bar(s);
        for (int i = 0; i < alg.n(); ++i)
            v[i] = c * alg.scalar(sbar[i]);
        fn(v, s);
    }
}

} // namespace detail

/// The full bracket of tau: the multiloop bracket with its central
/// extension, the derivation action on loops and on Z, and the Hamiltonian
/// bracket with its K-valued correction, all passed through the Z/K(m)
/// canonicalization.
inline TauElement tau_bracket(const TauAlgebra& alg, const TauElement& a, const TauElement& b,
                              const BracketOptions& opts = {})
{
    TauElement out;
    const auto& lat = alg.lattice();
    const auto& f = alg.field();

    // loop x loop: [x(p), y(q)] = [x,y](p+q) + (x|y) K(p, p+q)
    for (const auto& [p, x] : a.loop_part())
        for (const auto& [q, y] : b.loop_part()) {
            const LatticeVector t = p + q;
            out.add_loop(t, alg.lie().bracket(x, y));
            const CycScalar xy = alg.lie().form(x, y, f);
            if (!xy.is_zero()) {
                if (!lat.in_gamma_bar(t))
                    throw std::logic_error(
                        "loop bracket produced a central term outside GammaBar; "
                        "the form/automorphism tables are inconsistent");
                if (t.is_zero()) {
                    for (int i = 0; i < alg.n(); ++i)
                        out.add_central0(alg, i, xy * alg.scalar(p[i]));
                } else {
                    std::vector<CycScalar> u = alg.zero_vector();
                    for (int i = 0; i < alg.n(); ++i)
                        u[i] = xy * alg.scalar(p[i]);
                    out.add_central(t, central_canonicalize(alg, u, t));
                }
            }
        }

    // derivation x loop and loop x derivation: [D(u,r), x(s)] = (u,s) x(r+s)
    detail::for_each_derivation(alg, a, [&](const std::vector<CycScalar>& u,
                                            const LatticeVector& r) {
        for (const auto& [s, x] : b.loop_part()) {
            const CycScalar c = dot(u, s, f);
            if (!c.is_zero())
                out.add_loop(r + s, x * c);
        }
    });
    detail::for_each_derivation(alg, b, [&](const std::vector<CycScalar>& u,
                                            const LatticeVector& r) {
        for (const auto& [s, x] : a.loop_part()) {
            const CycScalar c = dot(u, s, f);
            if (!c.is_zero())
                out.add_loop(r + s, x * (-c));
        }
    });

    // derivation x central and central x derivation (the Z-action)
    const CycScalar plus = alg.one();
    const CycScalar minus = -alg.one();
    detail::for_each_derivation(alg, a, [&](const std::vector<CycScalar>& u,
                                            const LatticeVector& r) {
        detail::for_each_central(alg, b, [&](const std::vector<CycScalar>& v,
                                             const LatticeVector& s) {
            detail::deriv_on_central(alg, out, plus, u, r, v, s);
        });
    });
    detail::for_each_derivation(alg, b, [&](const std::vector<CycScalar>& u,
                                            const LatticeVector& r) {
        detail::for_each_central(alg, a, [&](const std::vector<CycScalar>& v,
                                             const LatticeVector& s) {
            detail::deriv_on_central(alg, out, minus, u, r, v, s);
        });
    });

    // derivation x derivation:
    // [D(u,r), D(v,s)] = D(w, r+s) + (u,s)(v,r) K(r, r+s), w = (u,s)v - (v,r)u.
    // On the representable set w is always a multiple of the Hamiltonian
    // datum at degree r+s (or a degree-0 vector); see the per-case emitters.
    detail::for_each_derivation(alg, a, [&](const std::vector<CycScalar>& u,
                                            const LatticeVector& r) {
        detail::for_each_derivation(alg, b, [&](const std::vector<CycScalar>& v,
                                                const LatticeVector& s) {
            const CycScalar us = dot(u, s, f);
            const CycScalar vr = dot(v, r, f);
            const LatticeVector t = r + s;
            // w = (u,s) v - (v,r) u
            std::vector<CycScalar> w = alg.zero_vector();
            bool wzero = true;
            for (int i = 0; i < alg.n(); ++i) {
                w[i] = us * v[i] - vr * u[i];
                if (!w[i].is_zero())
                    wzero = false;
            }
            if (!wzero) {
                if (t.is_zero()) {
                    for (int i = 0; i < alg.n(); ++i)
                        out.add_deriv0(alg, i, w[i]);
                } else {
                    // Hamiltonian inputs keep the output Hamiltonian:
                    // w must be a scalar multiple of bar(t).
                    const LatticeVector tbar = lat.bar(t);
                    int pivot = -1;
                    for (int i = 0; i < alg.n(); ++i)
                        if (tbar[i] != 0) {
                            pivot = i;
                            break;
                        }
                    if (pivot < 0)
                        throw std::logic_error("derivation bracket: bar(t) vanished for t != 0");
                    const CycScalar lambda = w[pivot] * rat(1, tbar[pivot]);
                    for (int i = 0; i < alg.n(); ++i)
                        if (w[i] != lambda * alg.scalar(tbar[i]))
                            throw std::logic_error(
                                "derivation bracket left the Hamiltonian subalgebra");
                    out.add_ham(t, lambda);
                }
            }
            if (opts.cocycle_2_3) {
                const CycScalar coc = us * vr;
                if (!coc.is_zero()) {
                    if (t.is_zero()) {
                        for (int i = 0; i < alg.n(); ++i)
                            out.add_central0(alg, i, coc * alg.scalar(r[i]));
                    } else {
                        std::vector<CycScalar> kv = alg.zero_vector();
                        for (int i = 0; i < alg.n(); ++i)
                            kv[i] = coc * alg.scalar(r[i]);
                        out.add_central(t, central_canonicalize(alg, kv, t));
                    }
                }
            }
        });
    });

    // central terms are central: all remaining cases vanish.
    return out;
}

/// The EALA bilinear form:
///   (x(r)|y(s)) = delta_{r,-s} (x|y)
///   (h_r | K(sbar,s)) = delta_{r,-s} (rbar, sbar)
///   (d_i | K_j) = delta_{ij}
/// and zero on every unlisted pair, extended bilinearly (symmetric).
inline CycScalar bilinear_form(const TauAlgebra& alg, const TauElement& a, const TauElement& b)
{
    const auto& f = alg.field();
    const auto& lat = alg.lattice();
    CycScalar s = CycScalar::zero(f);

    for (const auto& [r, x] : a.loop_part()) {
        auto it = b.loop_part().find(-r);
        if (it != b.loop_part().end())
            s = s + alg.lie().form(x, it->second, f);
    }

    auto ham_central = [&](const TauElement& u, const TauElement& v) {
        for (const auto& [r, hc] : u.ham_part()) {
            auto it = v.central_part().find(-r);
            if (it == v.central_part().end())
                continue;
            const LatticeVector rbar = lat.bar(r);
            const LatticeVector sbar = lat.bar(-r);
            s = s + hc * it->second * rat(static_cast<long>(dot(rbar, sbar)));
        }
    };
    ham_central(a, b);
    ham_central(b, a);

    if (!a.deriv0().empty() && !b.central0().empty())
        s = s + dot(a.deriv0(), b.central0(), f);
    if (!b.deriv0().empty() && !a.central0().empty())
        s = s + dot(b.deriv0(), a.central0(), f);

    return s;
}

/// [[a,b],c] + [[b,c],a] + [[c,a],b]; zero iff the bracket closes.
inline TauElement jacobi_residual(const TauAlgebra& alg, const TauElement& a,
                                  const TauElement& b, const TauElement& c,
                                  const BracketOptions& opts = {})
{
    TauElement r = tau_bracket(alg, tau_bracket(alg, a, b, opts), c, opts);
    r = r + tau_bracket(alg, tau_bracket(alg, b, c, opts), a, opts);
    r = r + tau_bracket(alg, tau_bracket(alg, c, a, opts), b, opts);
    return r;
}

// ---------------------------------------------------------------------------
// Full-toroidal carrier
// ---------------------------------------------------------------------------

/// An element of the ambient full toroidal algebra: arbitrary loop terms,
/// general central symbols K(u,r) canonical modulo dA only, and general
/// derivations D(u,r). This is the transient home for GL(n,Z)-twisted
/// images, which need not stay inside tau.
class FtElement {
public:
    FtElement() = default;

    static FtElement embed(const TauAlgebra& alg, const TauElement& a)
    {
        FtElement e;
        for (const auto& [d, x] : a.loop_part())
            e.add_loop(d, x);
        if (!a.central0().empty())
            e.add_central(alg, LatticeVector::zero(alg.n()), a.central0());
        detail::for_each_central(alg, a, [&](const std::vector<CycScalar>& v,
                                             const LatticeVector& s) {
            if (!s.is_zero())
                e.add_central(alg, s, v);
        });
        if (!a.deriv0().empty())
            e.add_deriv(alg, LatticeVector::zero(alg.n()), a.deriv0());
        detail::for_each_derivation(alg, a, [&](const std::vector<CycScalar>& u,
                                                const LatticeVector& r) {
            if (!r.is_zero())
                e.add_deriv(alg, r, u);
        });
        return e;
    }

    const std::map<LatticeVector, GElement>& loop_part() const { return loop_; }
    const std::map<LatticeVector, std::vector<CycScalar>>& central_part() const
    {
        return central_;
    }
    const std::map<LatticeVector, std::vector<CycScalar>>& deriv_part() const
    {
        return deriv_;
    }

    bool is_zero() const { return loop_.empty() && central_.empty() && deriv_.empty(); }

    bool operator==(const FtElement& o) const
    {
        return loop_ == o.loop_ && central_ == o.central_ && deriv_ == o.deriv_;
    }
    bool operator!=(const FtElement& o) const { return !(*this == o); }

    FtElement operator+(const FtElement& o) const
    {
        FtElement r(*this);
        for (const auto& [d, x] : o.loop_)
            r.add_loop(d, x);
        for (const auto& [d, v] : o.central_)
            r.add_raw(r.central_, d, v);
        for (const auto& [d, v] : o.deriv_)
            r.add_raw(r.deriv_, d, v);
        return r;
    }

    FtElement operator-(const FtElement& o) const
    {
        FtElement r(*this);
        for (const auto& [d, x] : o.loop_)
            r.add_loop(d, -x);
        for (const auto& [d, v] : o.central_) {
            std::vector<CycScalar> neg(v);
            for (auto& c : neg)
                c = -c;
            r.add_raw(r.central_, d, neg);
        }
        for (const auto& [d, v] : o.deriv_) {
            std::vector<CycScalar> neg(v);
            for (auto& c : neg)
                c = -c;
            r.add_raw(r.deriv_, d, neg);
        }
        return r;
    }

    void add_loop(const LatticeVector& d, const GElement& x)
    {
        if (x.is_zero())
            return;
        auto it = loop_.find(d);
        if (it == loop_.end()) {
            loop_[d] = x;
        } else {
            it->second = it->second + x;
            if (it->second.is_zero())
                loop_.erase(it);
        }
    }

    /// K(u, r) modulo dA: at r != 0 the component of u along r is dropped.
    void add_central(const TauAlgebra& alg, const LatticeVector& r, std::vector<CycScalar> u)
    {
        if (!r.is_zero()) {
            const CycScalar c =
                dot(u, r, alg.field()) * rat(1, static_cast<long>(dot(r, r)));
            for (int i = 0; i < alg.n(); ++i)
                u[i] = u[i] - c * alg.scalar(r[i]);
        }
        add_raw(central_, r, u);
    }

    void add_deriv(const TauAlgebra& alg, const LatticeVector& r, const std::vector<CycScalar>& u)
    {
        (void)alg;
        add_raw(deriv_, r, u);
    }

private:
    static void add_raw(std::map<LatticeVector, std::vector<CycScalar>>& dst,
                        const LatticeVector& d, const std::vector<CycScalar>& v)
    {
        bool zero = true;
        for (const auto& c : v)
            if (!c.is_zero())
                zero = false;
        if (zero)
            return;
        auto it = dst.find(d);
        if (it == dst.end()) {
            dst[d] = v;
        } else {
            bool allzero = true;
            for (std::size_t i = 0; i < v.size(); ++i) {
                it->second[i] = it->second[i] + v[i];
                if (!it->second[i].is_zero())
                    allzero = false;
            }
            if (allzero)
                dst.erase(it);
        }
    }

    std::map<LatticeVector, GElement> loop_;
    std::map<LatticeVector, std::vector<CycScalar>> central_;
    std::map<LatticeVector, std::vector<CycScalar>> deriv_;
};

/// The carrier bracket: Eqs. of the full toroidal algebra with dA-canonical
/// central output. Brackets of embedded tau elements reproduce tau_bracket
/// after Z/K(m) canonicalization.
inline FtElement ft_bracket(const TauAlgebra& alg, const FtElement& a, const FtElement& b)
{
    FtElement out;
    const auto& f = alg.field();

    for (const auto& [p, x] : a.loop_part())
        for (const auto& [q, y] : b.loop_part()) {
            const LatticeVector t = p + q;
            out.add_loop(t, alg.lie().bracket(x, y));
            const CycScalar xy = alg.lie().form(x, y, f);
            if (!xy.is_zero()) {
                std::vector<CycScalar> u = alg.zero_vector();
                for (int i = 0; i < alg.n(); ++i)
                    u[i] = xy * alg.scalar(p[i]);
                out.add_central(alg, t, u);
            }
        }

    auto deriv_loop = [&](const FtElement& da, const FtElement& lb, bool negate) {
        for (const auto& [r, u] : da.deriv_part())
            for (const auto& [s, x] : lb.loop_part()) {
                const CycScalar c = dot(u, s, f);
                if (!c.is_zero())
                    out.add_loop(r + s, x * (negate ? -c : c));
            }
    };
    deriv_loop(a, b, false);
    deriv_loop(b, a, true);

    auto deriv_central = [&](const FtElement& da, const FtElement& cb, bool negate) {
        for (const auto& [r, u] : da.deriv_part())
            for (const auto& [s, v] : cb.central_part()) {
                const CycScalar c1 = dot(u, s, f);
                const CycScalar c2 = dot(u, v, f);
                std::vector<CycScalar> w = alg.zero_vector();
                for (int i = 0; i < alg.n(); ++i) {
                    w[i] = c1 * v[i] + c2 * alg.scalar(r[i]);
                    if (negate)
                        w[i] = -w[i];
                }
                out.add_central(alg, r + s, w);
            }
    };
    deriv_central(a, b, false);
    deriv_central(b, a, true);

    for (const auto& [r, u] : a.deriv_part())
        for (const auto& [s, v] : b.deriv_part()) {
            const CycScalar us = dot(u, s, f);
            const CycScalar vr = dot(v, r, f);
            std::vector<CycScalar> w = alg.zero_vector();
            for (int i = 0; i < alg.n(); ++i)
                w[i] = us * v[i] - vr * u[i];
            out.add_deriv(alg, r + s, w);
            const CycScalar coc = us * vr;
            if (!coc.is_zero()) {
                std::vector<CycScalar> kv = alg.zero_vector();
                for (int i = 0; i < alg.n(); ++i)
                    kv[i] = coc * alg.scalar(r[i]);
                out.add_central(alg, r + s, kv);
            }
        }

    return out;
}

/// Re-canonicalize a carrier element into tau. Errors when a derivation term
/// is not Hamiltonian or a central/derivation degree escapes GammaBar.
inline TauElement ft_to_tau(const TauAlgebra& alg, const FtElement& e)
{
    TauElement out;
    for (const auto& [d, x] : e.loop_part()) {
        if (!alg.in_eigenspace(alg.lattice().residue_class(d), x))
            throw std::domain_error("carrier element: loop term at " + d.str() +
                                    " is outside its eigenspace");
        out.add_loop(d, x);
    }
    for (const auto& [d, v] : e.central_part()) {
        if (d.is_zero()) {
            for (int i = 0; i < alg.n(); ++i)
                out.add_central0(alg, i, v[i]);
        } else {
            if (!alg.lattice().in_gamma_bar(d))
                throw std::domain_error("carrier element: central degree " + d.str() +
                                        " is outside GammaBar");
            out.add_central(d, central_canonicalize(alg, v, d));
        }
    }
    for (const auto& [d, u] : e.deriv_part()) {
        if (d.is_zero()) {
            for (int i = 0; i < alg.n(); ++i)
                out.add_deriv0(alg, i, u[i]);
        } else {
            if (!alg.lattice().in_gamma_bar(d))
                throw std::domain_error("carrier element: derivation degree " + d.str() +
                                        " is outside GammaBar");
            const LatticeVector dbar = alg.lattice().bar(d);
            int pivot = -1;
            for (int i = 0; i < alg.n(); ++i)
                if (dbar[i] != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0)
                throw std::logic_error("ft_to_tau: bar(d) vanished for d != 0");
            const CycScalar lambda = u[pivot] * rat(1, dbar[pivot]);
            for (int i = 0; i < alg.n(); ++i)
                if (u[i] != lambda * alg.scalar(dbar[i]))
                    throw std::domain_error(
                        "carrier element: derivation at " + d.str() +
                        " is not Hamiltonian and has no tau representative");
            out.add_ham(d, lambda);
        }
    }
    return out;
}

} // namespace healie
