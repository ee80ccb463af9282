#pragma once

#include <functional>
#include <map>
#include <vector>

#include "healie/lattice.hpp"
#include "healie/simple_lie.hpp"

namespace healie {

/// Dense n x n matrix over the scalar field.
using SpMatrix = std::vector<std::vector<CycScalar>>;

inline SpMatrix sp_zero(int n, const FieldPtr& f)
{
    return SpMatrix(static_cast<std::size_t>(n),
                    std::vector<CycScalar>(static_cast<std::size_t>(n), CycScalar::zero(f)));
}

inline SpMatrix sp_add(const SpMatrix& a, const SpMatrix& b)
{
    SpMatrix r(a);
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r.size(); ++j)
            r[i][j] = r[i][j] + b[i][j];
    return r;
}

inline SpMatrix sp_scale(const SpMatrix& a, const CycScalar& c)
{
    SpMatrix r(a);
    for (auto& row : r)
        for (auto& x : row)
            x = x * c;
    return r;
}

inline SpMatrix sp_mul(const SpMatrix& a, const SpMatrix& b, const FieldPtr& f)
{
    const std::size_t n = a.size();
    SpMatrix r = sp_zero(static_cast<int>(n), f);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < n; ++t) {
            if (a[i][t].is_zero())
                continue;
            for (std::size_t j = 0; j < n; ++j)
                r[i][j] = r[i][j] + a[i][t] * b[t][j];
        }
    return r;
}

inline SpMatrix sp_commutator(const SpMatrix& a, const SpMatrix& b, const FieldPtr& f)
{
    SpMatrix r = sp_mul(a, b, f);
    const SpMatrix s = sp_mul(b, a, f);
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r.size(); ++j)
            r[i][j] = r[i][j] - s[i][j];
    return r;
}

/// M^T J + J M = 0 with J the bar-twist matrix (block (0, I; -I, 0)).
inline bool is_symplectic(const GradingLattice& lat, const SpMatrix& m, const FieldPtr& f)
{
    const int n = lat.n();
    const int k = lat.k();
    // J is the matrix of the bar map: (Jr)_i = r_{k+i}, (Jr)_{k+i} = -r_i.
    auto Jrow = [&](int i, int j) -> long {
        if (i < k)
            return j == i + k ? 1 : 0;
        return j == i - k ? -1 : 0;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CycScalar s = CycScalar::zero(f);
            for (int t = 0; t < n; ++t) {
                // (M^T J)_{ij} = sum_t M_{ti} J_{tj}
                if (Jrow(t, j) != 0)
                    s = s + m[t][i] * rat(Jrow(t, j));
                // (J M)_{ij} = sum_t J_{it} M_{tj}
                if (Jrow(i, t) != 0)
                    s = s + m[t][j] * rat(Jrow(i, t));
            }
            if (!s.is_zero())
                return false;
        }
    return true;
}

/// The rank-one symplectic matrix r^t rbar (column r times row bar(r)).
inline SpMatrix rank_one_sp(const GradingLattice& lat, const LatticeVector& r, const FieldPtr& f)
{
    const LatticeVector rbar = lat.bar(r);
    SpMatrix m = sp_zero(lat.n(), f);
    for (int i = 0; i < lat.n(); ++i)
        for (int j = 0; j < lat.n(); ++j)
            if (r[i] != 0 && rbar[j] != 0)
                m[i][j] = CycScalar::from_rational(f, rat(r[i] * rbar[j]));
    return m;
}

/// The deliberately wrong variant rbar^t r (swapped factors); kept as the
/// negative control for the module-axiom suite.
inline SpMatrix rank_one_sp_swapped(const GradingLattice& lat, const LatticeVector& r,
                                    const FieldPtr& f)
{
    const LatticeVector rbar = lat.bar(r);
    SpMatrix m = sp_zero(lat.n(), f);
    for (int i = 0; i < lat.n(); ++i)
        for (int j = 0; j < lat.n(); ++j)
            if (rbar[i] != 0 && r[j] != 0)
                m[i][j] = CycScalar::from_rational(f, rat(rbar[i] * r[j]));
    return m;
}

enum class RankOneConvention { ColRow, SwappedRowCol };

/// A finite dimensional sp_n-module. Shipped exemplars: the trivial module
/// and the natural n-dimensional one.
class SpModule {
public:
    enum class Kind { Trivial, Natural };

    SpModule(Kind kind, const GradingLattice& lat) : kind_(kind), n_(lat.n()) {}

    Kind kind() const { return kind_; }
    int dim() const { return kind_ == Kind::Trivial ? 1 : n_; }

    std::vector<CycScalar> apply(const SpMatrix& m, const std::vector<CycScalar>& w,
                                 const FieldPtr& f) const
    {
        if (static_cast<int>(w.size()) != dim())
            throw std::domain_error("SpModule: vector dimension mismatch");
        if (kind_ == Kind::Trivial)
            return {CycScalar::zero(f)};
        std::vector<CycScalar> out(w.size(), CycScalar::zero(f));
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = 0; j < w.size(); ++j)
                out[i] = out[i] + m[i][j] * w[j];
        return out;
    }

    std::vector<CycScalar> basis_vector(int j, const FieldPtr& f) const
    {
        std::vector<CycScalar> w(static_cast<std::size_t>(dim()), CycScalar::zero(f));
        w[j] = CycScalar::one(f);
        return w;
    }

private:
    Kind kind_;
    int n_;
};

/// I(rbar, r).w = (r^t rbar) w + (rbar, zeta) w: the H'_n(m) action on an
/// sp_n-module, shifted by zeta.
inline std::vector<CycScalar> hprime_action(const GradingLattice& lat, const SpModule& W,
                                            const LatticeVector& r,
                                            const std::vector<CycScalar>& zeta,
                                            const std::vector<CycScalar>& w, const FieldPtr& f,
                                            RankOneConvention conv = RankOneConvention::ColRow)
{
    if (!lat.in_gamma_bar(r))
        throw std::domain_error("hprime_action: degree is not m-divisible");
    if (r.is_zero())
        throw std::domain_error("hprime_action: degree must be nonzero");
    const SpMatrix m = conv == RankOneConvention::ColRow ? rank_one_sp(lat, r, f)
                                                         : rank_one_sp_swapped(lat, r, f);
    std::vector<CycScalar> out = W.apply(m, w, f);
    const CycScalar c = dot(zeta, lat.bar(r), f); // (rbar, zeta)
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = out[i] + c * w[i];
    return out;
}

/// A vector in the jet module L(W) = W (x) A_n(m): finitely many nonzero
/// W-components indexed by monomial degrees, plus the shift parameters.
class JetModuleVector {
public:
    JetModuleVector(std::vector<CycScalar> alpha, std::vector<CycScalar> beta)
        : alpha_(std::move(alpha)), beta_(std::move(beta))
    {
    }

    const std::vector<CycScalar>& alpha() const { return alpha_; }
    const std::vector<CycScalar>& beta() const { return beta_; }
    const std::map<LatticeVector, std::vector<CycScalar>>& components() const { return c_; }

    bool is_zero() const { return c_.empty(); }

    void add(const LatticeVector& deg, const std::vector<CycScalar>& w)
    {
        bool zero = true;
        for (const auto& q : w)
            if (!q.is_zero())
                zero = false;
        if (zero)
            return;
        auto it = c_.find(deg);
        if (it == c_.end()) {
            c_[deg] = w;
        } else {
            bool allzero = true;
            for (std::size_t i = 0; i < w.size(); ++i) {
                it->second[i] = it->second[i] + w[i];
                if (!it->second[i].is_zero())
                    allzero = false;
            }
            if (allzero)
                c_.erase(it);
        }
    }

    JetModuleVector operator-(const JetModuleVector& o) const
    {
        JetModuleVector r(*this);
        for (const auto& [deg, w] : o.c_) {
            std::vector<CycScalar> neg(w);
            for (auto& q : neg)
                q = -q;
            r.add(deg, neg);
        }
        return r;
    }

    bool operator==(const JetModuleVector& o) const { return c_ == o.c_; }
    bool operator!=(const JetModuleVector& o) const { return !(*this == o); }

private:
    std::vector<CycScalar> alpha_;
    std::vector<CycScalar> beta_;
    std::map<LatticeVector, std::vector<CycScalar>> c_;
};

/// Generators of H_n(m) |x A_n(m): the Hamiltonian D(rbar,r) with r != 0,
/// the degree-zero derivations D(u,0), and the multiplication operators t^r.
struct JetGenerator {
    enum class Kind { Hamiltonian, DegreeZero, Monomial };
    Kind kind;
    LatticeVector degree;        // for Hamiltonian / Monomial
    std::vector<CycScalar> u;    // for DegreeZero

    static JetGenerator hamiltonian(const LatticeVector& r)
    {
        return {Kind::Hamiltonian, r, {}};
    }
    static JetGenerator degree_zero(const std::vector<CycScalar>& u)
    {
        return {Kind::DegreeZero, LatticeVector(), u};
    }
    static JetGenerator monomial(const LatticeVector& r)
    {
        return {Kind::Monomial, r, {}};
    }
};

/// The jet-module action:
///   D(rbar,r)(w (x) t^k) = (rbar, k+beta) w (x) t^{k+r} + (r^t rbar).w (x) t^{k+r}
///   D(u,0)   (w (x) t^k) = (u, alpha+k) w (x) t^k
///   t^r      (w (x) t^k) = w (x) t^{k+r}
inline JetModuleVector jet_action(const GradingLattice& lat, const SpModule& W,
                                  const JetGenerator& g, const JetModuleVector& v,
                                  const FieldPtr& f,
                                  RankOneConvention conv = RankOneConvention::ColRow)
{
    JetModuleVector out(v.alpha(), v.beta());
    switch (g.kind) {
    case JetGenerator::Kind::Hamiltonian: {
        if (!lat.in_gamma_bar(g.degree) || g.degree.is_zero())
            throw std::domain_error("jet_action: Hamiltonian degree must be in GammaBar\\{0}");
        const LatticeVector rbar = lat.bar(g.degree);
        const SpMatrix m = conv == RankOneConvention::ColRow
                               ? rank_one_sp(lat, g.degree, f)
                               : rank_one_sp_swapped(lat, g.degree, f);
        for (const auto& [k, w] : v.components()) {
            CycScalar c = dot(v.beta(), rbar, f); // (rbar, beta)
            c = c + CycScalar::from_rational(f, rat(static_cast<long>(dot(rbar, k))));
            std::vector<CycScalar> img = W.apply(m, w, f);
            for (std::size_t i = 0; i < img.size(); ++i)
                img[i] = img[i] + c * w[i];
            out.add(k + g.degree, img);
        }
        break;
    }
    case JetGenerator::Kind::DegreeZero: {
        for (const auto& [k, w] : v.components()) {
            CycScalar c = dot(g.u, v.alpha(), f);
            c = c + dot(g.u, k, f);
            std::vector<CycScalar> img(w);
            for (auto& q : img)
                q = q * c;
            out.add(k, img);
        }
        break;
    }
    case JetGenerator::Kind::Monomial: {
        if (!lat.in_gamma_bar(g.degree))
            throw std::domain_error("jet_action: monomial degree must be in GammaBar");
        for (const auto& [k, w] : v.components())
            out.add(k + g.degree, w);
        break;
    }
    }
    return out;
}

/// The semidirect-product bracket on generators, the independent oracle for
/// the module axiom: [D(rbar,r), D(sbar,s)] = (rbar,s) D((r+s)bar, r+s),
/// [D(rbar,r), t^s] = (rbar,s) t^{r+s}, [D(u,0), D(rbar,s)] = (u,s) D(sbar,s),
/// [D(u,0), t^s] = (u,s) t^s, monomials commute.
inline std::vector<std::pair<CycScalar, JetGenerator>>
jet_bracket(const GradingLattice& lat, const JetGenerator& a, const JetGenerator& b,
            const FieldPtr& f)
{
    using K = JetGenerator::Kind;
    std::vector<std::pair<CycScalar, JetGenerator>> out;
    auto emit = [&](const CycScalar& c, const JetGenerator& g) {
        if (!c.is_zero())
            out.push_back({c, g});
    };
    if (a.kind == K::Hamiltonian && b.kind == K::Hamiltonian) {
        const LatticeVector t = a.degree + b.degree;
        const CycScalar c =
            CycScalar::from_rational(f, rat(static_cast<long>(lat.sympl(a.degree, b.degree))));
        if (!t.is_zero())
            emit(c, JetGenerator::hamiltonian(t));
        // t = 0 forces c = 0: (rbar, -r) vanishes.
    } else if (a.kind == K::Hamiltonian && b.kind == K::DegreeZero) {
        const CycScalar c = dot(b.u, a.degree, f);
        emit(-c, JetGenerator::hamiltonian(a.degree));
    } else if (a.kind == K::DegreeZero && b.kind == K::Hamiltonian) {
        const CycScalar c = dot(a.u, b.degree, f);
        emit(c, JetGenerator::hamiltonian(b.degree));
    } else if (a.kind == K::Hamiltonian && b.kind == K::Monomial) {
        const CycScalar c =
            CycScalar::from_rational(f, rat(static_cast<long>(lat.sympl(a.degree, b.degree))));
        emit(c, JetGenerator::monomial(a.degree + b.degree));
    } else if (a.kind == K::Monomial && b.kind == K::Hamiltonian) {
        const CycScalar c =
            CycScalar::from_rational(f, rat(static_cast<long>(lat.sympl(b.degree, a.degree))));
        emit(-c, JetGenerator::monomial(a.degree + b.degree));
    } else if (a.kind == K::DegreeZero && b.kind == K::Monomial) {
        const CycScalar c = dot(a.u, b.degree, f);
        emit(c, JetGenerator::monomial(b.degree));
    } else if (a.kind == K::Monomial && b.kind == K::DegreeZero) {
        const CycScalar c = dot(b.u, a.degree, f);
        emit(-c, JetGenerator::monomial(a.degree));
    }
    // DegreeZero x DegreeZero and Monomial x Monomial vanish.
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation maps
// ---------------------------------------------------------------------------

/// Evaluation points a_i = (a_{i,1}..a_{i,l}) per slot, subject to the
/// separation constraint a_{i,j}^{m_i} != a_{i,t}^{m_i} for j != t.
class EvaluationPoints {
public:
    EvaluationPoints(const GradingLattice& lat, std::vector<std::vector<CycScalar>> points,
                     const FieldPtr& f)
        : lat_(&lat), a_(std::move(points)), f_(f)
    {
        if (static_cast<int>(a_.size()) != lat.n())
            throw std::domain_error("EvaluationPoints: need one tuple per slot");
        l_ = a_.empty() ? 0 : static_cast<int>(a_[0].size());
        if (l_ < 1)
            throw std::domain_error("EvaluationPoints: l must be positive");
        for (int i = 0; i < lat.n(); ++i) {
            if (static_cast<int>(a_[i].size()) != l_)
                throw std::domain_error("EvaluationPoints: ragged point tuples");
            for (int j = 0; j < l_; ++j) {
                if (a_[i][j].is_zero())
                    throw std::domain_error("EvaluationPoints: points must be nonzero");
                for (int t = j + 1; t < l_; ++t)
                    if (a_[i][j].pow(lat.order(i)) == a_[i][t].pow(lat.order(i)))
                        throw std::domain_error(
                            "EvaluationPoints: separation constraint violated in slot " +
                            std::to_string(i + 1));
            }
        }
        // lexicographic order on the index set I
        std::vector<int> idx(static_cast<std::size_t>(lat.n()), 0);
        while (true) {
            index_set_.push_back(idx);
            int pos = lat.n() - 1;
            while (pos >= 0) {
                if (++idx[pos] < l_)
                    break;
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0)
                break;
        }
    }

    int l() const { return l_; }
    int copies() const { return static_cast<int>(index_set_.size()); }

    /// a_S^r for the S-th index tuple.
    CycScalar scalar_at(int s, const LatticeVector& r) const
    {
        CycScalar prod = CycScalar::one(f_);
        for (int i = 0; i < lat_->n(); ++i)
            if (r[i] != 0)
                prod = prod * a_[i][index_set_[s][i]].pow(r[i]);
        return prod;
    }

    /// phi(X (x) t^r) = (a_S^r X)_S over the ordered index set.
    std::vector<GElement> evaluate(const GElement& x, const LatticeVector& r) const
    {
        std::vector<GElement> out;
        out.reserve(index_set_.size());
        for (int s = 0; s < copies(); ++s)
            out.push_back(x * scalar_at(s, r));
        return out;
    }

private:
    const GradingLattice* lat_;
    std::vector<std::vector<CycScalar>> a_;
    FieldPtr f_;
    int l_ = 0;
    std::vector<std::vector<int>> index_set_;
};

} // namespace healie
