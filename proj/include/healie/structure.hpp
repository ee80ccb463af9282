#pragma once

#include <optional>
#include <set>

#include "healie/tau.hpp"

namespace healie {

/// A linear functional on the Cartan H = h(0bar) (+) sum C K_i (+) sum C d_i,
/// stored as its value lists on the fixed ordered basis.
struct Weight {
    std::vector<CycScalar> h; // values on the Cartan basis of h(0bar)
    std::vector<CycScalar> K; // values on K_1..K_n
    std::vector<CycScalar> d; // values on d_1..d_n

    static Weight zero(const TauAlgebra& alg)
    {
        Weight w;
        w.h.assign(static_cast<std::size_t>(alg.lie().cartan_dim()), alg.zero());
        w.K.assign(static_cast<std::size_t>(alg.n()), alg.zero());
        w.d.assign(static_cast<std::size_t>(alg.n()), alg.zero());
        return w;
    }

    bool operator==(const Weight& o) const { return h == o.h && K == o.K && d == o.d; }
    bool operator!=(const Weight& o) const { return !(*this == o); }

    Weight operator+(const Weight& o) const
    {
        Weight r(*this);
        for (std::size_t i = 0; i < h.size(); ++i) r.h[i] = r.h[i] + o.h[i];
        for (std::size_t i = 0; i < K.size(); ++i) r.K[i] = r.K[i] + o.K[i];
        for (std::size_t i = 0; i < d.size(); ++i) r.d[i] = r.d[i] + o.d[i];
        return r;
    }
    Weight operator-(const Weight& o) const
    {
        Weight r(*this);
        for (std::size_t i = 0; i < h.size(); ++i) r.h[i] = r.h[i] - o.h[i];
        for (std::size_t i = 0; i < K.size(); ++i) r.K[i] = r.K[i] - o.K[i];
        for (std::size_t i = 0; i < d.size(); ++i) r.d[i] = r.d[i] - o.d[i];
        return r;
    }
    Weight operator*(const CycScalar& c) const
    {
        Weight r(*this);
        for (auto& v : r.h) v = v * c;
        for (auto& v : r.K) v = v * c;
        for (auto& v : r.d) v = v * c;
        return r;
    }
};

/// The root alpha + delta_r indexing a root space of tau: a finite part
/// alpha (zero for the isotropic delta_r spaces) and a degree r.
struct RootDatum {
    FiniteWeight alpha; // values on the Cartan basis; all-zero = isotropic
    LatticeVector degree;

    bool real() const
    {
        for (const auto& q : alpha)
            if (q != 0)
                return true;
        return false;
    }

    bool operator==(const RootDatum& o) const
    {
        return alpha == o.alpha && degree == o.degree;
    }
};

/// The weight by which the root acts on H: alpha on h(0bar), zero on the
/// K_i, and the degree on the d_i.
inline Weight root_weight(const TauAlgebra& alg, const RootDatum& beta)
{
    Weight w = Weight::zero(alg);
    for (std::size_t c = 0; c < beta.alpha.size(); ++c)
        w.h[c] = alg.scalar(beta.alpha[c]);
    for (int i = 0; i < alg.n(); ++i)
        w.d[i] = alg.scalar(beta.degree[i]);
    return w;
}

/// The root datum of a homogeneous element: loop terms carry their finite
/// weight, central and Hamiltonian terms of degree r sit in the isotropic
/// space delta_r, Cartan elements sit at (0, 0).
inline RootDatum root_of(const TauAlgebra& alg, const TauElement& x)
{
    if (x.is_zero())
        throw std::domain_error("root_of: zero element");
    std::optional<LatticeVector> deg;
    auto take_degree = [&](const LatticeVector& r) {
        if (!deg)
            deg = r;
        else if (*deg != r)
            throw std::domain_error("root_of: element is not degree-homogeneous");
    };
    std::optional<FiniteWeight> alpha;
    for (const auto& [r, g] : x.loop_part()) {
        take_degree(r);
        auto w = alg.lie().weight_of(g);
        if (!w)
            throw std::domain_error("root_of: loop part mixes finite weights");
        if (!alpha)
            alpha = *w;
        else if (*alpha != *w)
            throw std::domain_error("root_of: loop part mixes finite weights");
    }
    const FiniteWeight zero_w(static_cast<std::size_t>(alg.lie().cartan_dim()), Rational(0));
    for (const auto& [r, c] : x.central_part()) {
        (void)c;
        take_degree(r);
        if (alpha && *alpha != zero_w)
            throw std::domain_error("root_of: central term mixed with a real root space");
    }
    for (const auto& [r, c] : x.ham_part()) {
        (void)c;
        take_degree(r);
        if (alpha && *alpha != zero_w)
            throw std::domain_error("root_of: Hamiltonian term mixed with a real root space");
    }
    if (!x.central0().empty() || !x.deriv0().empty()) {
        take_degree(LatticeVector::zero(alg.n()));
        if (alpha && *alpha != zero_w)
            throw std::domain_error("root_of: Cartan part mixed with a real root space");
    }
    if (!deg)
        throw std::domain_error("root_of: element has no graded support");
    return RootDatum{alpha ? *alpha : zero_w, *deg};
}

/// beta^vee = alpha^vee + (2/(alpha|alpha)) sum r_i K_i, as a Cartan element.
inline TauElement coroot(const TauAlgebra& alg, const RootDatum& beta)
{
    if (!beta.real())
        throw std::domain_error("coroot: isotropic roots have no coroot");
    const auto cr = alg.lie().coroot_coords(beta.alpha);
    TauElement e = TauElement::loop(alg, alg.lie().cartan_element(cr, alg.field()),
                                    LatticeVector::zero(alg.n()));
    const Rational factor = Rational(2) / alg.lie().norm2(beta.alpha);
    std::vector<CycScalar> u = alg.zero_vector();
    bool any = false;
    for (int i = 0; i < alg.n(); ++i)
        if (beta.degree[i] != 0) {
            u[i] = alg.scalar(factor * beta.degree[i]);
            any = true;
        }
    if (any)
        e = e + TauElement::central(alg, u, LatticeVector::zero(alg.n()));
    return e;
}

/// lambda evaluated on a Cartan element (degree-0 loop part inside h(0bar),
/// degree-0 central and derivation parts).
inline CycScalar eval_weight(const TauAlgebra& alg, const Weight& lambda, const TauElement& x)
{
    if (!x.central_part().empty() || !x.ham_part().empty())
        throw std::domain_error("eval_weight: element is not in the Cartan H");
    CycScalar s = alg.zero();
    for (const auto& [r, g] : x.loop_part()) {
        if (!r.is_zero())
            throw std::domain_error("eval_weight: loop part has nonzero degree");
        const auto& cartan = alg.lie().cartan();
        for (const auto& [i, q] : g.coeffs()) {
            auto it = std::find(cartan.begin(), cartan.end(), i);
            if (it == cartan.end())
                throw std::domain_error("eval_weight: loop part leaves h(0bar)");
            s = s + q * lambda.h[static_cast<std::size_t>(it - cartan.begin())];
        }
    }
    for (std::size_t i = 0; i < x.central0().size(); ++i)
        s = s + x.central0()[i] * lambda.K[i];
    for (std::size_t i = 0; i < x.deriv0().size(); ++i)
        s = s + x.deriv0()[i] * lambda.d[i];
    return s;
}

/// r_gamma(lambda) = lambda - lambda(gamma^vee) gamma.
inline Weight reflect(const TauAlgebra& alg, const RootDatum& gamma, const Weight& lambda)
{
    const TauElement gv = coroot(alg, gamma);
    const CycScalar c = eval_weight(alg, lambda, gv);
    return lambda - root_weight(alg, gamma) * c;
}

/// Reflection of a root through a real root, r_gamma(beta) as root data.
inline RootDatum reflect_root(const TauAlgebra& alg, const RootDatum& gamma,
                              const RootDatum& beta)
{
    // beta(gamma^vee) = alpha_beta(alpha_gamma^vee): roots vanish on the K_i.
    const auto gcoords = alg.lie().coroot_coords(gamma.alpha);
    const Rational c = alg.lie().eval_weight(beta.alpha, gcoords);
    if (c.get_den() != 1)
        throw std::domain_error("reflect_root: non-integral Cartan pairing");
    const long ci = static_cast<long>(c.get_num().get_si());
    FiniteWeight alpha = beta.alpha;
    for (std::size_t t = 0; t < alpha.size(); ++t)
        alpha[t] -= c * gamma.alpha[t];
    return RootDatum{alpha, beta.degree - gamma.degree * ci};
}

namespace detail {

// Z-span membership of target in the row lattice of gens, by integer
// triangularization (gcd elimination) followed by back-reduction.
inline bool z_span_contains(std::vector<std::vector<mpz_class>> rows,
                            std::vector<mpz_class> target)
{
    const std::size_t cols = target.size();
    std::size_t top = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pivots; // (row, col)
    for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
        // gcd-eliminate column c below `top`
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = top; i < rows.size(); ++i)
                if (rows[i][c] != 0 &&
                    (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])))
                    best = i;
            if (best == rows.size())
                break;
            std::swap(rows[top], rows[best]);
            bool clean = true;
            for (std::size_t i = top + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0)
                    continue;
                const mpz_class q = rows[i][c] / rows[top][c]; // truncated
                for (std::size_t j = 0; j < cols; ++j)
                    rows[i][j] -= q * rows[top][j];
                if (rows[i][c] != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (top < rows.size() && rows[top][c] != 0) {
            pivots.emplace_back(top, c);
            ++top;
        }
    }
    for (const auto& [r, c] : pivots) {
        if (target[c] == 0)
            continue;
        if (target[c] % rows[r][c] != 0)
            return false;
        const mpz_class q = target[c] / rows[r][c];
        for (std::size_t j = 0; j < cols; ++j)
            target[j] -= q * rows[r][j];
    }
    for (const auto& t : target)
        if (t != 0)
            return false;
    return true;
}

} // namespace detail

/// The W_0-orbit of the highest coroot theta^vee, in simple-coroot
/// coordinates, closed under the simple reflections. Used by the translate
/// precondition.
inline std::set<std::vector<Rational>> coroot_orbit(const TauAlgebra& alg)
{
    const auto& lie = alg.lie();
    const auto& pis = lie.simple_roots();
    if (pis.empty())
        throw std::domain_error("coroot_orbit: no simple roots configured");
    const std::size_t d = pis.size();

    // express a Cartan-coordinate vector in the simple-coroot basis
    std::vector<std::vector<Rational>> cols; // coroot_coords of each pi_j
    for (const auto& pi : pis)
        cols.push_back(lie.coroot_coords(pi));
    auto to_coroot_basis = [&](const std::vector<Rational>& cart) {
        const std::size_t m = cart.size();
        std::vector<std::vector<Rational>> M(m, std::vector<Rational>(d));
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t c = 0; c < m; ++c)
                M[c][j] = cols[j][c];
        if (m != d)
            throw std::domain_error("coroot_orbit: simple coroots do not form a basis");
        return healie::detail::solve_rational(M, cart);
    };

    const FiniteWeight theta = lie.highest_root();
    auto start = to_coroot_basis(lie.coroot_coords(theta));
    if (!start)
        throw std::domain_error("coroot_orbit: theta^vee outside the simple-coroot span");

    // s_j acting in coroot coordinates: h -> h - pi_j(h) e_j, where
    // pi_j(h) = sum_i h_i <pi_j, pi_i^vee>.
    std::vector<std::vector<Rational>> cartan_pairing(d, std::vector<Rational>(d));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i)
            cartan_pairing[j][i] = lie.eval_weight(pis[j], cols[i]);

    std::set<std::vector<Rational>> orbit;
    std::vector<std::vector<Rational>> frontier{*start};
    orbit.insert(*start);
    while (!frontier.empty()) {
        std::vector<std::vector<Rational>> next;
        for (const auto& h : frontier)
            for (std::size_t j = 0; j < d; ++j) {
                Rational pair(0);
                for (std::size_t i = 0; i < d; ++i)
                    pair += h[i] * cartan_pairing[j][i];
                auto img = h;
                img[j] -= pair;
                if (orbit.insert(img).second)
                    next.push_back(img);
            }
        frontier = std::move(next);
    }
    return orbit;
}

/// t_{i,h}(lambda) = lambda - lambda(h) delta_i, for 1-based i not in {k,2k}
/// and h in the integral lattice Z(W_0 theta^vee) inside h(0bar).
inline Weight translate(const TauAlgebra& alg, int i, const GElement& h, const Weight& lambda)
{
    const int k = alg.k();
    const int n = alg.n();
    if (i < 1 || i > n)
        throw std::domain_error("translate: slot index out of range");
    if (i == k || i == n)
        throw std::domain_error("translate: slots k and 2k are excluded");
    auto coords = alg.lie().cartan_coords(h);
    if (!coords)
        throw std::domain_error("translate: h is not in the span of h(0bar)");

    // membership in Z(W_0 theta^vee)
    const auto orbit = coroot_orbit(alg);
    std::vector<std::vector<Rational>> cols;
    for (const auto& pi : alg.lie().simple_roots())
        cols.push_back(alg.lie().coroot_coords(pi));
    const std::size_t d = cols.size();
    std::vector<std::vector<Rational>> M(coords->size(), std::vector<Rational>(d));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t c = 0; c < coords->size(); ++c)
            M[c][j] = cols[j][c];
    auto hc = healie::detail::solve_rational(M, *coords);
    if (!hc)
        throw std::domain_error("translate: h is outside the coroot span");
    auto to_int = [](const std::vector<Rational>& v) {
        std::vector<mpz_class> z;
        for (const auto& q : v) {
            if (q.get_den() != 1)
                throw std::domain_error("translate: h has non-integral coroot coordinates");
            z.push_back(q.get_num());
        }
        return z;
    };
    std::vector<std::vector<mpz_class>> gens;
    for (const auto& o : orbit)
        gens.push_back(to_int(o));
    if (!detail::z_span_contains(gens, to_int(*hc)))
        throw std::domain_error("translate: h is not in the lattice Z(W_0 theta^vee)");

    CycScalar lh = alg.zero();
    for (std::size_t c = 0; c < coords->size(); ++c)
        lh = lh + alg.scalar((*coords)[c]) * lambda.h[c];
    Weight out = lambda;
    out.d[i - 1] = out.d[i - 1] - lh;
    return out;
}

// ---------------------------------------------------------------------------
// Triangular decomposition
// ---------------------------------------------------------------------------

enum class TriClass { PlusPlus, Plus, Zero, Minus, MinusMinus };

inline const char* tri_name(TriClass c)
{
    switch (c) {
    case TriClass::PlusPlus: return "++";
    case TriClass::Plus: return "+";
    case TriClass::Zero: return "0";
    case TriClass::Minus: return "-";
    case TriClass::MinusMinus: return "--";
    }
    return "?";
}

namespace detail {

// Sign of a finite weight relative to Q^+: +1 for non-negative integral
// simple-root coordinates (not all zero), -1 mirrored, 0 for the zero
// weight; nullopt when incomparable.
inline std::optional<int> weight_sign(const TauAlgebra& alg, const FiniteWeight& alpha)
{
    bool zero = true;
    for (const auto& q : alpha)
        if (q != 0)
            zero = false;
    if (zero)
        return 0;
    auto coords = alg.lie().simple_coords(alpha);
    if (!coords)
        return std::nullopt;
    bool nonneg = true, nonpos = true;
    for (const auto& q : *coords) {
        if (q.get_den() != 1)
            return std::nullopt;
        if (q < 0)
            nonneg = false;
        if (q > 0)
            nonpos = false;
    }
    if (nonneg)
        return 1;
    if (nonpos)
        return -1;
    return std::nullopt;
}

inline TriClass degree_class(const TauAlgebra& alg, const LatticeVector& r)
{
    const long a = r[alg.k() - 1];
    const long b = r[alg.n() - 1];
    if (a > b)
        return TriClass::PlusPlus;
    if (a < b)
        return TriClass::MinusMinus;
    if (a > 0)
        return TriClass::Plus;
    if (a < 0)
        return TriClass::Minus;
    return TriClass::Zero;
}

} // namespace detail

/// Classification of a homogeneous element by the five-part triangular
/// decomposition. Elements mixing classes are rejected.
inline TriClass triangular_class(const TauAlgebra& alg, const TauElement& x)
{
    if (x.is_zero())
        throw std::domain_error("triangular_class: zero element");
    std::optional<TriClass> cls;
    auto merge = [&](TriClass c) {
        if (!cls)
            cls = c;
        else if (*cls != c)
            throw std::domain_error(std::string("triangular_class: element mixes ") +
                                    tri_name(*cls) + " and " + tri_name(c));
    };
    for (const auto& [r, g] : x.loop_part()) {
        TriClass c = detail::degree_class(alg, r);
        if (c == TriClass::Zero) {
            // slots vanish: the finite weight decides
            for (const auto& [alpha, part] : alg.lie().weight_decompose(g)) {
                (void)part;
                auto sgn = detail::weight_sign(alg, alpha);
                if (!sgn)
                    throw std::domain_error(
                        "triangular_class: finite weight incomparable with Q^+");
                merge(*sgn > 0 ? TriClass::Plus
                               : (*sgn < 0 ? TriClass::Minus : TriClass::Zero));
            }
        } else {
            merge(c);
        }
    }
    for (const auto& [r, c] : x.central_part()) {
        (void)c;
        merge(detail::degree_class(alg, r));
    }
    for (const auto& [r, c] : x.ham_part()) {
        (void)c;
        merge(detail::degree_class(alg, r));
    }
    if (!x.central0().empty() || !x.deriv0().empty())
        merge(TriClass::Zero);
    return *cls;
}

/// Splits an element into its homogeneous constituents: by degree and, for
/// loop terms, by finite weight.
inline std::vector<TauElement> split_homogeneous(const TauAlgebra& alg, const TauElement& x)
{
    std::vector<TauElement> parts;
    for (const auto& [r, g] : x.loop_part())
        for (const auto& [alpha, comp] : alg.lie().weight_decompose(g)) {
            (void)alpha;
            TauElement e;
            e.add_loop(r, comp);
            parts.push_back(std::move(e));
        }
    for (const auto& [r, c] : x.central_part()) {
        TauElement e;
        e.add_central(r, c);
        parts.push_back(std::move(e));
    }
    for (const auto& [r, c] : x.ham_part()) {
        TauElement e;
        e.add_ham(r, c);
        parts.push_back(std::move(e));
    }
    if (!x.central0().empty()) {
        TauElement e;
        for (int i = 0; i < alg.n(); ++i)
            e.add_central0(alg, i, x.central0()[i]);
        parts.push_back(std::move(e));
    }
    if (!x.deriv0().empty()) {
        TauElement e;
        for (int i = 0; i < alg.n(); ++i)
            e.add_deriv0(alg, i, x.deriv0()[i]);
        parts.push_back(std::move(e));
    }
    return parts;
}

/// The comparison predicate of the H^* ordering: lambda <= mu iff
/// mu - lambda = sum n_i alpha_i + n_{d+k} delta_k + n_{d+2k} delta_{2k}
/// with integral n and (i) n_{d+k} - n_{d+2k} > 0, or (ii) equal and > 0,
/// or (iii) both zero and every n_i >= 0.
inline bool weight_leq(const TauAlgebra& alg, const Weight& lambda, const Weight& mu)
{
    const Weight diff = mu - lambda;
    for (const auto& c : diff.K)
        if (!c.is_zero())
            return false;
    const int k = alg.k(), n = alg.n();
    for (int i = 0; i < n; ++i)
        if (i != k - 1 && i != n - 1 && !diff.d[i].is_zero())
            return false;
    if (!diff.d[k - 1].is_rational() || !diff.d[n - 1].is_rational())
        return false;
    const Rational nk = diff.d[k - 1].to_rational();
    const Rational n2k = diff.d[n - 1].to_rational();
    if (nk.get_den() != 1 || n2k.get_den() != 1)
        return false;
    FiniteWeight halpha;
    for (const auto& c : diff.h) {
        if (!c.is_rational())
            return false;
        halpha.push_back(c.to_rational());
    }
    auto coords = alg.lie().simple_coords(halpha);
    bool hzero = true;
    for (const auto& q : halpha)
        if (q != 0)
            hzero = false;
    if (!coords && !hzero)
        return false;
    std::vector<Rational> ns = coords ? *coords : std::vector<Rational>();
    for (const auto& q : ns)
        if (q.get_den() != 1)
            return false;
    if (nk - n2k > 0)
        return true;
    if (nk == n2k && nk > 0)
        return true;
    if (nk == 0 && n2k == 0) {
        for (const auto& q : ns)
            if (q < 0)
                return false;
        return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// GL(n, Z) twists
// ---------------------------------------------------------------------------

/// A unimodular twist matrix B with its exact companion F = (B^T)^{-1}.
class TwistMatrix {
public:
    explicit TwistMatrix(std::vector<std::vector<long>> rows) : b_(std::move(rows))
    {
        n_ = static_cast<int>(b_.size());
        for (const auto& row : b_)
            if (static_cast<int>(row.size()) != n_)
                throw ConfigError("TwistMatrix: matrix is not square");
        compute_inverse_transpose();
    }

    static TwistMatrix identity(int n)
    {
        std::vector<std::vector<long>> rows(n, std::vector<long>(n, 0));
        for (int i = 0; i < n; ++i)
            rows[i][i] = 1;
        return TwistMatrix(std::move(rows));
    }

    /// The B_{n,n} family: identity outside the (k, 2k) block, which is
    /// (a, 1; a-1, 1). Unimodular for every a; the paper wants 2a-1 > 0.
    static TwistMatrix bnn(int n, long a)
    {
        if (2 * a - 1 <= 0)
            throw std::domain_error("B_{n,n}: requires 2a-1 > 0");
        auto m = identity(n);
        const int k = n / 2;
        m.b_[k - 1][k - 1] = a;
        m.b_[k - 1][n - 1] = 1;
        m.b_[n - 1][k - 1] = a - 1;
        m.b_[n - 1][n - 1] = 1;
        m.compute_inverse_transpose();
        return m;
    }

    int n() const { return n_; }
    long entry(int i, int j) const { return b_[i][j]; }

    LatticeVector apply(const LatticeVector& r) const
    {
        if (r.size() != n_)
            throw std::domain_error("TwistMatrix: vector length mismatch");
        std::vector<long> v(n_, 0);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                v[i] += b_[i][j] * r[j];
        return LatticeVector(std::move(v));
    }

    std::vector<CycScalar> apply(const std::vector<CycScalar>& u, const FieldPtr& f) const
    {
        std::vector<CycScalar> v(static_cast<std::size_t>(n_), CycScalar::zero(f));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (b_[i][j] != 0)
                    v[i] = v[i] + u[j] * rat(b_[i][j]);
        return v;
    }

    /// F u with F = (B^T)^{-1}; exact rational entries.
    std::vector<CycScalar> apply_f(const std::vector<CycScalar>& u, const FieldPtr& f) const
    {
        std::vector<CycScalar> v(static_cast<std::size_t>(n_), CycScalar::zero(f));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (f_[i][j] != 0)
                    v[i] = v[i] + u[j] * f_[i][j];
        return v;
    }

    LatticeVector apply_inverse(const LatticeVector& t) const
    {
        // B^{-1} = F^T exactly; entries of B^{-1} are integers for
        // unimodular B, reconstructed from the rational F.
        std::vector<long> v(n_, 0);
        for (int i = 0; i < n_; ++i) {
            Rational s(0);
            for (int j = 0; j < n_; ++j)
                s += f_[j][i] * t[j];
            if (s.get_den() != 1)
                throw std::logic_error("TwistMatrix: non-integral inverse image");
            v[i] = static_cast<long>(s.get_num().get_si());
        }
        return LatticeVector(std::move(v));
    }

    TwistMatrix operator*(const TwistMatrix& o) const
    {
        if (o.n_ != n_)
            throw std::domain_error("TwistMatrix: size mismatch");
        std::vector<std::vector<long>> rows(n_, std::vector<long>(n_, 0));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (int t = 0; t < n_; ++t)
                    rows[i][j] += b_[i][t] * o.b_[t][j];
        return TwistMatrix(std::move(rows));
    }

private:
    void compute_inverse_transpose()
    {
        // invert B^T over Q, tracking the determinant
        std::vector<std::vector<Rational>> m(n_, std::vector<Rational>(n_));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                m[i][j] = Rational(b_[j][i]);
        std::vector<std::vector<Rational>> inv(n_, std::vector<Rational>(n_, Rational(0)));
        for (int i = 0; i < n_; ++i)
            inv[i][i] = 1;
        Rational det(1);
        for (int col = 0; col < n_; ++col) {
            int piv = col;
            while (piv < n_ && m[piv][col] == 0)
                ++piv;
            if (piv == n_)
                throw ConfigError("TwistMatrix: matrix is singular");
            if (piv != col) {
                std::swap(m[piv], m[col]);
                std::swap(inv[piv], inv[col]);
                det = -det;
            }
            det *= m[col][col];
            const Rational d = m[col][col];
            for (int j = 0; j < n_; ++j) {
                m[col][j] /= d;
                inv[col][j] /= d;
            }
            for (int i = 0; i < n_; ++i) {
                if (i == col || m[i][col] == 0)
                    continue;
                const Rational c = m[i][col];
                for (int j = 0; j < n_; ++j) {
                    m[i][j] -= c * m[col][j];
                    inv[i][j] -= c * inv[col][j];
                }
            }
        }
        if (det != 1 && det != -1)
            throw ConfigError("TwistMatrix: determinant " + rational_str(det) +
                              " is not a unit; B must be unimodular");
        f_ = std::move(inv);
    }

    int n_ = 0;
    std::vector<std::vector<long>> b_;
    std::vector<std::vector<Rational>> f_;
};

/// The twist automorphism on the full toroidal carrier:
/// B.X(r) = X(Br), B.K(u,r) = K(Bu,Br), B.D(u,r) = D(Fu,Br).
inline FtElement twist(const TauAlgebra& alg, const TwistMatrix& B, const FtElement& e)
{
    if (B.n() != alg.n())
        throw std::domain_error("twist: matrix size does not match the session");
    FtElement out;
    for (const auto& [r, x] : e.loop_part())
        out.add_loop(B.apply(r), x);
    for (const auto& [r, u] : e.central_part())
        out.add_central(alg, B.apply(r), B.apply(u, alg.field()));
    for (const auto& [r, u] : e.deriv_part())
        out.add_deriv(alg, B.apply(r), B.apply_f(u, alg.field()));
    return out;
}

/// The tau-level twist: the image must land back inside tau (eigenspace
/// compatibility for loop terms, GammaBar degrees, Hamiltonian derivations);
/// central parts are re-canonicalized in the transported quotient, which for
/// representable images coincides with the K(m) canonical form.
inline TauElement twist(const TauAlgebra& alg, const TwistMatrix& B, const TauElement& a)
{
    return ft_to_tau(alg, twist(alg, B, FtElement::embed(alg, a)));
}

} // namespace healie
