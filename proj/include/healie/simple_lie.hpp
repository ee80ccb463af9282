#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "healie/cyclotomic.hpp"
#include "healie/lattice.hpp"

namespace healie {

/// An element of g tensored up to Q(zeta_N): sparse combination of the
/// structure basis. Canonical form stores no zero coefficients.
class GElement {
public:
    GElement() = default;

    static GElement basis(int index, const FieldPtr& f)
    {
        GElement x;
        x.c_[index] = CycScalar::one(f);
        return x;
    }

    const std::map<int, CycScalar>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    void add_term(int index, const CycScalar& coeff)
    {
        if (coeff.is_zero())
            return;
        auto it = c_.find(index);
        if (it == c_.end()) {
            c_.emplace(index, coeff);
        } else {
            it->second = it->second + coeff;
            if (it->second.is_zero())
                c_.erase(it);
        }
    }

    GElement operator+(const GElement& o) const
    {
        GElement r(*this);
        for (const auto& [i, q] : o.c_)
            r.add_term(i, q);
        return r;
    }
    GElement operator-(const GElement& o) const
    {
        GElement r(*this);
        for (const auto& [i, q] : o.c_)
            r.add_term(i, -q);
        return r;
    }
    GElement operator-() const
    {
        GElement r;
        for (const auto& [i, q] : c_)
            r.c_.emplace(i, -q);
        return r;
    }
    GElement operator*(const CycScalar& s) const
    {
        GElement r;
        if (s.is_zero())
            return r;
        for (const auto& [i, q] : c_) {
            CycScalar p = q * s;
            if (!p.is_zero())
                r.c_.emplace(i, p);
        }
        return r;
    }

    bool operator==(const GElement& o) const { return c_ == o.c_; }
    bool operator!=(const GElement& o) const { return c_ != o.c_; }
    bool operator<(const GElement& o) const { return c_ < o.c_; }

private:
    std::map<int, CycScalar> c_;
};

/// Finite weight: the tuple of eigenvalues on the Cartan basis of h(0bar).
using FiniteWeight = std::vector<Rational>;

namespace detail {

// Row reduction over the field; returns a maximal independent subset of the
// input vectors, in reduced echelon form.
inline std::vector<std::vector<CycScalar>>
row_reduce(std::vector<std::vector<CycScalar>> rows)
{
    std::vector<std::vector<CycScalar>> basis;
    if (rows.empty())
        return basis;
    const std::size_t cols = rows[0].size();
    std::vector<std::size_t> pivots;
    for (auto& row : rows) {
        // eliminate against existing pivots
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const CycScalar& c = row[pivots[b]];
            if (c.is_zero())
                continue;
            const CycScalar factor = c;
            for (std::size_t j = 0; j < cols; ++j)
                row[j] = row[j] - factor * basis[b][j];
        }
        std::size_t p = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (!row[j].is_zero()) {
                p = j;
                break;
            }
        if (p == cols)
            continue;
        const CycScalar inv = row[p].inverse();
        for (std::size_t j = 0; j < cols; ++j)
            row[j] = row[j] * inv;
        // back-substitute into earlier rows to keep reduced form
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const CycScalar c = basis[b][p];
            if (c.is_zero())
                continue;
            for (std::size_t j = 0; j < cols; ++j)
                basis[b][j] = basis[b][j] - c * row[j];
        }
        basis.push_back(row);
        pivots.push_back(p);
    }
    return basis;
}

// Solve G x = b over Q for a square matrix; returns nullopt when singular.
inline std::optional<std::vector<Rational>>
solve_rational(std::vector<std::vector<Rational>> G, std::vector<Rational> b)
{
    const std::size_t n = G.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && G[piv][col] == 0)
            ++piv;
        if (piv == n)
            return std::nullopt;
        std::swap(G[piv], G[col]);
        std::swap(b[piv], b[col]);
        const Rational d = G[col][col];
        for (std::size_t j = 0; j < n; ++j)
            G[col][j] /= d;
        b[col] /= d;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || G[i][col] == 0)
                continue;
            const Rational c = G[i][col];
            for (std::size_t j = 0; j < n; ++j)
                G[i][j] -= c * G[col][j];
            b[i] -= c * b[col];
        }
    }
    return b;
}

} // namespace detail

/// A finite dimensional simple Lie algebra given by structure constants on a
/// named basis, with its normalized invariant form, the Cartan of the fixed
/// subalgebra, and the derived weight/root data. Validated at construction;
/// immutable afterwards.
class SimpleLieAlgebra {
public:
    struct Spec {
        std::vector<std::string> labels;
        // brackets["a,b"] keyed by ordered label pair -> sparse combination.
        // Antisymmetric completion is applied automatically.
        std::map<std::pair<std::string, std::string>, std::map<std::string, Rational>> brackets;
        std::map<std::pair<std::string, std::string>, Rational> form; // symmetric completion applied
        std::vector<std::string> cartan;       // names of Cartan basis elements
        std::vector<std::string> simple_roots; // names of simple positive root vectors
        std::string root_type;                 // tag; "B..." enables short-root doubling
        bool skip_validation = false;          // test hook for negative controls
    };

    explicit SimpleLieAlgebra(const Spec& spec)
        : labels_(spec.labels), root_type_(spec.root_type)
    {
        dim_ = static_cast<int>(labels_.size());
        if (dim_ == 0)
            throw ConfigError("SimpleLieAlgebra: empty basis");
        for (int i = 0; i < dim_; ++i) {
            if (index_.count(labels_[i]))
                throw ConfigError("SimpleLieAlgebra: duplicate basis label " + labels_[i]);
            index_[labels_[i]] = i;
        }
        table_.assign(dim_, std::vector<std::map<int, Rational>>(dim_));
        for (const auto& [pair, combo] : spec.brackets) {
            const int i = index_of(pair.first);
            const int j = index_of(pair.second);
            for (const auto& [lbl, q] : combo) {
                if (q == 0)
                    continue;
                const int t = index_of(lbl);
                table_[i][j][t] += q;
                table_[j][i][t] -= q;
            }
        }
        form_.assign(dim_, std::vector<Rational>(dim_, Rational(0)));
        for (const auto& [pair, q] : spec.form) {
            const int i = index_of(pair.first);
            const int j = index_of(pair.second);
            form_[i][j] = q;
            form_[j][i] = q;
        }
        for (const auto& name : spec.cartan)
            cartan_.push_back(index_of(name));
        if (cartan_.empty())
            throw ConfigError("SimpleLieAlgebra: Cartan basis must be non-empty");

        if (!spec.skip_validation)
            validate_table();
        compute_weights();
        for (const auto& name : spec.simple_roots)
            simple_roots_.push_back(weights_[index_of(name)]);
        compute_roots();
        if (!spec.skip_validation)
            validate_normalization();
    }

    int dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_[i]; }
    int index_of(const std::string& name) const
    {
        auto it = index_.find(name);
        if (it == index_.end())
            throw ConfigError("SimpleLieAlgebra: unknown basis label '" + name + "'");
        return it->second;
    }
    bool has_label(const std::string& name) const { return index_.count(name) > 0; }

    const std::vector<int>& cartan() const { return cartan_; }
    int cartan_dim() const { return static_cast<int>(cartan_.size()); }

    /// Bilinear extension of the structure-constant table.
    GElement bracket(const GElement& x, const GElement& y) const
    {
        GElement r;
        for (const auto& [i, a] : x.coeffs())
            for (const auto& [j, b] : y.coeffs()) {
                const CycScalar ab = a * b;
                for (const auto& [t, q] : table_[i][j])
                    r.add_term(t, ab * q);
            }
        return r;
    }

    Rational form_entry(int i, int j) const { return form_[i][j]; }

    /// The normalized invariant form, extended bilinearly.
    CycScalar form(const GElement& x, const GElement& y, const FieldPtr& f) const
    {
        CycScalar s = CycScalar::zero(f);
        for (const auto& [i, a] : x.coeffs())
            for (const auto& [j, b] : y.coeffs())
                if (form_[i][j] != 0)
                    s = s + a * b * form_[i][j];
        return s;
    }

    const FiniteWeight& weight_of_basis(int i) const { return weights_[i]; }
    const std::vector<FiniteWeight>& simple_roots() const { return simple_roots_; }
    const std::set<FiniteWeight>& roots() const { return roots_; }
    const std::set<FiniteWeight>& enlarged_roots() const { return enlarged_roots_; }

    /// Splits x by h(0bar)-weight. Components sum back to x and each is an
    /// ad-eigenvector for every Cartan element.
    std::map<FiniteWeight, GElement> weight_decompose(const GElement& x) const
    {
        std::map<FiniteWeight, GElement> parts;
        for (const auto& [i, q] : x.coeffs()) {
            GElement t;
            t.add_term(i, q);
            auto [it, inserted] = parts.emplace(weights_[i], t);
            if (!inserted)
                it->second = it->second + t;
        }
        return parts;
    }

    /// The unique finite weight of x, or nullopt when x mixes weights.
    std::optional<FiniteWeight> weight_of(const GElement& x) const
    {
        std::optional<FiniteWeight> w;
        for (const auto& [i, q] : x.coeffs()) {
            (void)q;
            if (!w)
                w = weights_[i];
            else if (*w != weights_[i])
                return std::nullopt;
        }
        return w;
    }

    /// t_alpha in h(0bar) representing alpha through the invariant form,
    /// i.e. (t_alpha | h) = alpha(h). Rational Cartan coordinates.
    std::vector<Rational> form_dual(const FiniteWeight& alpha) const
    {
        std::vector<std::vector<Rational>> G(cartan_.size(),
                                             std::vector<Rational>(cartan_.size()));
        for (std::size_t a = 0; a < cartan_.size(); ++a)
            for (std::size_t b = 0; b < cartan_.size(); ++b)
                G[a][b] = form_[cartan_[a]][cartan_[b]];
        auto x = detail::solve_rational(G, alpha);
        if (!x)
            throw ConfigError("SimpleLieAlgebra: invariant form is singular on h(0bar)");
        return *x;
    }

    /// (alpha|alpha) through the form dual.
    Rational norm2(const FiniteWeight& alpha) const
    {
        const auto x = form_dual(alpha);
        Rational s(0);
        for (std::size_t c = 0; c < cartan_.size(); ++c)
            s += x[c] * alpha[c];
        return s;
    }

    /// alpha^vee = 2 t_alpha / (alpha|alpha) as Cartan coordinates.
    std::vector<Rational> coroot_coords(const FiniteWeight& alpha) const
    {
        const Rational n2 = norm2(alpha);
        if (n2 == 0)
            throw std::domain_error("coroot: isotropic finite weight");
        auto x = form_dual(alpha);
        for (auto& q : x)
            q = q * 2 / n2;
        return x;
    }

    GElement cartan_element(const std::vector<Rational>& coords, const FieldPtr& f) const
    {
        if (coords.size() != cartan_.size())
            throw std::domain_error("cartan_element: coordinate length mismatch");
        GElement h;
        for (std::size_t c = 0; c < cartan_.size(); ++c)
            h.add_term(cartan_[c], CycScalar::from_rational(f, coords[c]));
        return h;
    }

    /// Cartan coordinates of x, or nullopt when x leaves the h(0bar) span.
    std::optional<std::vector<Rational>> cartan_coords(const GElement& x) const
    {
        std::vector<Rational> coords(cartan_.size(), Rational(0));
        for (const auto& [i, q] : x.coeffs()) {
            auto it = std::find(cartan_.begin(), cartan_.end(), i);
            if (it == cartan_.end() || !q.is_rational())
                return std::nullopt;
            coords[static_cast<std::size_t>(it - cartan_.begin())] = q.to_rational();
        }
        return coords;
    }

    /// alpha(h) for a Cartan element h given by coordinates.
    Rational eval_weight(const FiniteWeight& alpha, const std::vector<Rational>& h) const
    {
        Rational s(0);
        for (std::size_t c = 0; c < cartan_.size(); ++c)
            s += h[c] * alpha[c];
        return s;
    }

    /// Coordinates of alpha in the simple-root basis, or nullopt when alpha
    /// is outside the root lattice span.
    std::optional<std::vector<Rational>> simple_coords(const FiniteWeight& alpha) const
    {
        if (simple_roots_.empty())
            return std::nullopt;
        // Solve with the Gram matrix of the simple roots under the form.
        const std::size_t d = simple_roots_.size();
        std::vector<std::vector<Rational>> G(d, std::vector<Rational>(d));
        std::vector<Rational> b(d);
        for (std::size_t a = 0; a < d; ++a) {
            const auto ta = form_dual(simple_roots_[a]);
            for (std::size_t c = 0; c < d; ++c)
                G[a][c] = eval_weight(simple_roots_[c], ta);
            b[a] = eval_weight(alpha, ta);
        }
        auto x = detail::solve_rational(G, b);
        if (!x)
            return std::nullopt;
        // Confirm: the candidate coordinates must reproduce alpha exactly.
        FiniteWeight rebuilt(cartan_.size(), Rational(0));
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t c = 0; c < cartan_.size(); ++c)
                rebuilt[c] += (*x)[a] * simple_roots_[a][c];
        if (rebuilt != alpha)
            return std::nullopt;
        return x;
    }

    /// The highest root of the stored root set (maximal height in
    /// simple-root coordinates).
    FiniteWeight highest_root() const
    {
        if (roots_.empty())
            throw std::domain_error("highest_root: root set is empty");
        std::optional<FiniteWeight> best;
        Rational best_h;
        for (const auto& alpha : roots_) {
            auto c = simple_coords(alpha);
            if (!c)
                continue;
            Rational h(0);
            for (const auto& q : *c)
                h += q;
            if (!best || h > best_h) {
                best = alpha;
                best_h = h;
            }
        }
        if (!best)
            throw std::domain_error("highest_root: no root lies in the simple-root span");
        return *best;
    }

private:
    void validate_table()
    {
        // Antisymmetry is structural ([x,x] = 0 by the completion rule);
        // confirm the diagonal anyway.
        for (int i = 0; i < dim_; ++i)
            if (!table_[i][i].empty())
                throw ConfigError("structure table: [x,x] != 0 for " + labels_[i]);
        // Jacobi on all basis triples.
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                for (int t = 0; t < dim_; ++t) {
                    std::map<int, Rational> acc;
                    accumulate_double_bracket(acc, i, j, t, Rational(1));
                    accumulate_double_bracket(acc, j, t, i, Rational(1));
                    accumulate_double_bracket(acc, t, i, j, Rational(1));
                    for (const auto& [b, q] : acc)
                        if (q != 0)
                            throw ConfigError("structure table: Jacobi fails on (" +
                                              labels_[i] + "," + labels_[j] + "," +
                                              labels_[t] + ")");
                }
        // Form symmetry is structural; check invariance ([x,y]|z) = (x|[y,z]).
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                for (int t = 0; t < dim_; ++t) {
                    Rational lhs(0), rhs(0);
                    for (const auto& [b, q] : table_[i][j])
                        lhs += q * form_[b][t];
                    for (const auto& [b, q] : table_[j][t])
                        rhs += q * form_[i][b];
                    if (lhs != rhs)
                        throw ConfigError("invariant form: ([x,y]|z) != (x|[y,z]) on (" +
                                          labels_[i] + "," + labels_[j] + "," + labels_[t] +
                                          ")");
                }
        // Cartan must be abelian.
        for (int a : cartan_)
            for (int b : cartan_)
                if (!table_[a][b].empty())
                    throw ConfigError("Cartan basis is not abelian: [" + labels_[a] + "," +
                                      labels_[b] + "] != 0");
    }

    void accumulate_double_bracket(std::map<int, Rational>& acc, int i, int j, int t,
                                   const Rational& c) const
    {
        // acc += c * [[b_i, b_j], b_t]
        for (const auto& [m, q] : table_[i][j])
            for (const auto& [b, p] : table_[m][t])
                acc[b] += c * q * p;
    }

    void compute_weights()
    {
        weights_.assign(dim_, FiniteWeight(cartan_.size(), Rational(0)));
        for (std::size_t c = 0; c < cartan_.size(); ++c) {
            const int h = cartan_[c];
            for (int j = 0; j < dim_; ++j) {
                const auto& row = table_[h][j];
                if (row.empty())
                    continue;
                if (row.size() != 1 || row.begin()->first != j)
                    throw ConfigError(
                        "Cartan element " + labels_[h] +
                        " is not ad-diagonal on basis element " + labels_[j] +
                        "; supply a weight-adapted basis");
                weights_[j][c] = row.begin()->second;
            }
        }
    }

    void compute_roots()
    {
        for (int j = 0; j < dim_; ++j) {
            bool zero = true;
            for (const auto& q : weights_[j])
                if (q != 0)
                    zero = false;
            if (!zero)
                roots_.insert(weights_[j]);
        }
        enlarged_roots_ = roots_;
        if (!root_type_.empty() && root_type_[0] == 'B' && !roots_.empty()) {
            Rational maxn(0);
            for (const auto& a : roots_)
                maxn = std::max(maxn, norm2(a));
            for (const auto& a : roots_)
                if (norm2(a) < maxn) {
                    FiniteWeight dbl = a;
                    for (auto& q : dbl)
                        q *= 2;
                    enlarged_roots_.insert(dbl);
                }
        }
    }

    void validate_normalization()
    {
        // (alpha|alpha) = 2 for long roots.
        Rational maxn(0);
        for (const auto& a : roots_)
            maxn = std::max(maxn, norm2(a));
        if (!roots_.empty() && maxn != 2)
            throw ConfigError("invariant form: long roots must have (alpha|alpha) = 2, got " +
                              rational_str(maxn));
    }

    std::vector<std::string> labels_;
    std::map<std::string, int> index_;
    int dim_ = 0;
    std::vector<std::vector<std::map<int, Rational>>> table_;
    std::vector<std::vector<Rational>> form_;
    std::vector<int> cartan_;
    std::vector<FiniteWeight> weights_;
    std::vector<FiniteWeight> simple_roots_;
    std::set<FiniteWeight> roots_;
    std::set<FiniteWeight> enlarged_roots_;
    std::string root_type_;
};

/// n commuting finite-order automorphisms acting on the structure basis,
/// stored column-wise (image of basis element j = column j).
class AutomorphismSet {
public:
    using Matrix = std::vector<GElement>; // columns

    AutomorphismSet(std::vector<Matrix> mats, std::vector<long> orders)
        : mats_(std::move(mats)), orders_(std::move(orders))
    {
        if (mats_.size() != orders_.size())
            throw ConfigError("AutomorphismSet: matrix/order count mismatch");
    }

    static AutomorphismSet identity(int n, int dim, const FieldPtr& f)
    {
        Matrix id;
        for (int j = 0; j < dim; ++j)
            id.push_back(GElement::basis(j, f));
        return AutomorphismSet(std::vector<Matrix>(n, id), std::vector<long>(n, 1));
    }

    int count() const { return static_cast<int>(mats_.size()); }
    long order(int i) const { return orders_[i]; }
    const std::vector<long>& orders() const { return orders_; }

    GElement apply(int i, const GElement& x) const { return apply_matrix(mats_[i], x); }

    GElement apply_power(int i, long t, const GElement& x) const
    {
        GElement y = x;
        const long mi = orders_[i];
        t %= mi;
        if (t < 0)
            t += mi;
        for (long s = 0; s < t; ++s)
            y = apply(i, y);
        return y;
    }

    /// Validates: automorphism property on basis pairs, declared orders with
    /// primitivity, commutation, and invariance of the form (needed so loop
    /// brackets only emit central terms at GammaBar degrees).
    void validate(const SimpleLieAlgebra& lie, const FieldPtr& f) const
    {
        const int dim = lie.dim();
        for (int i = 0; i < count(); ++i) {
            if (static_cast<int>(mats_[i].size()) != dim)
                throw ConfigError("automorphism " + std::to_string(i + 1) +
                                  ": wrong matrix dimension");
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b) {
                    const GElement lhs = apply(i, lie.bracket(GElement::basis(a, f),
                                                              GElement::basis(b, f)));
                    const GElement rhs = lie.bracket(mats_[i][a], mats_[i][b]);
                    if (lhs != rhs)
                        throw ConfigError("automorphism " + std::to_string(i + 1) +
                                          " does not preserve brackets on (" +
                                          lie.label(a) + "," + lie.label(b) + ")");
                    const CycScalar fl = lie.form(mats_[i][a], mats_[i][b], f);
                    const CycScalar fr = lie.form(GElement::basis(a, f),
                                                  GElement::basis(b, f), f);
                    if (fl != fr)
                        throw ConfigError("automorphism " + std::to_string(i + 1) +
                                          " does not preserve the invariant form");
                }
            // order and primitivity: walk successive powers on the basis
            std::vector<GElement> power;
            for (int a = 0; a < dim; ++a)
                power.push_back(GElement::basis(a, f));
            for (long t = 1; t <= orders_[i]; ++t) {
                for (int a = 0; a < dim; ++a)
                    power[a] = apply(i, power[a]);
                bool is_id = true;
                for (int a = 0; a < dim && is_id; ++a)
                    if (power[a] != GElement::basis(a, f))
                        is_id = false;
                if (t < orders_[i] && is_id)
                    throw ConfigError("automorphism " + std::to_string(i + 1) +
                                      " has order " + std::to_string(t) +
                                      " < declared " + std::to_string(orders_[i]));
                if (t == orders_[i] && !is_id)
                    throw ConfigError("automorphism " + std::to_string(i + 1) +
                                      "^" + std::to_string(orders_[i]) +
                                      " is not the identity");
            }
        }
        // pairwise commutation
        for (int i = 0; i < count(); ++i)
            for (int j = i + 1; j < count(); ++j)
                for (int a = 0; a < dim; ++a)
                    if (apply(i, apply(j, GElement::basis(a, f))) !=
                        apply(j, apply(i, GElement::basis(a, f))))
                        throw ConfigError("automorphisms " + std::to_string(i + 1) + " and " +
                                          std::to_string(j + 1) + " do not commute");
        // Cartan of the fixed algebra must actually be fixed.
        for (int c : lie.cartan())
            for (int i = 0; i < count(); ++i)
                if (apply(i, GElement::basis(c, f)) != GElement::basis(c, f))
                    throw ConfigError("Cartan element " + lie.label(c) +
                                      " is not fixed by automorphism " + std::to_string(i + 1));
    }

    /// Lie-torus condition (3): |<sigma_1..sigma_n>| equals prod m_i.
    /// Refuses (with a diagnostic) when the product exceeds the bound.
    bool condition3(const SimpleLieAlgebra& lie, const FieldPtr& f, long bound = 10000) const
    {
        long prod = 1;
        for (long mi : orders_) {
            prod *= mi;
            if (prod > bound)
                throw std::domain_error(
                    "condition3: product of orders exceeds enumeration bound " +
                    std::to_string(bound));
        }
        const int dim = lie.dim();
        std::set<std::vector<GElement>> group;
        std::vector<long> exps(static_cast<std::size_t>(count()), 0);
        while (true) {
            std::vector<GElement> img;
            img.reserve(dim);
            for (int a = 0; a < dim; ++a) {
                GElement y = GElement::basis(a, f);
                for (int i = 0; i < count(); ++i)
                    y = apply_power(i, exps[i], y);
                img.push_back(y);
            }
            group.insert(img);
            int pos = 0;
            while (pos < count()) {
                if (++exps[pos] < orders_[pos])
                    break;
                exps[pos] = 0;
                ++pos;
            }
            if (pos == count())
                break;
        }
        return static_cast<long>(group.size()) == prod;
    }

private:
    static GElement apply_matrix(const Matrix& m, const GElement& x)
    {
        GElement y;
        for (const auto& [j, q] : x.coeffs()) {
            const GElement col = m[j] * q;
            y = y + col;
        }
        return y;
    }

    std::vector<Matrix> mats_;
    std::vector<long> orders_;
};

/// The simultaneous eigenspace decomposition g = (+) g(rbar) under the
/// commuting automorphisms, with exact bases over Q(zeta_N).
class Eigenspaces {
public:
    Eigenspaces() = default;

    Eigenspaces(const SimpleLieAlgebra& lie, const AutomorphismSet& auts,
                const GradingLattice& lat, const FieldPtr& f, long bound = 10000)
    {
        long classes = 1;
        for (long mi : lat.orders()) {
            classes *= mi;
            if (classes > bound)
                throw std::domain_error("eigenspace enumeration exceeds bound " +
                                        std::to_string(bound));
        }
        std::vector<long> rbar(static_cast<std::size_t>(lat.n()), 0);
        int total = 0;
        while (true) {
            std::vector<std::vector<CycScalar>> rows;
            for (int j = 0; j < lie.dim(); ++j) {
                GElement img = project(auts, lat, f, rbar, GElement::basis(j, f));
                if (img.is_zero())
                    continue;
                std::vector<CycScalar> row(lie.dim(), CycScalar::zero(f));
                for (const auto& [b, q] : img.coeffs())
                    row[b] = q;
                rows.push_back(std::move(row));
            }
            auto reduced = detail::row_reduce(std::move(rows));
            std::vector<GElement> basis;
            for (const auto& row : reduced) {
                GElement x;
                for (int b = 0; b < lie.dim(); ++b)
                    x.add_term(b, row[b]);
                basis.push_back(std::move(x));
            }
            total += static_cast<int>(basis.size());
            if (!basis.empty())
                basis_.emplace(rbar, std::move(basis));

            int pos = 0;
            while (pos < lat.n()) {
                if (++rbar[pos] < lat.order(pos))
                    break;
                rbar[pos] = 0;
                ++pos;
            }
            if (pos == lat.n())
                break;
        }
        if (total != lie.dim())
            throw ConfigError("eigenspace decomposition dimension checksum failed: " +
                              std::to_string(total) + " != " + std::to_string(lie.dim()));
    }

    const std::vector<GElement>& basis(const std::vector<long>& rbar) const
    {
        static const std::vector<GElement> empty;
        auto it = basis_.find(rbar);
        return it == basis_.end() ? empty : it->second;
    }

    int dim(const std::vector<long>& rbar) const
    {
        return static_cast<int>(basis(rbar).size());
    }

    /// Residue classes with a non-empty eigenspace.
    std::vector<std::vector<long>> nonempty_classes() const
    {
        std::vector<std::vector<long>> cs;
        for (const auto& [c, b] : basis_) {
            (void)b;
            cs.push_back(c);
        }
        return cs;
    }

    /// The projector P_rbar = prod_i (1/m_i) sum_t zeta_i^{-r_i t} sigma_i^t.
    static GElement project(const AutomorphismSet& auts, const GradingLattice& lat,
                            const FieldPtr& f, const std::vector<long>& rbar,
                            const GElement& x)
    {
        GElement y = x;
        for (int i = 0; i < lat.n(); ++i) {
            const long mi = lat.order(i);
            GElement acc;
            for (long t = 0; t < mi; ++t) {
                const CycScalar w = zeta_power(f, mi, -rbar[i] * t);
                acc = acc + auts.apply_power(i, t, y) * w;
            }
            y = acc * CycScalar::from_rational(f, rat(1, mi));
        }
        return y;
    }

    /// Membership test: x lies in g(rbar) iff the projector fixes it.
    static bool contains(const AutomorphismSet& auts, const GradingLattice& lat,
                         const FieldPtr& f, const std::vector<long>& rbar, const GElement& x)
    {
        return project(auts, lat, f, rbar, x) == x;
    }

private:
    std::map<std::vector<long>, std::vector<GElement>> basis_;
};

} // namespace healie
