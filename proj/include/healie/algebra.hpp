#pragma once

#include <memory>

#include "healie/cyclotomic.hpp"
#include "healie/lattice.hpp"
#include "healie/simple_lie.hpp"

namespace healie {

/// A fully validated session: the coefficient field Q(zeta_N) with
/// N = lcm(m_i), the grading lattice, the simple algebra with its
/// automorphisms, and the eigenspace decomposition. Immutable and
/// shareable once constructed.
class TauAlgebra {
public:
    TauAlgebra(GradingLattice lattice, SimpleLieAlgebra lie, AutomorphismSet auts,
               long enumeration_bound = 10000)
        : lattice_(std::move(lattice)),
          lie_(std::move(lie)),
          auts_(std::move(auts)),
          field_(CycField::get(lattice_.field_order()))
    {
        if (auts_.count() != lattice_.n())
            throw ConfigError("TauAlgebra: expected " + std::to_string(lattice_.n()) +
                              " automorphisms, got " + std::to_string(auts_.count()));
        for (int i = 0; i < lattice_.n(); ++i)
            if (auts_.order(i) != lattice_.order(i))
                throw ConfigError("TauAlgebra: automorphism order mismatch in slot " +
                                  std::to_string(i + 1));
        auts_.validate(lie_, field_);
        eig_ = Eigenspaces(lie_, auts_, lattice_, field_, enumeration_bound);
    }

    const GradingLattice& lattice() const { return lattice_; }
    const SimpleLieAlgebra& lie() const { return lie_; }
    const AutomorphismSet& auts() const { return auts_; }
    const Eigenspaces& eigenspaces() const { return eig_; }
    const FieldPtr& field() const { return field_; }

    int n() const { return lattice_.n(); }
    int k() const { return lattice_.k(); }

    CycScalar scalar(const Rational& q) const { return CycScalar::from_rational(field_, q); }
    CycScalar scalar(long q) const { return scalar(rat(q)); }
    CycScalar zero() const { return CycScalar::zero(field_); }
    CycScalar one() const { return CycScalar::one(field_); }

    /// zeta_i^{r}: the eigenvalue of sigma_i on g(rbar) components.
    CycScalar zeta(int i, long r) const { return zeta_power(field_, lattice_.order(i), r); }

    bool in_eigenspace(const std::vector<long>& rbar, const GElement& x) const
    {
        return Eigenspaces::contains(auts_, lattice_, field_, rbar, x);
    }

    std::vector<CycScalar> zero_vector() const
    {
        return std::vector<CycScalar>(static_cast<std::size_t>(n()), zero());
    }

    std::vector<CycScalar> field_vector(const LatticeVector& v) const
    {
        std::vector<CycScalar> u;
        u.reserve(static_cast<std::size_t>(v.size()));
        for (int i = 0; i < v.size(); ++i)
            u.push_back(scalar(v[i]));
        return u;
    }

private:
    GradingLattice lattice_;
    SimpleLieAlgebra lie_;
    AutomorphismSet auts_;
    FieldPtr field_;
    Eigenspaces eig_;
};

using AlgebraPtr = std::shared_ptr<const TauAlgebra>;

} // namespace healie
