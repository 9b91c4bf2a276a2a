#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "handshake/errors.hpp"

// Minimal dense complex linear algebra over finite-dimensional Hilbert spaces
// with labeled basis states. Dimensions stay small (<= 16), so everything is
// dense and exact; there is no attempt at scale.

namespace handshake::qcore {

using Complex = std::complex<double>;

/// Normalization tolerance at construction time.
inline constexpr double kNormTolerance = 1e-12;
/// Tolerance for algebraic checks after arithmetic (projector laws, unitarity).
inline constexpr double kAlgebraTolerance = 1e-10;

using BasisLabel = std::string;

namespace detail {
inline void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw ParameterError(std::string(what) + " must be finite");
    }
}
inline void require_finite(const Complex& z, const char* what) {
    require_finite(z.real(), what);
    require_finite(z.imag(), what);
}
}  // namespace detail

/// An ordered set of unique basis labels defining a Hilbert space.
/// Shared immutably between every state and operator living in the space.
class Basis {
public:
    static std::shared_ptr<const Basis> make(std::vector<BasisLabel> labels) {
        if (labels.empty()) {
            throw ParameterError("a basis needs at least one label");
        }
        auto sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw ParameterError("basis labels must be unique");
        }
        return std::shared_ptr<const Basis>(new Basis(std::move(labels)));
    }

    std::size_t dimension() const { return labels_.size(); }
    const BasisLabel& label(std::size_t i) const { return labels_[i]; }
    const std::vector<BasisLabel>& labels() const { return labels_; }

    std::optional<std::size_t> index_of(const BasisLabel& label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - labels_.begin());
    }

    friend bool operator==(const Basis& a, const Basis& b) { return a.labels_ == b.labels_; }

private:
    explicit Basis(std::vector<BasisLabel> labels) : labels_(std::move(labels)) {}
    std::vector<BasisLabel> labels_;
};

using BasisPtr = std::shared_ptr<const Basis>;

inline bool same_space(const BasisPtr& a, const BasisPtr& b) {
    return a == b || *a == *b;
}

inline void require_same_space(const BasisPtr& a, const BasisPtr& b, const char* op) {
    if (!same_space(a, b)) {
        throw SpaceMismatchError(std::string(op) + ": operands live in different spaces");
    }
}

/// Product space with pairwise concatenated labels, row-major order.
inline BasisPtr tensor_basis(const BasisPtr& a, const BasisPtr& b) {
    std::vector<BasisLabel> labels;
    labels.reserve(a->dimension() * b->dimension());
    for (const auto& la : a->labels()) {
        for (const auto& lb : b->labels()) {
            labels.push_back(la + lb);
        }
    }
    return Basis::make(std::move(labels));
}

/// A finite-dimensional complex vector over a labeled basis; the mathematical
/// content of an offer wave. Immutable after construction.
class StateVector {
public:
    StateVector(BasisPtr space, std::vector<Complex> amplitudes)
        : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
        if (!space_ || amplitudes_.size() != space_->dimension()) {
            throw ParameterError("amplitude count must match the basis dimension");
        }
        for (const auto& a : amplitudes_) {
            detail::require_finite(a, "state amplitude");
        }
    }

    static StateVector basis_state(const BasisPtr& space, const BasisLabel& label) {
        auto idx = space->index_of(label);
        if (!idx) {
            throw ParameterError("no basis label '" + label + "' in this space");
        }
        std::vector<Complex> amps(space->dimension(), Complex(0.0, 0.0));
        amps[*idx] = Complex(1.0, 0.0);
        return StateVector(space, std::move(amps));
    }

    const BasisPtr& space() const { return space_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    const Complex& amplitude(std::size_t i) const { return amplitudes_[i]; }
    const std::vector<Complex>& amplitudes() const { return amplitudes_; }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& a : amplitudes_) s += std::norm(a);
        return s;
    }
    double norm() const { return std::sqrt(norm_squared()); }

    bool is_normalized(double tol = kNormTolerance) const {
        return std::abs(norm_squared() - 1.0) <= tol;
    }

    StateVector normalized() const {
        const double n = norm();
        if (n < kNormTolerance) {
            throw NormalizationError("cannot normalize a (numerically) zero vector");
        }
        std::vector<Complex> amps(amplitudes_);
        for (auto& a : amps) a /= n;
        return StateVector(space_, std::move(amps));
    }

private:
    BasisPtr space_;
    std::vector<Complex> amplitudes_;
};

inline void require_normalized(const StateVector& v, const char* op) {
    if (!v.is_normalized()) {
        throw NormalizationError(std::string(op) + ": state is not normalized");
    }
}

/// Dense square operator over a labeled space. The kind records what the
/// caller claims the matrix to be; projector and unitary claims are verified
/// algebraically at construction.
class Operator {
public:
    enum class Kind { General, Projector, Unitary };

    static Operator general(BasisPtr space, std::vector<Complex> entries) {
        return Operator(std::move(space), std::move(entries), Kind::General);
    }

    static Operator projector(BasisPtr space, std::vector<Complex> entries) {
        Operator op(std::move(space), std::move(entries), Kind::Projector);
        op.check_projector();
        return op;
    }

    static Operator unitary(BasisPtr space, std::vector<Complex> entries) {
        Operator op(std::move(space), std::move(entries), Kind::Unitary);
        op.check_unitary();
        return op;
    }

    static Operator identity(const BasisPtr& space) {
        const std::size_t d = space->dimension();
        std::vector<Complex> entries(d * d, Complex(0.0, 0.0));
        for (std::size_t i = 0; i < d; ++i) entries[i * d + i] = Complex(1.0, 0.0);
        return Operator(space, std::move(entries), Kind::Unitary);
    }

    const BasisPtr& space() const { return space_; }
    std::size_t dimension() const { return dim_; }
    Kind kind() const { return kind_; }
    bool is_projector() const { return kind_ == Kind::Projector; }
    bool is_unitary() const { return kind_ == Kind::Unitary; }

    const Complex& entry(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    const std::vector<Complex>& entries() const { return entries_; }

private:
    Operator(BasisPtr space, std::vector<Complex> entries, Kind kind)
        : space_(std::move(space)),
          dim_(space_ ? space_->dimension() : 0),
          entries_(std::move(entries)),
          kind_(kind) {
        if (!space_ || entries_.size() != dim_ * dim_) {
            throw ParameterError("operator entries must form a square matrix over its space");
        }
        for (const auto& e : entries_) {
            detail::require_finite(e, "operator entry");
        }
    }

    void check_projector() const {
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                if (std::abs(entry(i, j) - std::conj(entry(j, i))) > kAlgebraTolerance) {
                    throw InvalidOperatorError("projector is not Hermitian");
                }
                Complex pp(0.0, 0.0);
                for (std::size_t k = 0; k < dim_; ++k) pp += entry(i, k) * entry(k, j);
                if (std::abs(pp - entry(i, j)) > kAlgebraTolerance) {
                    throw InvalidOperatorError("projector is not idempotent");
                }
            }
        }
    }

    void check_unitary() const {
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                Complex dot(0.0, 0.0);
                for (std::size_t k = 0; k < dim_; ++k) {
                    dot += std::conj(entry(k, i)) * entry(k, j);
                }
                const Complex expect = (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
                if (std::abs(dot - expect) > kAlgebraTolerance) {
                    throw InvalidOperatorError("operator is not unitary");
                }
            }
        }
    }

    BasisPtr space_;
    std::size_t dim_;
    std::vector<Complex> entries_;
    Kind kind_;
};

/// <a|b> = sum conj(a_k) b_k. Conjugate-linear in the first argument.
inline Complex inner_product(const StateVector& a, const StateVector& b) {
    require_same_space(a.space(), b.space(), "inner_product");
    Complex s(0.0, 0.0);
    for (std::size_t k = 0; k < a.dimension(); ++k) {
        s += std::conj(a.amplitude(k)) * b.amplitude(k);
    }
    return s;
}

inline StateVector tensor(const StateVector& a, const StateVector& b) {
    auto space = tensor_basis(a.space(), b.space());
    std::vector<Complex> amps;
    amps.reserve(a.dimension() * b.dimension());
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        for (std::size_t j = 0; j < b.dimension(); ++j) {
            amps.push_back(a.amplitude(i) * b.amplitude(j));
        }
    }
    return StateVector(std::move(space), std::move(amps));
}

inline Operator tensor(const Operator& a, const Operator& b) {
    auto space = tensor_basis(a.space(), b.space());
    const std::size_t da = a.dimension();
    const std::size_t db = b.dimension();
    const std::size_t d = da * db;
    std::vector<Complex> entries(d * d);
    for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t k = 0; k < db; ++k) {
            for (std::size_t j = 0; j < da; ++j) {
                for (std::size_t l = 0; l < db; ++l) {
                    entries[(i * db + k) * d + (j * db + l)] = a.entry(i, j) * b.entry(k, l);
                }
            }
        }
    }
    if (a.is_projector() && b.is_projector()) {
        return Operator::projector(std::move(space), std::move(entries));
    }
    if (a.is_unitary() && b.is_unitary()) {
        return Operator::unitary(std::move(space), std::move(entries));
    }
    return Operator::general(std::move(space), std::move(entries));
}

inline StateVector apply(const Operator& op, const StateVector& v) {
    require_same_space(op.space(), v.space(), "apply");
    const std::size_t d = v.dimension();
    std::vector<Complex> out(d, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        Complex s(0.0, 0.0);
        for (std::size_t j = 0; j < d; ++j) s += op.entry(i, j) * v.amplitude(j);
        out[i] = s;
    }
    return StateVector(v.space(), std::move(out));
}

/// Matrix product a*b. The result is flagged unitary only when both factors are.
inline Operator compose(const Operator& a, const Operator& b) {
    require_same_space(a.space(), b.space(), "compose");
    const std::size_t d = a.dimension();
    std::vector<Complex> entries(d * d, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            Complex s(0.0, 0.0);
            for (std::size_t k = 0; k < d; ++k) s += a.entry(i, k) * b.entry(k, j);
            entries[i * d + j] = s;
        }
    }
    if (a.is_unitary() && b.is_unitary()) {
        return Operator::unitary(a.space(), std::move(entries));
    }
    return Operator::general(a.space(), std::move(entries));
}

/// Born weight <v|P|v> of a projector on a normalized state, clamped to [0, 1].
inline double projector_weight(const Operator& p, const StateVector& v) {
    if (!p.is_projector()) {
        throw InvalidOperatorError("projector_weight needs an operator flagged as projector");
    }
    require_same_space(p.space(), v.space(), "projector_weight");
    require_normalized(v, "projector_weight");
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < v.dimension(); ++i) {
        Complex row(0.0, 0.0);
        for (std::size_t j = 0; j < v.dimension(); ++j) row += p.entry(i, j) * v.amplitude(j);
        s += std::conj(v.amplitude(i)) * row;
    }
    return std::clamp(s.real(), 0.0, 1.0);
}

/// (I - sum P_i)|v> renormalized: the part of the offer wave surviving a failed
/// absorption stage. Returns nullopt when nothing survives (residual norm below
/// the construction tolerance). The projectors must be mutually orthogonal.
inline std::optional<StateVector> complement_renormalize(std::span<const Operator> absorbed,
                                                         const StateVector& v) {
    for (const auto& p : absorbed) {
        if (!p.is_projector()) {
            throw InvalidAbsorberSetError("complement_renormalize needs projector operators");
        }
        require_same_space(p.space(), v.space(), "complement_renormalize");
    }
    const std::size_t d = v.dimension();
    for (std::size_t a = 0; a + 1 < absorbed.size(); ++a) {
        for (std::size_t b = a + 1; b < absorbed.size(); ++b) {
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) {
                    Complex s(0.0, 0.0);
                    for (std::size_t k = 0; k < d; ++k) {
                        s += absorbed[a].entry(i, k) * absorbed[b].entry(k, j);
                    }
                    if (std::abs(s) > kAlgebraTolerance) {
                        throw InvalidAbsorberSetError(
                            "complement_renormalize: projectors are not mutually orthogonal");
                    }
                }
            }
        }
    }

    std::vector<Complex> residual(v.amplitudes());
    for (const auto& p : absorbed) {
        const StateVector projected = apply(p, v);
        for (std::size_t i = 0; i < d; ++i) residual[i] -= projected.amplitude(i);
    }
    StateVector rest(v.space(), std::move(residual));
    if (rest.norm() < kNormTolerance) {
        return std::nullopt;
    }
    return rest.normalized();
}

inline std::optional<StateVector> complement_renormalize(const std::vector<Operator>& absorbed,
                                                         const StateVector& v) {
    return complement_renormalize(std::span<const Operator>(absorbed), v);
}

/// Rank-1 projector |phi><phi| onto a normalized state.
inline Operator projector_onto(const StateVector& phi) {
    require_normalized(phi, "projector_onto");
    const std::size_t d = phi.dimension();
    std::vector<Complex> entries(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            entries[i * d + j] = phi.amplitude(i) * std::conj(phi.amplitude(j));
        }
    }
    return Operator::projector(phi.space(), std::move(entries));
}

/// Diagonal projector onto the subspace spanned by the given basis labels.
inline Operator projector_onto_labels(const BasisPtr& space,
                                      const std::vector<BasisLabel>& labels) {
    const std::size_t d = space->dimension();
    std::vector<Complex> entries(d * d, Complex(0.0, 0.0));
    for (const auto& label : labels) {
        auto idx = space->index_of(label);
        if (!idx) {
            throw ParameterError("no basis label '" + label + "' in this space");
        }
        entries[*idx * d + *idx] = Complex(1.0, 0.0);
    }
    return Operator::projector(space, std::move(entries));
}

// Small standard gates, enough to assemble every scenario circuit.

inline Operator hadamard(const BasisPtr& space) {
    if (space->dimension() != 2) {
        throw ParameterError("hadamard is defined on 2-dimensional spaces");
    }
    const double a = 1.0 / std::sqrt(2.0);
    return Operator::unitary(space, {Complex(a, 0), Complex(a, 0), Complex(a, 0), Complex(-a, 0)});
}

inline Operator pauli_x(const BasisPtr& space) {
    if (space->dimension() != 2) {
        throw ParameterError("pauli_x is defined on 2-dimensional spaces");
    }
    return Operator::unitary(space, {Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)});
}

/// Diagonal phase gate diag(1, e^{i phi}).
inline Operator phase_gate(const BasisPtr& space, double phi) {
    if (space->dimension() != 2) {
        throw ParameterError("phase_gate is defined on 2-dimensional spaces");
    }
    detail::require_finite(phi, "phase");
    return Operator::unitary(space, {Complex(1, 0), Complex(0, 0), Complex(0, 0),
                                     Complex(std::cos(phi), std::sin(phi))});
}

/// Permutation unitary mapping basis state j to basis state perm[j].
inline Operator permutation(const BasisPtr& space, const std::vector<std::size_t>& perm) {
    const std::size_t d = space->dimension();
    if (perm.size() != d) {
        throw ParameterError("permutation size must match the space dimension");
    }
    std::vector<Complex> entries(d * d, Complex(0.0, 0.0));
    std::vector<bool> seen(d, false);
    for (std::size_t j = 0; j < d; ++j) {
        if (perm[j] >= d || seen[perm[j]]) {
            throw ParameterError("permutation must be a bijection on basis indices");
        }
        seen[perm[j]] = true;
        entries[perm[j] * d + j] = Complex(1.0, 0.0);
    }
    return Operator::unitary(space, std::move(entries));
}

}  // namespace handshake::qcore
