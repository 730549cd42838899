#pragma once

#include <cstddef>
#include <vector>

#include "ampcoh/state_core.hpp"

namespace ampcoh {

/// Diagonal density matrix sum_x w_x |x><x|.
class IncoherentState {
public:
    /// Throws DomainError unless every weight is >= 0 and they sum to 1 within 1e-12.
    explicit IncoherentState(RVector weights);

    std::size_t dim() const { return static_cast<std::size_t>(weights_.size()); }
    const RVector& weights() const { return weights_; }
    DensityMatrix to_density() const;

private:
    RVector weights_;
};

struct GeometricCoherenceResult {
    double value = 0.0;         ///< 1 - max_fidelity
    IncoherentState optimizer;  ///< argmax over the incoherent set
    double max_fidelity = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct GeometricOptions {
    double tolerance = 1e-8;  ///< stop once the objective improves by less than this
    int max_iterations = 10000;
};

/// C_1(rho) = S(rho_diag) - S(rho), in nats.
double relative_entropy_of_coherence(const DensityMatrix& rho);
double relative_entropy_of_coherence(const PureState& psi);

/// Sum of |<x|rho|y>| over x != y.
double l1_coherence(const DensityMatrix& rho);
double l1_coherence(const PureState& psi);

/// 1 - max_x |<x|psi>|^2.
double geometric_coherence_pure(const PureState& psi);

/// 1 - max_{delta incoherent} F(rho, delta).
///
/// sqrt F(rho, delta) = tr sqrt(sqrt(rho) delta sqrt(rho)) is concave in delta,
/// so projected-gradient ascent over the probability simplex (Euclidean
/// projection, backtracking line search, warm start at diag(rho)) reaches the
/// global maximum. The gradient is analytic:
///   d/d delta_x = 1/2 <x| sqrt(rho) B^{-1/2} sqrt(rho) |x>,
///   B = sqrt(rho) delta sqrt(rho),
/// with the inverse taken on the support of B. A result with
/// converged == false is returned if the iteration cap is hit.
GeometricCoherenceResult geometric_coherence_mixed(const DensityMatrix& rho,
                                                   const GeometricOptions& options = {});

/// Index-of-coincidence lower bound on C_g. The radicand is clamped at zero;
/// the bound itself is returned unclamped and may be negative.
double geometric_coherence_lower_bound(const DensityMatrix& rho);

namespace detail {

/// Euclidean projection onto {w >= 0, sum w = 1}.
RVector project_to_simplex(const RVector& v);

}  // namespace detail

}  // namespace ampcoh
