#include "ampcoh/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ampcoh {

IncoherentState::IncoherentState(RVector weights) : weights_(std::move(weights)) {
    if (weights_.size() < 1 || weights_.minCoeff() < 0.0) {
        throw DomainError("IncoherentState: weights must be non-negative");
    }
    if (std::abs(weights_.sum() - 1.0) > 1e-12) {
        throw DomainError("IncoherentState: weights sum to " + std::to_string(weights_.sum()));
    }
}

DensityMatrix IncoherentState::to_density() const {
    return DensityMatrix::from_diagonal(
        std::span<const double>(weights_.data(), static_cast<std::size_t>(weights_.size())));
}

double relative_entropy_of_coherence(const DensityMatrix& rho) {
    const double c1 = shannon_entropy_diag(rho) - von_neumann_entropy(rho);
    // Rounding can leave tiny negatives on incoherent inputs.
    return c1 < 0.0 && c1 > -1e-9 ? 0.0 : c1;
}

double relative_entropy_of_coherence(const PureState& psi) {
    const RVector p = psi.probabilities();
    return shannon_entropy(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
}

double l1_coherence(const DensityMatrix& rho) {
    const CMatrix& m = rho.matrix();
    return m.cwiseAbs().sum() - m.diagonal().cwiseAbs().sum();
}

double l1_coherence(const PureState& psi) {
    // sum_{x,y} |c_x c_y| = (sum |c_x|)^2, minus the diagonal which sums to 1.
    const double s = psi.amplitudes().cwiseAbs().sum();
    return std::max(s * s - 1.0, 0.0);
}

double geometric_coherence_pure(const PureState& psi) {
    return 1.0 - psi.probabilities().maxCoeff();
}

namespace detail {

RVector project_to_simplex(const RVector& v) {
    const auto n = v.size();
    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumsum = 0.0;
    double theta = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        cumsum += u[static_cast<std::size_t>(j)];
        const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
        if (u[static_cast<std::size_t>(j)] - t > 0.0) theta = t;
    }
    RVector w = (v.array() - theta).cwiseMax(0.0);
    return w / w.sum();
}

}  // namespace detail

namespace {

// sqrt F(rho, delta) and its gradient in delta, from a single
// eigendecomposition of B = sqrt(rho) delta sqrt(rho).
class RootFidelity {
public:
    explicit RootFidelity(const DensityMatrix& rho) : sqrt_rho_(linalg::sqrtm_psd(rho.matrix())) {}

    double value(const RVector& delta) const {
        return linalg::trace_sqrt_psd(inner(delta));
    }

    double value_and_gradient(const RVector& delta, RVector& grad) const {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(inner(delta));
        const RVector& b = es.eigenvalues();
        const CMatrix w = sqrt_rho_ * es.eigenvectors();
        grad = RVector::Zero(delta.size());
        double f = 0.0;
        for (Eigen::Index i = 0; i < b.size(); ++i) {
            // Near-null directions of B that sqrt(rho) does not annihilate have
            // an unbounded derivative; flooring keeps it large so the iterate
            // leaves the face instead of stalling there.
            const double root = std::sqrt(std::max(b(i), kSupportFloor));
            if (b(i) > kSupportFloor) f += std::sqrt(b(i));
            grad += w.col(i).cwiseAbs2() / (2.0 * root);
        }
        return f;
    }

private:
    static constexpr double kSupportFloor = 1e-14;

    CMatrix inner(const RVector& delta) const {
        CMatrix b = sqrt_rho_ * delta.cast<Complex>().asDiagonal() * sqrt_rho_;
        return 0.5 * (b + b.adjoint());
    }

    CMatrix sqrt_rho_;
};

}  // namespace

GeometricCoherenceResult geometric_coherence_mixed(const DensityMatrix& rho,
                                                   const GeometricOptions& options) {
    if (!(options.tolerance > 0.0)) {
        throw DomainError("geometric_coherence_mixed: tolerance must be positive");
    }
    const RootFidelity objective(rho);

    RVector delta = detail::project_to_simplex(rho.diagonal());
    RVector grad;
    double f = objective.value_and_gradient(delta, grad);
    double step = 1.0;
    int iter = 0;
    bool converged = false;

    while (iter < options.max_iterations) {
        ++iter;
        double s = std::min(step * 2.0, 1e8);
        RVector candidate;
        double fc = f;
        bool accepted = false;
        while (s > 1e-18) {
            candidate = detail::project_to_simplex(delta + s * grad);
            const double ascent = grad.dot(candidate - delta);
            fc = objective.value(candidate);
            if (fc >= f + 1e-4 * ascent) {
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted || (candidate - delta).lpNorm<Eigen::Infinity>() < 1e-15) {
            converged = true;  // projected gradient vanishes to working precision
            break;
        }
        const double improvement = fc - f;
        delta = std::move(candidate);
        step = s;
        f = objective.value_and_gradient(delta, grad);
        if (improvement < options.tolerance) {
            converged = true;
            break;
        }
    }

    const double max_fidelity = std::clamp(f * f, 0.0, 1.0);
    return GeometricCoherenceResult{1.0 - max_fidelity, IncoherentState(std::move(delta)),
                                    max_fidelity, iter, converged};
}

double geometric_coherence_lower_bound(const DensityMatrix& rho) {
    const double n = static_cast<double>(rho.dim());
    const double gap = purity(rho) - index_of_coincidence(rho);
    const double radicand = std::max(0.0, 1.0 - n / (n - 1.0) * gap);
    return (n - 1.0) / n * (1.0 - std::sqrt(radicand));
}

}  // namespace ampcoh
