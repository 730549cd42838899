#include "ampcoh/state_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ampcoh {

namespace {

double xlogx(double p) { return p > kEigenFloor ? p * std::log(p) : 0.0; }

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DomainError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                          " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

// ---------- PureState ----------

PureState::PureState(CVector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() < 2) {
        throw DomainError("PureState: dimension must be at least 2");
    }
    const double norm2 = amps_.squaredNorm();
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kNormTolerance) {
        throw DomainError("PureState: amplitudes not normalized (sum |c|^2 = " +
                          std::to_string(norm2) + ")");
    }
}

PureState PureState::uniform(std::size_t n_dim) {
    const auto n = static_cast<Eigen::Index>(n_dim);
    return PureState(CVector::Constant(n, Complex(1.0 / std::sqrt(static_cast<double>(n_dim)), 0.0)));
}

PureState PureState::basis(std::size_t n_dim, std::size_t index) {
    if (index >= n_dim) {
        throw DomainError("PureState::basis: index out of range");
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(n_dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(std::move(v));
}

PureState PureState::normalized(CVector v) {
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw DomainError("PureState::normalized: zero or non-finite vector");
    }
    v /= norm;
    return PureState(std::move(v));
}

RVector PureState::probabilities() const { return amps_.cwiseAbs2(); }

DensityMatrix PureState::projector() const { return DensityMatrix(amps_ * amps_.adjoint()); }

// ---------- DensityMatrix ----------

DensityMatrix::DensityMatrix(CMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 2) {
        throw DomainError("DensityMatrix: expected a square matrix of dimension >= 2");
    }
    if (!matrix_.allFinite()) {
        throw DomainError("DensityMatrix: non-finite entries");
    }
    const double herm = linalg::max_abs_diff(matrix_, matrix_.adjoint());
    if (herm > kNormTolerance) {
        throw DomainError("DensityMatrix: not Hermitian (defect " + std::to_string(herm) + ")");
    }
    // Symmetrize away the sub-tolerance antihermitian part.
    matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
    const double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > kNormTolerance) {
        throw DomainError("DensityMatrix: trace " + std::to_string(tr) + " != 1");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_, Eigen::EigenvaluesOnly);
    eigenvalues_ = es.eigenvalues();
    if (eigenvalues_.minCoeff() < -kNormTolerance) {
        throw DomainError("DensityMatrix: negative eigenvalue " +
                          std::to_string(eigenvalues_.minCoeff()));
    }
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n_dim) {
    const auto n = static_cast<Eigen::Index>(n_dim);
    return DensityMatrix(CMatrix::Identity(n, n) / static_cast<double>(n_dim));
}

DensityMatrix DensityMatrix::from_diagonal(std::span<const double> weights) {
    const auto n = static_cast<Eigen::Index>(weights.size());
    CMatrix m = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = weights[static_cast<std::size_t>(i)];
    }
    return DensityMatrix(std::move(m));
}

RVector DensityMatrix::diagonal() const { return matrix_.diagonal().real(); }

DensityMatrix DensityMatrix::dephased() const {
    const RVector p = diagonal();
    return from_diagonal(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
}

// ---------- MarkedSet ----------

MarkedSet::MarkedSet(std::size_t n_dim, std::vector<std::size_t> marked)
    : n_dim_(n_dim), marked_(std::move(marked)), is_marked_(n_dim, false) {
    if (n_dim_ < 2) {
        throw DomainError("MarkedSet: dimension must be at least 2");
    }
    std::sort(marked_.begin(), marked_.end());
    if (marked_.empty()) {
        throw DomainError("MarkedSet: at least one marked item is required");
    }
    if (std::adjacent_find(marked_.begin(), marked_.end()) != marked_.end()) {
        throw DomainError("MarkedSet: duplicate marked index");
    }
    if (marked_.back() >= n_dim_) {
        throw DomainError("MarkedSet: marked index " + std::to_string(marked_.back()) +
                          " out of range for N = " + std::to_string(n_dim_));
    }
    if (marked_.size() == n_dim_) {
        throw DomainError("MarkedSet: every item is marked; the unmarked set must be non-empty");
    }
    for (auto x : marked_) is_marked_[x] = true;
    unmarked_.reserve(n_dim_ - marked_.size());
    for (std::size_t y = 0; y < n_dim_; ++y) {
        if (!is_marked_[y]) unmarked_.push_back(y);
    }
}

MarkedSet MarkedSet::first(std::size_t n_dim, std::size_t m) {
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    return MarkedSet(n_dim, std::move(idx));
}

MarkedSet MarkedSet::complement() const { return MarkedSet(n_dim_, unmarked_); }

// ---------- entropies and friends ----------

double shannon_entropy(std::span<const double> p) {
    double h = 0.0;
    for (double v : p) h -= xlogx(v);
    return h + 0.0;
}

double binary_entropy(double p) { return 0.0 - xlogx(p) - xlogx(1.0 - p); }

double von_neumann_entropy(const DensityMatrix& rho) {
    const RVector& ev = rho.eigenvalues();
    return shannon_entropy(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())));
}

double shannon_entropy_diag(const DensityMatrix& rho) {
    const RVector p = rho.diagonal();
    return shannon_entropy(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
}

RelativeEntropy quantum_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho.dim(), sigma.dim(), "quantum_relative_entropy");
    Eigen::SelfAdjointEigenSolver<CMatrix> er(rho.matrix());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sigma.matrix());
    const RVector& lr = er.eigenvalues();
    const RVector& ls = es.eigenvalues();

    // Support of sigma: eigenvectors with eigenvalue above the floor.
    std::vector<Eigen::Index> sigma_support;
    for (Eigen::Index j = 0; j < ls.size(); ++j) {
        if (ls(j) > kEigenFloor) sigma_support.push_back(j);
    }

    double value = 0.0;
    for (Eigen::Index i = 0; i < lr.size(); ++i) {
        if (lr(i) <= kEigenFloor) continue;
        const auto ri = er.eigenvectors().col(i);
        double inside = 0.0;
        double cross = 0.0;
        for (auto j : sigma_support) {
            const double overlap = std::norm(es.eigenvectors().col(j).dot(ri));
            inside += overlap;
            cross += overlap * std::log(ls(j));
        }
        if (inside < 1.0 - 1e-9) {
            return RelativeEntropy{0.0, true};
        }
        value += lr(i) * std::log(lr(i)) - lr(i) * cross;
    }
    return RelativeEntropy{std::max(value, 0.0), false};
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho.dim(), sigma.dim(), "fidelity");
    // Trace norm of sqrt(rho) sqrt(sigma) from singular values: symmetric in
    // the arguments by construction. Eigenvalues at noise level are dropped,
    // since their square roots would otherwise leak ~1e-8 into the result.
    auto support_sqrt = [](const DensityMatrix& d) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(d.matrix());
        const RVector root = es.eigenvalues().unaryExpr(
            [](double v) { return v > kEigenFloor ? std::sqrt(v) : 0.0; });
        return CMatrix(es.eigenvectors() * root.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint());
    };
    const CMatrix prod = support_sqrt(rho) * support_sqrt(sigma);
    const double tn = Eigen::BDCSVD<CMatrix>(prod).singularValues().sum();
    return std::clamp(tn * tn, 0.0, 1.0);
}

double index_of_coincidence(const DensityMatrix& rho) { return rho.diagonal().squaredNorm(); }

double success_probability(const DensityMatrix& rho, const MarkedSet& m) {
    require_same_dim(rho.dim(), m.dim(), "success_probability");
    double p = 0.0;
    for (auto x : m.marked()) p += rho.matrix()(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)).real();
    return p;
}

double success_probability(const PureState& psi, const MarkedSet& m) {
    require_same_dim(psi.dim(), m.dim(), "success_probability");
    double p = 0.0;
    for (auto x : m.marked()) p += std::norm(psi[x]);
    return p;
}

double purity(const DensityMatrix& rho) {
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return rho.matrix().squaredNorm();
}

namespace linalg {

CMatrix sqrtm_psd(const CMatrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian);
    const RVector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * root.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double trace_sqrt_psd(const CMatrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

double unitarity_defect(const CMatrix& u) {
    const CMatrix id = CMatrix::Identity(u.rows(), u.cols());
    return max_abs_diff(u.adjoint() * u, id);
}

}  // namespace linalg

}  // namespace ampcoh
