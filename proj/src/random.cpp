#include "ampcoh/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ampcoh {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over the pair.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

CMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = Complex(normal(rng), normal(rng));
    }
    return a;
}

DensityMatrix normalized_density(CMatrix m) {
    m = 0.5 * (m + m.adjoint()).eval();
    m /= m.trace().real();
    return DensityMatrix(std::move(m));
}

}  // namespace

PureState random_pure_state(std::size_t n, Rng& rng) {
    return PureState::normalized(gaussian_matrix(n, 1, rng).col(0));
}

PureState random_nonzero_state(std::size_t n, Rng& rng, double min_modulus) {
    std::uniform_real_distribution<double> modulus(min_modulus, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    CVector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double r = modulus(rng);
        v(i) = std::polar(r, phase(rng));
    }
    return PureState::normalized(std::move(v));
}

DensityMatrix random_density_matrix(std::size_t n, std::size_t rank, Rng& rng) {
    const CMatrix a = gaussian_matrix(n, std::max<std::size_t>(rank, 1), rng);
    return normalized_density(a * a.adjoint());
}

DensityMatrix random_near_diagonal(std::size_t n, double epsilon, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RVector p(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = unit(rng) + 1e-3;
    p /= p.sum();
    CMatrix m = CMatrix::Zero(p.size(), p.size());
    m.diagonal() = p.cast<Complex>();
    const CMatrix noise = gaussian_matrix(n, n, rng);
    CMatrix off = epsilon * (noise + noise.adjoint()) / 2.0;
    off.diagonal().setZero();
    // Scale the perturbation down until the result is PSD.
    for (int k = 0; k < 60; ++k) {
        const CMatrix candidate = m + off;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(candidate, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() >= 0.0) return normalized_density(candidate);
        off *= 0.5;
    }
    return normalized_density(m);
}

MarkedSet random_marked_set(std::size_t n, Rng& rng) {
    const std::size_t max_m = std::max<std::size_t>(1, n / 2);
    std::uniform_int_distribution<std::size_t> count(1, max_m);
    const std::size_t m = count(rng);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(m);
    return MarkedSet(n, std::move(idx));
}

}  // namespace ampcoh
