#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ampcoh/errors.hpp"

namespace ampcoh {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kEigenFloor = 1e-12;

class DensityMatrix;

/// Normalized amplitude vector over the computational basis {|0>, ..., |N-1>}.
class PureState {
public:
    /// Throws DomainError unless N >= 2 and the vector is normalized within 1e-10.
    explicit PureState(CVector amplitudes);

    static PureState uniform(std::size_t n_dim);
    static PureState basis(std::size_t n_dim, std::size_t index);
    /// Normalizes `v` first; throws if it is (numerically) zero.
    static PureState normalized(CVector v);

    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const CVector& amplitudes() const { return amps_; }
    Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

    /// |c_x|^2 for every basis index.
    RVector probabilities() const;
    /// Lossless promotion to |psi><psi|.
    DensityMatrix projector() const;

private:
    CVector amps_;
};

/// Hermitian, positive-semidefinite, unit-trace matrix. The spectrum is
/// computed once at construction and cached.
class DensityMatrix {
public:
    /// Throws DomainError unless Hermitian (1e-10 elementwise), eigenvalues
    /// >= -1e-10 and trace 1 within 1e-10.
    explicit DensityMatrix(CMatrix matrix);

    static DensityMatrix maximally_mixed(std::size_t n_dim);
    static DensityMatrix from_diagonal(std::span<const double> weights);

    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    const CMatrix& matrix() const { return matrix_; }
    /// p(x) = <x|rho|x>.
    RVector diagonal() const;
    /// Ascending eigenvalues.
    const RVector& eigenvalues() const { return eigenvalues_; }
    /// rho with every off-diagonal element set to zero.
    DensityMatrix dephased() const;

private:
    CMatrix matrix_;
    RVector eigenvalues_;
};

/// The marked subset M of {0..N-1} together with its complement.
class MarkedSet {
public:
    /// Sorts and validates the indices; throws on duplicates, out-of-range
    /// entries or an empty set.
    MarkedSet(std::size_t n_dim, std::vector<std::size_t> marked);

    /// {0, 1, ..., m-1}.
    static MarkedSet first(std::size_t n_dim, std::size_t m);

    std::size_t dim() const { return n_dim_; }
    std::size_t count() const { return marked_.size(); }
    std::size_t unmarked_count() const { return unmarked_.size(); }
    const std::vector<std::size_t>& marked() const { return marked_; }
    const std::vector<std::size_t>& unmarked() const { return unmarked_; }
    bool contains(std::size_t x) const { return is_marked_[x]; }
    MarkedSet complement() const;
    /// The standing assumption is 1 <= M <= N/2; larger sets are legal but
    /// callers are expected to warn.
    bool exceeds_half() const { return 2 * marked_.size() > n_dim_; }

private:
    std::size_t n_dim_;
    std::vector<std::size_t> marked_;
    std::vector<std::size_t> unmarked_;
    std::vector<bool> is_marked_;
};

/// Relative entropy value that may be +infinity. `infinite` is the
/// distinguished sentinel; `nats` is meaningful only when it is false.
struct RelativeEntropy {
    double nats = 0.0;
    bool infinite = false;
};

// Information-theoretic primitives. All logarithms are natural.

/// -sum p ln p with 0 ln 0 = 0; entries below 1e-12 count as zero.
double shannon_entropy(std::span<const double> p);
/// h(p) = -p ln p - (1-p) ln(1-p).
double binary_entropy(double p);

double von_neumann_entropy(const DensityMatrix& rho);
double shannon_entropy_diag(const DensityMatrix& rho);
RelativeEntropy quantum_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
/// Jozsa fidelity ||sqrt(rho) sqrt(sigma)||_1^2 (the squared convention).
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double index_of_coincidence(const DensityMatrix& rho);
double success_probability(const DensityMatrix& rho, const MarkedSet& m);
double success_probability(const PureState& psi, const MarkedSet& m);
/// tr(rho^2).
double purity(const DensityMatrix& rho);

namespace linalg {

/// Hermitian square root; negative eigenvalues are clamped at zero.
CMatrix sqrtm_psd(const CMatrix& hermitian);
/// Trace of the square root of a Hermitian PSD matrix (clamped).
double trace_sqrt_psd(const CMatrix& hermitian);
/// max_ij |A_ij - B_ij|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double unitarity_defect(const CMatrix& u);

}  // namespace linalg

}  // namespace ampcoh
