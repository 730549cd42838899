#include "ampcoh/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace ampcoh {

namespace {

// p ln(count / p), zero at p = 0.
double weighted_log_ratio(double p, double count) {
    return p > kEigenFloor ? p * std::log(count / p) : 0.0;
}

BoundReport finish(BoundReport r) {
    r.slack_lower = r.value - r.lower;
    r.slack_upper = r.upper - r.value;
    return r;
}

void require_match(std::size_t a, std::size_t b) {
    if (a != b) throw DomainError("bounds: state and marked set dimensions differ");
}

}  // namespace

const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::Cg: return "Cg";
        case Quantity::C1: return "C1";
        case Quantity::Cl1: return "Cl1";
    }
    return "?";
}

const char* to_string(OmegaBranch b) { return b == OmegaBranch::Marked ? "marked" : "unmarked"; }

double cg_lower_from_success(double p_suc, double purity, std::size_t n) {
    const double nd = static_cast<double>(n);
    const double gap = purity - p_suc * p_suc - (1.0 - p_suc) * (1.0 - p_suc);
    const double radicand = std::max(0.0, 1.0 - nd / (nd - 1.0) * gap);
    return (nd - 1.0) / nd * (1.0 - std::sqrt(radicand));
}

double cg_upper_from_success(double p_suc, std::size_t m) {
    return 1.0 - p_suc / static_cast<double>(m);
}

double c1_upper_from_success(double p_suc, double entropy, std::size_t m, std::size_t n) {
    return weighted_log_ratio(p_suc, static_cast<double>(m)) +
           weighted_log_ratio(1.0 - p_suc, static_cast<double>(n - m)) - entropy;
}

double c1_lower_binary(double p_suc, double entropy) { return binary_entropy(p_suc) - entropy; }

double c1_lower_omega(double omega, double entropy) { return -std::log(omega) - entropy; }

OmegaBranch omega_branch(const RVector& p, const MarkedSet& m) {
    const double pmax = p.maxCoeff();
    for (auto x : m.marked()) {
        if (p(static_cast<Eigen::Index>(x)) >= pmax - 1e-12) return OmegaBranch::Marked;
    }
    return OmegaBranch::Unmarked;
}

BoundReport prop1_bounds(const DensityMatrix& rho, const MarkedSet& m, std::optional<double> cg) {
    require_match(rho.dim(), m.dim());
    const double p = success_probability(rho, m);
    const double pur = purity(rho);
    double value = 0.0;
    if (cg) {
        value = *cg;
    } else if (pur > 1.0 - 1e-12) {
        // Rank one: use the dominant eigenvector.
        Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
        value = 1.0 - es.eigenvectors().col(rho.matrix().rows() - 1).cwiseAbs2().maxCoeff();
    } else {
        value = geometric_coherence_mixed(rho).value;
    }
    BoundReport r;
    r.quantity = Quantity::Cg;
    r.value = value;
    r.lower = cg_lower_from_success(p, pur, m.dim());
    r.upper = cg_upper_from_success(p, m.count());
    r.lower_active = p * p + (1.0 - p) * (1.0 - p) <= pur + 1e-12;
    return finish(r);
}

BoundReport prop1_bounds(const PureState& psi, const MarkedSet& m) {
    require_match(psi.dim(), m.dim());
    const double p = success_probability(psi, m);
    BoundReport r;
    r.quantity = Quantity::Cg;
    r.value = geometric_coherence_pure(psi);
    r.lower = cg_lower_from_success(p, 1.0, m.dim());
    r.upper = cg_upper_from_success(p, m.count());
    r.lower_active = true;
    return finish(r);
}

FidelityBoundCheck fidelity_success_bound(const DensityMatrix& rho, const MarkedSet& m,
                                          std::optional<double> max_fidelity) {
    require_match(rho.dim(), m.dim());
    const double f = max_fidelity ? *max_fidelity : geometric_coherence_mixed(rho).max_fidelity;
    const double slack = static_cast<double>(m.count()) * f - success_probability(rho, m);
    return FidelityBoundCheck{slack >= 0.0, slack, f};
}

FidelityBoundCheck fidelity_success_bound(const PureState& psi, const MarkedSet& m) {
    require_match(psi.dim(), m.dim());
    const double f = psi.probabilities().maxCoeff();
    const double slack = static_cast<double>(m.count()) * f - success_probability(psi, m);
    return FidelityBoundCheck{slack >= 0.0, slack, f};
}

namespace {

BoundReport prop2_from(double p, double entropy, double c1, const RVector& diag, const MarkedSet& m) {
    BoundReport r;
    r.quantity = Quantity::C1;
    r.value = c1;
    r.omega_branch = omega_branch(diag, m);
    const double omega = r.omega_branch == OmegaBranch::Marked ? p : 1.0 - p;
    r.lower_binary = c1_lower_binary(p, entropy);
    r.lower_omega = c1_lower_omega(omega, entropy);
    r.lower = std::max(r.lower_binary, r.lower_omega);
    r.upper = c1_upper_from_success(p, entropy, m.count(), m.dim());
    return finish(r);
}

}  // namespace

BoundReport prop2_bounds(const DensityMatrix& rho, const MarkedSet& m) {
    require_match(rho.dim(), m.dim());
    return prop2_from(success_probability(rho, m), von_neumann_entropy(rho),
                      relative_entropy_of_coherence(rho), rho.diagonal(), m);
}

BoundReport prop2_bounds(const PureState& psi, const MarkedSet& m) {
    require_match(psi.dim(), m.dim());
    return prop2_from(success_probability(psi, m), 0.0, relative_entropy_of_coherence(psi),
                      psi.probabilities(), m);
}

double l1_boxcar(double p_suc, std::size_t m, std::size_t n) {
    const double root = std::sqrt(static_cast<double>(m) * p_suc) +
                        std::sqrt(static_cast<double>(n - m) * std::max(0.0, 1.0 - p_suc));
    return root * root - 1.0;
}

BoxcarDiagnostic l1_boxcar_diagnostic(double p_suc, std::size_t m, std::size_t n) {
    const double nd = static_cast<double>(n);
    return BoxcarDiagnostic{l1_boxcar(p_suc, m, n) + nd * p_suc, nd};
}

bool is_boxcar(const PureState& psi, const MarkedSet& m, double tol) {
    require_match(psi.dim(), m.dim());
    const double km = std::abs(psi[m.marked().front()]);
    const double lm = std::abs(psi[m.unmarked().front()]);
    for (auto x : m.marked()) {
        if (std::abs(std::abs(psi[x]) - km) > tol) return false;
    }
    for (auto y : m.unmarked()) {
        if (std::abs(std::abs(psi[y]) - lm) > tol) return false;
    }
    return true;
}

}  // namespace ampcoh
