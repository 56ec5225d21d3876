#include "qpufsim/pe.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace qpufsim {

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

SinsKernel::SinsKernel(int d, double epsilon) : d_(d), epsilon_(epsilon) {
    if (d < 2) throw ContractViolation("SinsKernel: d must be >= 2");
}

double SinsKernel::operator()(double x) const {
    const double d = static_cast<double>(d_);
    // reduce modulo 2d into (-d, d]
    double r = std::fmod(x, 2.0 * d);
    if (r > d) r -= 2.0 * d;
    if (r <= -d) r += 2.0 * d;
    if (std::abs(r) <= epsilon_) return 1.0;
    if (std::abs(r - d) <= epsilon_) {
        // signed limit at the period boundary: (-1)^(d+1)
        return (d_ % 2 == 0) ? -1.0 : 1.0;
    }
    return std::sin(kPi * r) / (d * std::sin(kPi * r / d));
}

int circular_distance_d(int a, int b, int d) {
    if (d < 1) throw ContractViolation("circular_distance_d: d must be >= 1");
    int diff = ((a - b) % d + d) % d;
    return std::min(diff, d - diff);
}

double circular_phase_distance(double x, int d) {
    double r = std::fmod(x, static_cast<double>(d));
    if (r < 0) r += d;
    return std::min(r, d - r);
}

PeQpuf::PeQpuf(EigenSystem es, int delta)
    : es_(std::move(es)), delta_(delta), kernel_(es_.ancilla_dim_d) {
    if (delta_ < 0 || delta_ > es_.ancilla_dim_d / 2)
        throw ContractViolation("PeQpuf: delta must satisfy 0 <= delta <= d/2");
}

PeQpuf PeQpuf::from_unitary(const UnitaryMatrix& u, int ancilla_dim_d, int delta) {
    return PeQpuf(eigensystem_unitary(u, ancilla_dim_d), delta);
}

PureState PeQpuf::to_eigenbasis(const PureState& psi_std) const {
    if (psi_std.basis() != Basis::Standard)
        throw ContractViolation("to_eigenbasis: expected standard-basis state");
    return PureState(es_.eigenvectors.adjoint() * psi_std.amplitudes(),
                     Basis::EigenbasisOfU);
}

PureState PeQpuf::to_standard(const PureState& psi_eig) const {
    if (psi_eig.basis() != Basis::EigenbasisOfU)
        throw ContractViolation("to_standard: expected eigenbasis state");
    return PureState(es_.eigenvectors * psi_eig.amplitudes(), Basis::Standard);
}

Vector kraus_diag(const PeQpuf& pe, int k) {
    const int d = pe.ancilla_dim();
    if (k < 0 || k >= d) throw ContractViolation("kraus_diag: k out of range");
    const auto& phases = pe.eigensystem().phases;
    Vector diag(pe.dim());
    for (int j = 0; j < pe.dim(); ++j) {
        double x = phases(j) - k;
        Complex phase = std::polar(1.0, kPi * x) * std::polar(1.0, -kPi * x / d);
        diag(j) = phase * pe.kernel()(x);
    }
    return diag;
}

static void check_eigenbasis(const PeQpuf& pe, const PureState& psi_eig,
                             const char* who) {
    if (psi_eig.basis() != Basis::EigenbasisOfU)
        throw ContractViolation(std::string(who) + ": expected eigenbasis state");
    if (psi_eig.dim() != pe.dim())
        throw ContractViolation(std::string(who) + ": dimension mismatch");
}

Eigen::VectorXd outcome_distribution(const PeQpuf& pe, const PureState& psi_eig) {
    check_eigenbasis(pe, psi_eig, "outcome_distribution");
    const int d = pe.ancilla_dim();
    const double dd = static_cast<double>(d);
    const auto& phases = pe.eigensystem().phases;
    Eigen::VectorXd weights = psi_eig.amplitudes().cwiseAbs2();
    Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
    // sins_d^2(phi - k) = sin^2(pi phi) / (d^2 sin^2(pi (phi - k)/d)) for
    // integer k; the numerator is k-independent, so hoist it per j
    for (int j = 0; j < pe.dim(); ++j) {
        const double phi = phases(j);
        const double num = weights(j) * std::pow(std::sin(kPi * phi), 2) / (dd * dd);
        const double base = kPi * phi / dd;
        const double step = kPi / dd;
        for (int k = 0; k < d; ++k) {
            double den = std::sin(base - k * step);
            double den2 = den * den;
            // phi == k exactly: removable singularity, sins^2 = 1
            p(k) += den2 < 1e-300 ? weights(j) : num / den2;
        }
    }
    return p;
}

std::pair<int, PureState> measure(const PeQpuf& pe, const PureState& psi_eig,
                                  RngStream& rng) {
    Eigen::VectorXd p = outcome_distribution(pe, psi_eig);
    int k = sample_index(p, rng);
    Vector diag = kraus_diag(pe, k);
    Vector post = diag.cwiseProduct(psi_eig.amplitudes());
    post /= post.norm();
    return {k, PureState(std::move(post), Basis::EigenbasisOfU)};
}

double window_response(const SinsKernel& kernel, int delta, double x) {
    double acc = 0.0;
    for (int off = -delta; off <= delta; ++off) {
        double s = kernel(x + off);
        acc += s * s;
    }
    return acc;
}

double window_weight(const PeQpuf& pe, int m, const PureState& psi_eig) {
    check_eigenbasis(pe, psi_eig, "window_weight");
    if (m < 0 || m >= pe.ancilla_dim())
        throw ContractViolation("window_weight: m out of range");
    const auto& phases = pe.eigensystem().phases;
    double acc = 0.0;
    for (int j = 0; j < pe.dim(); ++j)
        acc += std::norm(psi_eig.amplitudes()(j)) *
               window_response(pe.kernel(), pe.delta(), m - phases(j));
    return acc;
}

double window_projector_weight(const PeQpuf& pe, int m, const PureState& psi_eig) {
    check_eigenbasis(pe, psi_eig, "window_projector_weight");
    if (m < 0 || m >= pe.ancilla_dim())
        throw ContractViolation("window_projector_weight: m out of range");
    const auto& phases = pe.eigensystem().phases;
    double acc = 0.0;
    for (int j = 0; j < pe.dim(); ++j)
        if (circular_phase_distance(phases(j) - m, pe.ancilla_dim()) <= pe.delta())
            acc += std::norm(psi_eig.amplitudes()(j));
    return acc;
}

PeToken generate(const PeQpuf& pe, const PureState& psi_in_eig, RngStream& rng) {
    auto [m0, post] = measure(pe, psi_in_eig, rng);
    return PeToken{m0, std::move(post)};
}

PeVerification verify(const PeQpuf& pe, const PeToken& token, RngStream& rng) {
    auto [m, post] = measure(pe, token.state_eig, rng);
    bool pass = circular_distance_d(m, token.verifier_value, pe.ancilla_dim()) <=
                pe.delta();
    // on failure the chain terminates; refreshed token kept for inspection
    int new_value = pass ? m : token.verifier_value;
    return PeVerification{m, pass, PeToken{new_value, std::move(post)}};
}

// Runs the explicit circuit (F (x) I) CU (F^dag (x) I) on |0> (x) psi and
// returns the unnormalized ancilla blocks of the final composite state.
static std::vector<Vector> circuit_blocks(const UnitaryMatrix& u, int d,
                                          const PureState& psi_std) {
    const int D = u.dim();
    if (psi_std.dim() != D)
        throw ContractViolation("full_circuit: dimension mismatch");
    if (static_cast<long long>(d) * D > 4096)
        throw ContractViolation("full_circuit: d*D exceeds oracle scale 4096");

    // Fourier matrix F with F(k,x) = exp(-i 2 pi k x / d) / sqrt(d)
    Matrix fourier(d, d);
    for (int k = 0; k < d; ++k)
        for (int x = 0; x < d; ++x)
            fourier(k, x) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                                       -2.0 * kPi * k * x / d);
    Matrix fourier_dag = fourier.adjoint();

    // ancilla blocks of (F^dag (x) I) |0> (x) psi
    std::vector<Vector> blocks(d);
    for (int x = 0; x < d; ++x) blocks[x] = fourier_dag(x, 0) * psi_std.amplitudes();

    // CU = sum_x |x><x| (x) U^x via iterated multiplication
    Matrix u_power = Matrix::Identity(D, D);
    for (int x = 0; x < d; ++x) {
        blocks[x] = u_power * blocks[x];
        u_power = u.matrix() * u_power;
    }

    // F on the ancilla
    std::vector<Vector> out(d, Vector::Zero(D));
    for (int k = 0; k < d; ++k)
        for (int x = 0; x < d; ++x) out[k] += fourier(k, x) * blocks[x];
    return out;
}

Eigen::VectorXd full_circuit_distribution(const UnitaryMatrix& u, int d,
                                          const PureState& psi_std) {
    auto out = circuit_blocks(u, d, psi_std);
    Eigen::VectorXd probs(d);
    for (int k = 0; k < d; ++k) probs(k) = out[k].squaredNorm();
    return probs;
}

Matrix full_circuit_kraus(const UnitaryMatrix& u, int d, int k) {
    if (k < 0 || k >= d) throw ContractViolation("full_circuit_kraus: k out of range");
    const int D = u.dim();
    Matrix kraus(D, D);
    for (int j = 0; j < D; ++j) {
        auto out = circuit_blocks(u, d, PureState::basis_state(D, j));
        kraus.col(j) = out[k];
    }
    return kraus;
}

std::pair<int, PureState> full_circuit_measure(const UnitaryMatrix& u, int d,
                                               const PureState& psi_std,
                                               RngStream& rng) {
    auto out = circuit_blocks(u, d, psi_std);
    Eigen::VectorXd probs(d);
    for (int k = 0; k < d; ++k) probs(k) = out[k].squaredNorm();
    int k = sample_index(probs, rng);
    Vector post = out[k] / out[k].norm();
    return {k, PureState(std::move(post), Basis::Standard)};
}

} // namespace qpufsim
