#ifndef QPUFSIM_PE_HPP
#define QPUFSIM_PE_HPP

#include <utility>

#include "qpufsim/ideal.hpp"
#include "qpufsim/linalg.hpp"

namespace qpufsim {

/// Periodized sinc kernel sin(pi x) / (d sin(pi x / d)) with removable
/// singularities at multiples of d. sins^2 has period d.
class SinsKernel {
public:
    explicit SinsKernel(int d, double epsilon = 1e-12);

    int d() const { return d_; }
    double operator()(double x) const;

private:
    int d_;
    double epsilon_;
};

/// Circular distance min((a-b) mod d, (b-a) mod d).
int circular_distance_d(int a, int b, int d);

/// Circular distance for real phase offsets, in [0, d/2].
double circular_phase_distance(double x, int d);

struct PeToken {
    int verifier_value;   // public classical value m
    PureState state_eig;  // post-measurement state, eigenbasis coordinates
};

/// Phase-estimation QPUF: the QPE instrument for a Haar-random unitary,
/// worked entirely in the eigenbasis where the Kraus operators are
/// diagonal, plus the windowed verification rule with boundary delta.
class PeQpuf {
public:
    PeQpuf(EigenSystem es, int delta);

    /// Convenience: decompose u against ancilla dimension d.
    static PeQpuf from_unitary(const UnitaryMatrix& u, int ancilla_dim_d, int delta);

    int dim() const { return es_.dim_D; }
    int ancilla_dim() const { return es_.ancilla_dim_d; }
    int delta() const { return delta_; }
    const EigenSystem& eigensystem() const { return es_; }
    const SinsKernel& kernel() const { return kernel_; }

    /// Standard-basis coordinates -> eigenbasis coordinates.
    PureState to_eigenbasis(const PureState& psi_std) const;
    PureState to_standard(const PureState& psi_eig) const;

private:
    EigenSystem es_;
    int delta_;
    SinsKernel kernel_;
};

/// Diagonal of the Kraus operator U_k in the eigenbasis:
/// entry j = exp(i pi (phi_j - k)) exp(-i pi (phi_j - k) / d) sins_d(phi_j - k).
Vector kraus_diag(const PeQpuf& pe, int k);

/// POVM probabilities Pr(k) = sum_j |c_j|^2 sins_d^2(phi_j - k), k in Z_d.
Eigen::VectorXd outcome_distribution(const PeQpuf& pe, const PureState& psi_eig);

/// One QPE measurement; post amplitudes c_j' = U_k(j) c_j / sqrt(Pr(k)).
std::pair<int, PureState> measure(const PeQpuf& pe, const PureState& psi_eig,
                                  RngStream& rng);

/// <psi| M_{m,Delta} |psi> via the truncated sins^2 series.
double window_weight(const PeQpuf& pe, int m, const PureState& psi_eig);

/// <psi| Pi_{m,Delta} |psi>: sharp window over eigenphases with circular
/// |phi_j - m| <= Delta.
double window_projector_weight(const PeQpuf& pe, int m, const PureState& psi_eig);

/// tilde-1_Delta(x) = sum_{|delta| <= Delta} sins_d^2(x + delta).
double window_response(const SinsKernel& kernel, int delta, double x);

PeToken generate(const PeQpuf& pe, const PureState& psi_in_eig, RngStream& rng);

struct PeVerification {
    int measured_outcome;
    bool passed;
    PeToken refreshed;
};

/// Measures the token state; passes iff the circular distance between the
/// new outcome and the stored verifier value is at most Delta. On pass the
/// verifier value is updated to the new outcome.
PeVerification verify(const PeQpuf& pe, const PeToken& token, RngStream& rng);

/// Cross-validation oracle: explicitly builds the Fourier matrices and the
/// controlled powers of U, runs the circuit on |0> (x) psi and measures the
/// ancilla register. Requires d*D <= 4096.
std::pair<int, PureState> full_circuit_measure(const UnitaryMatrix& u, int d,
                                               const PureState& psi_std,
                                               RngStream& rng);

/// Full ancilla outcome distribution of the explicit circuit (oracle path).
Eigen::VectorXd full_circuit_distribution(const UnitaryMatrix& u, int d,
                                          const PureState& psi_std);

/// Standard-basis Kraus matrix of outcome k extracted column by column
/// from the explicit circuit (oracle path, small scale).
Matrix full_circuit_kraus(const UnitaryMatrix& u, int d, int k);

} // namespace qpufsim

#endif
