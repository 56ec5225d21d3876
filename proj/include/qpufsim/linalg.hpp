#ifndef QPUFSIM_LINALG_HPP
#define QPUFSIM_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

#include "qpufsim/rng.hpp"

namespace qpufsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// tolerance hierarchy: construction 1e-9, reconstruction 1e-8
inline constexpr double kUnitaryTol = 1e-9;
inline constexpr double kReconstructTol = 1e-8;

struct ContractViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Max-norm (largest absolute entry) of A - B.
double max_norm_diff(const Matrix& a, const Matrix& b);

/// A matrix certified unitary at construction.
class UnitaryMatrix {
public:
    explicit UnitaryMatrix(Matrix m);

    const Matrix& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }
    double unitarity_defect() const { return defect_; }

private:
    Matrix m_;
    double defect_;
};

enum class Basis { Standard, EigenbasisOfU };

/// Unit-norm amplitude vector tagged with the basis its coordinates
/// refer to.
class PureState {
public:
    explicit PureState(Vector amps, Basis basis = Basis::Standard);

    /// Standard-basis state |k>.
    static PureState basis_state(int dim, int k, Basis basis = Basis::Standard);

    const Vector& amplitudes() const { return amps_; }
    int dim() const { return static_cast<int>(amps_.size()); }
    Basis basis() const { return basis_; }

private:
    Vector amps_;
    Basis basis_;
};

/// Spectral decomposition of a unitary with eigenphases in units of
/// the d-cycle: eigenvalue_j = exp(i 2*pi*phase_j / d), phase_j in [0, d).
struct EigenSystem {
    int dim_D;
    int ancilla_dim_d;
    Eigen::VectorXd phases;
    Matrix eigenvectors; // columns, orthonormal
};

/// Haar-random unitary via Ginibre + QR with R-diagonal phase correction.
UnitaryMatrix haar_unitary(int dim_D, RngStream& rng);

/// Haar-random unitary built column by column: Gaussian draw, projection
/// onto the orthogonal complement of previous columns, normalization.
UnitaryMatrix haar_unitary_gram_schmidt(int dim_D, RngStream& rng);

/// Uniform state on the unit sphere of C^D.
PureState random_pure_state(int dim_D, RngStream& rng);

/// sqrt(1 - |<psi|phi>|^2); exact for pure states.
double trace_distance_pure(const PureState& psi, const PureState& phi);

/// Eigendecomposition with phases wrapped into [0, d). Throws
/// NumericalFailure if the reconstruction defect exceeds 1e-8.
EigenSystem eigensystem_unitary(const UnitaryMatrix& u, int ancilla_dim_d);

Vector mat_apply(const Matrix& m, const PureState& psi);

Matrix dagger(const Matrix& m);

/// Max-norm difference after aligning global phase on the
/// largest-magnitude amplitude of a.
double phase_aligned_diff(const Vector& a, const Vector& b);

/// |<a|b>|^2
double fidelity(const Vector& a, const Vector& b);

} // namespace qpufsim

#endif
