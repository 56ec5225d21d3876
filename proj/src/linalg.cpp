#include "qpufsim/linalg.hpp"

#include <cmath>
#include <numbers>

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace qpufsim {

double max_norm_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ContractViolation("max_norm_diff: shape mismatch");
    return (a - b).cwiseAbs().maxCoeff();
}

UnitaryMatrix::UnitaryMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1)
        throw ContractViolation("UnitaryMatrix: matrix must be square");
    Matrix gram = m_.adjoint() * m_;
    defect_ = max_norm_diff(gram, Matrix::Identity(m_.rows(), m_.cols()));
    if (defect_ > kUnitaryTol)
        throw ContractViolation("UnitaryMatrix: unitarity defect above tolerance");
}

PureState::PureState(Vector amps, Basis basis)
    : amps_(std::move(amps)), basis_(basis) {
    if (amps_.size() < 1)
        throw ContractViolation("PureState: empty amplitude vector");
    if (std::abs(amps_.norm() - 1.0) > kUnitaryTol)
        throw ContractViolation("PureState: norm deviates from 1");
}

PureState PureState::basis_state(int dim, int k, Basis basis) {
    if (k < 0 || k >= dim)
        throw ContractViolation("basis_state: index out of range");
    Vector v = Vector::Zero(dim);
    v(k) = 1.0;
    return PureState(std::move(v), basis);
}

static Matrix ginibre(int n, RngStream& rng) {
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(i, j) = rng.complex_gaussian();
    return g;
}

UnitaryMatrix haar_unitary(int dim_D, RngStream& rng) {
    if (dim_D < 1) throw ContractViolation("haar_unitary: dim_D must be >= 1");
    for (;;) {
        Matrix g = ginibre(dim_D, rng);
        Eigen::HouseholderQR<Matrix> qr(g);
        Matrix q = qr.householderQ();
        Vector r_diag = qr.matrixQR().diagonal();
        if (r_diag.cwiseAbs().minCoeff() < 1e-300) continue; // resample; probability zero
        // phase correction makes the distribution exactly Haar
        for (int j = 0; j < dim_D; ++j)
            q.col(j) *= r_diag(j) / std::abs(r_diag(j));
        return UnitaryMatrix(std::move(q));
    }
}

UnitaryMatrix haar_unitary_gram_schmidt(int dim_D, RngStream& rng) {
    if (dim_D < 1)
        throw ContractViolation("haar_unitary_gram_schmidt: dim_D must be >= 1");
    Matrix u(dim_D, dim_D);
    for (int j = 0; j < dim_D; ++j) {
        Vector v(dim_D);
        for (;;) {
            for (int i = 0; i < dim_D; ++i) v(i) = rng.complex_gaussian();
            // project out previous columns, twice for numerical orthogonality
            for (int pass = 0; pass < 2; ++pass)
                for (int k = 0; k < j; ++k)
                    v -= u.col(k).dot(v) * u.col(k);
            double n = v.norm();
            if (n > 1e-150) {
                v /= n;
                break;
            }
        }
        u.col(j) = v;
    }
    return UnitaryMatrix(std::move(u));
}

PureState random_pure_state(int dim_D, RngStream& rng) {
    if (dim_D < 1)
        throw ContractViolation("random_pure_state: dim_D must be >= 1");
    Vector v(dim_D);
    for (;;) {
        for (int i = 0; i < dim_D; ++i) v(i) = rng.complex_gaussian();
        double n = v.norm();
        if (n > 1e-150) return PureState(v / n);
    }
}

double trace_distance_pure(const PureState& psi, const PureState& phi) {
    if (psi.dim() != phi.dim())
        throw ContractViolation("trace_distance_pure: dimension mismatch");
    if (psi.basis() != phi.basis())
        throw ContractViolation("trace_distance_pure: basis mismatch");
    double overlap = std::norm(psi.amplitudes().dot(phi.amplitudes()));
    return std::sqrt(std::max(0.0, 1.0 - overlap));
}

EigenSystem eigensystem_unitary(const UnitaryMatrix& u, int ancilla_dim_d) {
    if (ancilla_dim_d < 2)
        throw ContractViolation("eigensystem_unitary: ancilla_dim_d must be >= 2");
    const int n = u.dim();
    const double d = static_cast<double>(ancilla_dim_d);

    // Schur of a normal matrix: T is diagonal up to roundoff and the
    // Schur vectors are orthonormal eigenvectors, also inside
    // degenerate eigenvalue clusters.
    Matrix a = u.matrix();
    Vector eigvals(n);
    Matrix schur_vectors(n, n);
    int sdim = 0;
    int info = LAPACKE_zgees(
        LAPACK_COL_MAJOR, 'V', 'N', nullptr, n,
        reinterpret_cast<lapack_complex_double*>(a.data()), n, &sdim,
        reinterpret_cast<lapack_complex_double*>(eigvals.data()),
        reinterpret_cast<lapack_complex_double*>(schur_vectors.data()), n);
    if (info != 0)
        throw NumericalFailure("eigensystem_unitary: Schur decomposition failed");

    EigenSystem es;
    es.dim_D = n;
    es.ancilla_dim_d = ancilla_dim_d;
    es.eigenvectors = std::move(schur_vectors);
    es.phases.resize(n);
    for (int j = 0; j < n; ++j) {
        Complex lambda = eigvals(j);
        double phi = d / (2.0 * std::numbers::pi) * std::arg(lambda);
        if (phi < 0.0) phi += d;
        if (phi >= d) phi -= d; // arg == pi boundary roundoff
        es.phases(j) = phi;
    }

    Vector lambdas(n);
    for (int j = 0; j < n; ++j)
        lambdas(j) = std::polar(1.0, 2.0 * std::numbers::pi * es.phases(j) / d);
    Matrix rebuilt = es.eigenvectors * lambdas.asDiagonal() * es.eigenvectors.adjoint();
    if (max_norm_diff(rebuilt, u.matrix()) > kReconstructTol)
        throw NumericalFailure("eigensystem_unitary: reconstruction defect above 1e-8");
    return es;
}

Vector mat_apply(const Matrix& m, const PureState& psi) {
    if (m.cols() != psi.dim())
        throw ContractViolation("mat_apply: dimension mismatch");
    return m * psi.amplitudes();
}

Matrix dagger(const Matrix& m) { return m.adjoint(); }

double phase_aligned_diff(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw ContractViolation("phase_aligned_diff: dimension mismatch");
    Eigen::Index imax;
    a.cwiseAbs().maxCoeff(&imax);
    Complex phase(1.0, 0.0);
    if (std::abs(b(imax)) > 0 && std::abs(a(imax)) > 0)
        phase = (a(imax) / std::abs(a(imax))) * std::conj(b(imax) / std::abs(b(imax)));
    return (a - phase * b).cwiseAbs().maxCoeff();
}

double fidelity(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw ContractViolation("fidelity: dimension mismatch");
    return std::norm(a.dot(b));
}

} // namespace qpufsim
