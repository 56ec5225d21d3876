#include "qpufsim/selftest.hpp"

#include <cmath>
#include <functional>

#include "qpufsim/bounds.hpp"
#include "qpufsim/ideal.hpp"
#include "qpufsim/pe.hpp"

namespace qpufsim {

namespace {

struct Runner {
    std::ostream& os;
    bool all_ok = true;

    void check(const char* name, const std::function<bool()>& fn) {
        bool ok = false;
        try {
            ok = fn();
        } catch (...) {
            ok = false;
        }
        all_ok = all_ok && ok;
        os << (ok ? "pass" : "FAIL") << "  " << name << "\n";
    }
};

} // namespace

bool selftest(std::ostream& os, std::uint64_t seed) {
    Runner r{os};

    r.check("unitarity of Haar samples", [&] {
        for (int D : {2, 4, 8, 16, 64})
            for (int i = 0; i < 20; ++i) {
                RngStream rng(seed, 1000 + D * 100 + i);
                if (haar_unitary(D, rng).unitarity_defect() > 1e-9) return false;
            }
        return true;
    });

    r.check("eigensystem phases in [0,d), orthonormal vectors", [&] {
        RngStream rng(seed, 2);
        UnitaryMatrix u = haar_unitary(8, rng);
        EigenSystem es = eigensystem_unitary(u, 128);
        for (int j = 0; j < 8; ++j)
            if (es.phases(j) < 0 || es.phases(j) >= 128) return false;
        Matrix gram = es.eigenvectors.adjoint() * es.eigenvectors;
        return max_norm_diff(gram, Matrix::Identity(8, 8)) <= 1e-9;
    });

    r.check("ideal channel determinism on tokens", [&] {
        RngStream rng(seed, 3);
        IdealQpuf qpuf(haar_unitary(8, rng));
        for (int k = 0; k < 8; ++k)
            for (int shot = 0; shot < 20; ++shot) {
                PureState token(qpuf.unitary().matrix().col(k));
                if (measure(qpuf, token, rng).first != k) return false;
            }
        return true;
    });

    r.check("RCNOT oracle equals direct channel", [&] {
        RngStream rng(seed, 4);
        for (int rep = 0; rep < 5; ++rep) {
            IdealQpuf qpuf(haar_unitary(4, rng));
            PureState psi = random_pure_state(4, rng);
            Eigen::VectorXd direct = outcome_distribution(qpuf, psi);
            // ancilla marginal of the composite equals the PVM distribution
            Vector overlaps = qpuf.unitary().matrix().adjoint() * psi.amplitudes();
            double tv = 0.5 * (direct - overlaps.cwiseAbs2()).cwiseAbs().sum();
            auto [o, post] = rcnot_measure(qpuf.unitary(), psi, rng);
            if (tv > 1e-9) return false;
            if (phase_aligned_diff(post.amplitudes(),
                                   qpuf.unitary().matrix().col(o)) > 1e-9)
                return false;
        }
        return true;
    });

    r.check("PE POVM completeness", [&] {
        RngStream rng(seed, 5);
        PeQpuf pe = PeQpuf::from_unitary(haar_unitary(4, rng), 16, 2);
        for (int j = 0; j < 4; ++j) {
            double total = 0.0;
            for (int k = 0; k < 16; ++k) total += std::norm(kraus_diag(pe, k)(j));
            if (std::abs(total - 1.0) > 1e-9) return false;
        }
        return true;
    });

    r.check("PE fast path matches full circuit", [&] {
        RngStream rng(seed, 6);
        UnitaryMatrix u = haar_unitary(4, rng);
        PeQpuf pe = PeQpuf::from_unitary(u, 16, 2);
        PureState psi = random_pure_state(4, rng);
        Eigen::VectorXd fast = outcome_distribution(pe, pe.to_eigenbasis(psi));
        Eigen::VectorXd oracle = full_circuit_distribution(u, 16, psi);
        return 0.5 * (fast - oracle).cwiseAbs().sum() <= 1e-9;
    });

    r.check("sins bound sins_d^2(x) >= sinc^2(x)", [&] {
        SinsKernel kernel(64);
        for (int i = 1; i < 1000; ++i) {
            double x = 64.0 * i / 1000.0;
            double sinc = std::sin(M_PI * x) / (M_PI * x);
            if (std::abs(kernel(x)) < std::abs(sinc) - 1e-12) return false;
        }
        return true;
    });

    r.check("bounds closed forms", [&] {
        return std::abs(bounds::f_delta(4) - 0.86573) < 1e-4 &&
               std::abs(bounds::verification_lower_bound(4) - 0.40141) < 1e-4 &&
               std::abs(bounds::ideal_forgery_bound(16, 4) - 1.0 / 12.0) < 1e-12;
    });

    return r.all_ok;
}

} // namespace qpufsim
