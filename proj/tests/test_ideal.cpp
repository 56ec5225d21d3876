#include "doctest.h"

#include <cmath>
#include <vector>

#include "qpufsim/ideal.hpp"

using namespace qpufsim;

TEST_CASE("sample_index honors the support") {
    RngStream rng(3, 0);
    Eigen::VectorXd p(4);
    p << 0.0, 0.0, 1.0, 0.0;
    for (int t = 0; t < 200; ++t) CHECK(sample_index(p, rng) == 2);

    Eigen::VectorXd q(3);
    q << 0.25, 0.0, 0.75;
    int c0 = 0, c2 = 0;
    for (int t = 0; t < 4000; ++t) {
        int i = sample_index(q, rng);
        CHECK(i != 1);
        (i == 0 ? c0 : c2)++;
    }
    CHECK(std::abs(c0 / 4000.0 - 0.25) < 0.03);
}

TEST_CASE("ideal outcome distribution is a distribution and peaks on columns") {
    RngStream rng(21, 0);
    IdealQpuf qpuf(haar_unitary(6, rng));
    PureState psi = random_pure_state(6, rng);
    Eigen::VectorXd p = outcome_distribution(qpuf, psi);
    CHECK(p.size() == 6);
    CHECK(p.minCoeff() >= 0.0);
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));

    // psi = U|k> concentrates all mass on k
    for (int k = 0; k < 6; ++k) {
        PureState col(qpuf.unitary().matrix().col(k));
        Eigen::VectorXd pk = outcome_distribution(qpuf, col);
        CHECK(pk(k) == doctest::Approx(1.0).epsilon(1e-12));
    }

    CHECK_THROWS_AS(outcome_distribution(qpuf, random_pure_state(5, rng)),
                    ContractViolation);
}

TEST_CASE("ideal measurement is deterministic given the stream") {
    RngStream setup(22, 0);
    IdealQpuf qpuf(haar_unitary(8, setup));
    PureState psi = random_pure_state(8, setup);
    RngStream r1(9, 4), r2(9, 4);
    auto [o1, s1] = measure(qpuf, psi, r1);
    auto [o2, s2] = measure(qpuf, psi, r2);
    CHECK(o1 == o2);
    CHECK((s1.amplitudes() - s2.amplitudes()).norm() == 0.0);
}

TEST_CASE("honest tokens re-verify with certainty") {
    RngStream rng(23, 0);
    for (int t = 0; t < 100; ++t) {
        IdealQpuf qpuf(haar_unitary(8, rng));
        QueryRecord rec = generate_token(qpuf, random_pure_state(8, rng), rng);
        VerificationResult v = verify_token(qpuf, rec.token_state, rec.outcome, rng);
        CHECK(v.passed);
        CHECK(v.measured_outcome == rec.outcome);
        // the refreshed token is again the exact column
        CHECK((v.refreshed_token.amplitudes() -
               qpuf.unitary().matrix().col(rec.outcome)).norm() < 1e-12);
    }
    IdealQpuf qpuf(haar_unitary(4, rng));
    CHECK_THROWS_AS(verify_token(qpuf, random_pure_state(4, rng), 4, rng),
                    ContractViolation);
}

TEST_CASE("measurement frequencies match the distribution") {
    RngStream rng(24, 0);
    IdealQpuf qpuf(haar_unitary(4, rng));
    PureState psi = random_pure_state(4, rng);
    Eigen::VectorXd p = outcome_distribution(qpuf, psi);
    const int n = 100000;
    Eigen::VectorXd freq = Eigen::VectorXd::Zero(4);
    for (int t = 0; t < n; ++t) freq(measure(qpuf, psi, rng).first) += 1.0;
    freq /= n;
    for (int k = 0; k < 4; ++k) CHECK(std::abs(freq(k) - p(k)) < 0.01);
}

TEST_CASE("blind adversary passes at rate 1/D") {
    const int D = 16, n = 10000;
    RngStream rng(25, 0);
    IdealQpuf qpuf(haar_unitary(D, rng));
    int passes = 0;
    for (int t = 0; t < n; ++t) {
        PureState guess = random_pure_state(D, rng);
        int claim = static_cast<int>(rng.uniform_int(D));
        if (verify_token(qpuf, guess, claim, rng).passed) ++passes;
    }
    // 1/16 within ~4 sigma of the binomial fluctuation
    CHECK(std::abs(passes / static_cast<double>(n) - 1.0 / D) < 0.01);
}

TEST_CASE("rcnot circuit reproduces the ideal instrument") {
    RngStream rng(26, 0);
    for (int D : {2, 4, 8}) {
        for (int t = 0; t < 20; ++t) {
            UnitaryMatrix u = haar_unitary(D, rng);
            IdealQpuf qpuf(u);
            for (int s = 0; s < 20; ++s) {
                PureState psi = random_pure_state(D, rng);
                Eigen::VectorXd p_fast = outcome_distribution(qpuf, psi);
                Eigen::VectorXd p_circ = rcnot_distribution(u, psi);
                CHECK(0.5 * (p_fast - p_circ).cwiseAbs().sum() <= 1e-9);

                RngStream ra(31, static_cast<std::uint64_t>(t * 100 + s));
                RngStream rb(31, static_cast<std::uint64_t>(t * 100 + s));
                auto [o_fast, post_fast] = measure(qpuf, psi, ra);
                auto [o_circ, post_circ] = rcnot_measure(u, psi, rb);
                CHECK(o_fast == o_circ);
                CHECK(fidelity(post_fast.amplitudes(), post_circ.amplitudes()) >=
                      1.0 - 1e-9);
            }
        }
    }
}

TEST_CASE("ideal hardware report: collision resistance and robustness") {
    RngStream rng(27, 0);
    IdealQpuf qpuf(haar_unitary(8, rng));
    IdealHardwareReport r = check_ideal_hardware(qpuf, 2000, rng);
    CHECK(r.collision_resistance_rate == 1.0);
    CHECK(r.robustness_rate == 1.0);
    CHECK_THROWS_AS(check_ideal_hardware(qpuf, 0, rng), ContractViolation);
}

TEST_CASE("query record serialization round trip") {
    RngStream rng(28, 0);
    IdealQpuf qpuf(haar_unitary(6, rng));
    QueryRecord rec = generate_token(qpuf, random_pure_state(6, rng), rng);

    std::string bytes = serialize_query_record(rec);
    // outcome line + 2 * dim * (re, im) * 8 bytes
    CHECK(bytes.size() == std::to_string(rec.outcome).size() + 1 + 2 * 6 * 16);

    QueryRecord back = deserialize_query_record(bytes, 6);
    CHECK(back.outcome == rec.outcome);
    CHECK((back.input_state.amplitudes() - rec.input_state.amplitudes()).norm() == 0.0);
    CHECK((back.token_state.amplitudes() - rec.token_state.amplitudes()).norm() == 0.0);

    CHECK_THROWS_AS(deserialize_query_record(bytes, 5), ContractViolation);
    CHECK_THROWS_AS(deserialize_query_record("garbage", 6), ContractViolation);
    CHECK_THROWS_AS(deserialize_query_record(bytes.substr(0, bytes.size() - 1), 6),
                    ContractViolation);
}
