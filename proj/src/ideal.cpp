#include "qpufsim/ideal.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>

namespace qpufsim {

namespace {

void append_f64_le(std::string& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    if constexpr (std::endian::native == std::endian::big)
        bits = __builtin_bswap64(bits);
    char raw[8];
    std::memcpy(raw, &bits, sizeof raw);
    out.append(raw, sizeof raw);
}

double read_f64_le(const char* p) {
    std::uint64_t bits;
    std::memcpy(&bits, p, sizeof bits);
    if constexpr (std::endian::native == std::endian::big)
        bits = __builtin_bswap64(bits);
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
}

void append_amplitudes(std::string& out, const Vector& amps) {
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        append_f64_le(out, amps(i).real());
        append_f64_le(out, amps(i).imag());
    }
}

Vector parse_amplitudes(const char* p, int dim) {
    Vector amps(dim);
    for (int i = 0; i < dim; ++i)
        amps(i) = Complex(read_f64_le(p + 16 * i), read_f64_le(p + 16 * i + 8));
    return amps;
}

} // namespace

std::string serialize_query_record(const QueryRecord& record) {
    std::string out = std::to_string(record.outcome);
    out += '\n';
    append_amplitudes(out, record.input_state.amplitudes());
    append_amplitudes(out, record.token_state.amplitudes());
    return out;
}

QueryRecord deserialize_query_record(const std::string& bytes, int dim) {
    if (dim < 1)
        throw ContractViolation("deserialize_query_record: dim must be >= 1");
    const std::size_t nl = bytes.find('\n');
    if (nl == std::string::npos)
        throw ContractViolation("deserialize_query_record: missing outcome line");
    int outcome = 0;
    try {
        outcome = std::stoi(bytes.substr(0, nl));
    } catch (const std::exception&) {
        throw ContractViolation("deserialize_query_record: malformed outcome");
    }
    const std::size_t payload = 2u * 16u * static_cast<std::size_t>(dim);
    if (bytes.size() != nl + 1 + payload)
        throw ContractViolation("deserialize_query_record: payload size mismatch");
    const char* p = bytes.data() + nl + 1;
    return QueryRecord{PureState(parse_amplitudes(p, dim)), outcome,
                       PureState(parse_amplitudes(p + 16 * dim, dim))};
}

int sample_index(const Eigen::VectorXd& probs, RngStream& rng) {
    // zero-probability entries never acquire CDF mass, so they are
    // excluded from sampling by construction
    const double total = probs.sum();
    double u = rng.uniform() * total;
    double acc = 0.0;
    int last_positive = -1;
    for (int i = 0; i < probs.size(); ++i) {
        if (probs(i) <= 0.0) continue;
        last_positive = i;
        acc += probs(i);
        if (u < acc) return i;
    }
    return last_positive; // u landed on the top edge by roundoff
}

Eigen::VectorXd outcome_distribution(const IdealQpuf& qpuf, const PureState& psi) {
    if (psi.dim() != qpuf.dim())
        throw ContractViolation("outcome_distribution: dimension mismatch");
    if (psi.basis() != Basis::Standard)
        throw ContractViolation("outcome_distribution: expected standard basis");
    Vector overlaps = qpuf.unitary().matrix().adjoint() * psi.amplitudes();
    return overlaps.cwiseAbs2();
}

std::pair<int, PureState> measure(const IdealQpuf& qpuf, const PureState& psi,
                                  RngStream& rng) {
    Eigen::VectorXd p = outcome_distribution(qpuf, psi);
    int outcome = sample_index(p, rng);
    // token reconstructed as the exact column U|outcome>
    PureState post(qpuf.unitary().matrix().col(outcome));
    return {outcome, std::move(post)};
}

QueryRecord generate_token(const IdealQpuf& qpuf, const PureState& input_state,
                           RngStream& rng) {
    auto [outcome, post] = measure(qpuf, input_state, rng);
    return QueryRecord{input_state, outcome, std::move(post)};
}

VerificationResult verify_token(const IdealQpuf& qpuf, const PureState& token,
                                int claimed_outcome, RngStream& rng) {
    if (claimed_outcome < 0 || claimed_outcome >= qpuf.dim())
        throw ContractViolation("verify_token: claimed outcome out of range");
    auto [outcome, post] = measure(qpuf, token, rng);
    return VerificationResult{outcome, outcome == claimed_outcome, std::move(post)};
}

// Composite state after U^dag on the control, CX, U back; control index i,
// ancilla index j at slot i*D + j.
static Vector rcnot_final_state(const UnitaryMatrix& u, const PureState& psi) {
    const int D = u.dim();
    if (psi.dim() != D)
        throw ContractViolation("rcnot_measure: dimension mismatch");

    // composite state on C^D (control) x C^D (ancilla), row-major blocks
    Vector full = Vector::Zero(static_cast<Eigen::Index>(D) * D);
    Vector ctrl = u.matrix().adjoint() * psi.amplitudes();
    for (int i = 0; i < D; ++i) full(static_cast<Eigen::Index>(i) * D + 0) = ctrl(i);

    // CX = sum_i |i><i| (x) X^i with X|j> = |j+1 mod D>
    Vector after_cx = Vector::Zero(full.size());
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j)
            after_cx(static_cast<Eigen::Index>(i) * D + (j + i) % D) =
                full(static_cast<Eigen::Index>(i) * D + j);

    // U on the control register
    Vector final_state = Vector::Zero(full.size());
    for (int j = 0; j < D; ++j) {
        Vector block(D);
        for (int i = 0; i < D; ++i) block(i) = after_cx(static_cast<Eigen::Index>(i) * D + j);
        Vector rotated = u.matrix() * block;
        for (int i = 0; i < D; ++i) final_state(static_cast<Eigen::Index>(i) * D + j) = rotated(i);
    }
    return final_state;
}

Eigen::VectorXd rcnot_distribution(const UnitaryMatrix& u, const PureState& psi) {
    const int D = u.dim();
    Vector final_state = rcnot_final_state(u, psi);
    Eigen::VectorXd probs(D);
    for (int j = 0; j < D; ++j) {
        double p = 0.0;
        for (int i = 0; i < D; ++i)
            p += std::norm(final_state(static_cast<Eigen::Index>(i) * D + j));
        probs(j) = p;
    }
    return probs;
}

std::pair<int, PureState> rcnot_measure(const UnitaryMatrix& u, const PureState& psi,
                                        RngStream& rng) {
    const int D = u.dim();
    Vector final_state = rcnot_final_state(u, psi);
    Eigen::VectorXd probs(D);
    for (int j = 0; j < D; ++j) {
        double p = 0.0;
        for (int i = 0; i < D; ++i)
            p += std::norm(final_state(static_cast<Eigen::Index>(i) * D + j));
        probs(j) = p;
    }
    int outcome = sample_index(probs, rng);

    Vector post(D);
    for (int i = 0; i < D; ++i) post(i) = final_state(static_cast<Eigen::Index>(i) * D + outcome);
    post /= post.norm();
    return {outcome, PureState(std::move(post))};
}

IdealHardwareReport check_ideal_hardware(const IdealQpuf& qpuf, int trials,
                                         RngStream& rng) {
    if (trials < 1)
        throw ContractViolation("check_ideal_hardware: trials must be >= 1");
    const int D = qpuf.dim();
    int distinct_total = 0, distinct_far = 0;
    int repeat_total = 0, repeat_near = 0;
    for (int t = 0; t < trials; ++t) {
        int i = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(D)));
        int j = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(D)));
        PureState ti(qpuf.unitary().matrix().col(i));
        PureState tj(qpuf.unitary().matrix().col(j));
        double dist = trace_distance_pure(ti, tj);
        if (i != j) {
            ++distinct_total;
            if (std::abs(dist - 1.0) <= 1e-9) ++distinct_far;
        } else {
            ++repeat_total;
            // the sqrt in the trace distance amplifies machine-epsilon
            // overlap roundoff to ~1e-8, so "zero" means below 1e-7 here
            if (dist <= 1e-7) ++repeat_near;
        }
    }
    IdealHardwareReport r;
    r.collision_resistance_rate =
        distinct_total ? static_cast<double>(distinct_far) / distinct_total : 1.0;
    r.robustness_rate =
        repeat_total ? static_cast<double>(repeat_near) / repeat_total : 1.0;
    return r;
}

} // namespace qpufsim
