#ifndef QPUFSIM_IDEAL_HPP
#define QPUFSIM_IDEAL_HPP

#include <utility>
#include <vector>

#include "qpufsim/linalg.hpp"

namespace qpufsim {

/// Haar random von Neumann measurement channel: the quantum instrument
/// measuring in the basis {U|i>}. Immutable, shareable read-only.
class IdealQpuf {
public:
    explicit IdealQpuf(UnitaryMatrix u) : u_(std::move(u)) {}

    int dim() const { return u_.dim(); }
    const UnitaryMatrix& unitary() const { return u_; }

private:
    UnitaryMatrix u_;
};

struct QueryRecord {
    PureState input_state;
    int outcome;
    PureState token_state;
};

enum class OwnerTag { Honest, Adversary };

struct QueryDatabase {
    std::vector<QueryRecord> records;
    OwnerTag owner_tag = OwnerTag::Honest;
};

struct VerificationResult {
    int measured_outcome;
    bool passed;
    PureState refreshed_token;
};

struct IdealHardwareReport {
    double collision_resistance_rate;
    double robustness_rate;
};

/// p_i = |<i|U^dag|psi>|^2
Eigen::VectorXd outcome_distribution(const IdealQpuf& qpuf, const PureState& psi);

/// Samples an outcome by inverse CDF; the post-measurement state is the
/// exact column U|outcome>.
std::pair<int, PureState> measure(const IdealQpuf& qpuf, const PureState& psi,
                                  RngStream& rng);

QueryRecord generate_token(const IdealQpuf& qpuf, const PureState& input_state,
                           RngStream& rng);

/// Re-measures the token; passes iff the outcome equals the claim. The
/// refreshed post-measurement state goes back to the holder either way.
VerificationResult verify_token(const IdealQpuf& qpuf, const PureState& token,
                                int claimed_outcome, RngStream& rng);

/// Equivalence oracle: simulates the D^2-dimensional composite circuit
/// (U^dag on the control register, generalized CX, U back, ancilla
/// measurement) and returns the marginal outcome and target post state.
std::pair<int, PureState> rcnot_measure(const UnitaryMatrix& u, const PureState& psi,
                                        RngStream& rng);

/// Ancilla marginal of the RCNOT composite circuit (oracle path for
/// total-variation comparisons against outcome_distribution).
Eigen::VectorXd rcnot_distribution(const UnitaryMatrix& u, const PureState& psi);

IdealHardwareReport check_ideal_hardware(const IdealQpuf& qpuf, int trials,
                                         RngStream& rng);

/// Shared inverse-CDF sampler over strictly positive probability mass.
int sample_index(const Eigen::VectorXd& probs, RngStream& rng);

/// Binary record format for experiment dumps: the outcome as ASCII
/// decimal followed by '\n', then input and token amplitudes as
/// interleaved real/imag little-endian 64-bit floats.
std::string serialize_query_record(const QueryRecord& record);
QueryRecord deserialize_query_record(const std::string& bytes, int dim);

} // namespace qpufsim

#endif
