#ifndef QPUFSIM_EXPERIMENTS_HPP
#define QPUFSIM_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qpufsim/bounds.hpp"
#include "qpufsim/ideal.hpp"
#include "qpufsim/pe.hpp"

namespace qpufsim {

struct ExperimentConfig {
    std::string experiment_id;
    int ancilla_dim_d = 0;
    int dim_D = 0;
    std::vector<int> delta_values;
    int num_states = 1;
    int num_iterations = 1;
    int trials = 0;
    int q_size = 0;
    int chain_length = 1;
    std::uint64_t master_seed = 0;
    std::string output_path;
    int workers = 0; // 0 = hardware concurrency
};

struct HistogramRow {
    int diff; // signed circular difference m1 - m0 in (-d/2, d/2]
    long count;
};

struct RateRow {
    int delta;
    int iteration;
    double v_rate;
    double bound;
    int num_states;
};

struct ForgeryRow {
    std::string experiment_id;
    int d_or_D;
    int delta;
    int q_size;
    int trial_block;
    double mean_p;
    double stderr_p;
    double bound;
};

struct ExperimentReport {
    ExperimentConfig config;
    double wall_clock_s = 0.0;
    std::vector<HistogramRow> histogram_rows;
    std::vector<RateRow> rate_rows;
    std::vector<ForgeryRow> forgery_rows;
};

enum class AdversaryStrategy {
    Complement, // uniform state from the orthogonal complement of known tokens
    Uniform,    // uniform state, database ignored
    Span,       // uniform state within the span of known tokens
};

/// Outcome-difference histogram for fresh tokens: generate then verify
/// once, record the signed circular difference of the two outcomes.
ExperimentReport run_outcome_histogram(const ExperimentConfig& config);

/// Verification rate v_R = N_pass/N_total per (delta, iteration), with
/// the analytic lower bound alongside.
ExperimentReport run_verification_rate(const ExperimentConfig& config);

/// Ideal-channel forgery experiment against the 1/(D - |Q_A|) bound.
ExperimentReport run_forge_ideal(const ExperimentConfig& config,
                                 AdversaryStrategy strategy = AdversaryStrategy::Complement);

/// PE forgery experiment against the closed-form bound;
/// runs the complement and uniform strategies and reports both.
ExperimentReport run_forge_pe(const ExperimentConfig& config);

/// Multi-round token reuse: chain_length consecutive verifications with
/// verifier-value updates; reports per-round conditional pass rates.
ExperimentReport run_reuse_chain(const ExperimentConfig& config);

/// CSV per the fixed schema plus a sidecar summary (path + ".summary").
void write_report(const ExperimentReport& report, const std::string& path);

/// CSV content as a string (exact bytes that write_report emits).
std::string report_csv(const ExperimentReport& report);

} // namespace qpufsim

#endif
