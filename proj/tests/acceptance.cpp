// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "qpufsim/bounds.hpp"
#include "qpufsim/experiments.hpp"
#include "qpufsim/ideal.hpp"
#include "qpufsim/pe.hpp"

using namespace qpufsim;

namespace {

constexpr std::uint64_t kSeed = 424242;
int g_failures = 0;

void report(int criterion, const char* what, bool ok, const std::string& detail) {
    std::printf("criterion %2d %-4s %s (%s)\n", criterion, ok ? "PASS" : "FAIL", what,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double sinc(double t) {
    if (std::abs(t) < 1e-12) return 1.0;
    constexpr double pi = 3.14159265358979323846;
    return std::sin(pi * t) / (pi * t);
}

ExperimentConfig fig3_right_config() {
    ExperimentConfig c;
    c.experiment_id = "acceptance-fig3-right";
    c.ancilla_dim_d = 128;
    c.dim_D = 8;
    c.delta_values = {2, 4, 8, 16, 32};
    c.num_states = 10000;
    c.num_iterations = 5;
    c.master_seed = kSeed;
    c.workers = 0;
    return c;
}

// criteria 1 and 10 share the first run; the CSV comes back via out_csv
void criterion_1(std::string& out_csv) {
    ExperimentConfig c = fig3_right_config();
    ExperimentReport r = run_verification_rate(c);
    out_csv = report_csv(r);

    std::map<int, double> mean_rate, bound;
    for (const auto& row : r.rate_rows) {
        mean_rate[row.delta] += row.v_rate / c.num_iterations;
        bound[row.delta] = row.bound;
    }
    bool dominates = true;
    std::vector<double> gaps;
    std::string detail;
    for (int delta : c.delta_values) {
        double gap = mean_rate[delta] - bound[delta];
        dominates = dominates && gap > 0.0;
        gaps.push_back(gap);
        detail += "gap(" + std::to_string(delta) + ")=" + fmt(gap) + " ";
    }
    int inversions = 0;
    for (std::size_t i = 1; i < gaps.size(); ++i)
        if (gaps[i] > gaps[i - 1] + 1e-12) ++inversions;
    report(1, "verification rate dominates the analytic bound, shrinking gap",
           dominates && inversions <= 1, detail + "inversions=" + std::to_string(inversions));
}

void criterion_2() {
    ExperimentConfig c;
    c.experiment_id = "acceptance-fig3-left";
    c.ancilla_dim_d = 64;
    c.dim_D = 64;
    c.num_states = 1000;
    c.master_seed = kSeed;
    c.workers = 0;
    ExperimentReport r = run_outcome_histogram(c);

    long best = -1, at = 0, near = 0, total = 0;
    for (const auto& row : r.histogram_rows) {
        total += row.count;
        if (row.count > best) { best = row.count; at = row.diff; }
        if (std::abs(row.diff) <= 5) near += row.count;
    }
    double p_near = static_cast<double>(near) / total;
    double vlb5 = bounds::verification_lower_bound(5);
    report(2, "outcome-difference histogram peaks at 0 with concentrated mass",
           at == 0 && p_near > vlb5,
           "mode=" + std::to_string(at) + " P(|diff|<=5)=" + fmt(p_near) +
               " bound=" + fmt(vlb5));
}

void criterion_3() {
    ExperimentConfig c;
    c.experiment_id = "acceptance-forge-ideal";
    c.dim_D = 16;
    c.q_size = 4;
    c.trials = 100000;
    c.master_seed = kSeed;
    c.workers = 0;
    ExperimentReport r = run_forge_ideal(c);
    const auto& row = r.forgery_rows.front();
    double target = 1.0 / 12.0;
    bool ok = std::abs(row.mean_p - target) <= 3.0 * row.stderr_p;
    report(3, "ideal forgery mean within 3 stderr of 1/(D - q)", ok,
           "mean=" + fmt(row.mean_p) + " stderr=" + fmt(row.stderr_p) +
               " target=" + fmt(target));
}

void criterion_4() {
    bool ok = true;
    std::string detail;
    for (int q : {0, 2}) {
        ExperimentConfig c;
        c.experiment_id = "acceptance-forge-pe-q" + std::to_string(q);
        c.ancilla_dim_d = 128;
        c.dim_D = 64;
        c.delta_values = {4};
        c.q_size = q;
        c.trials = 10000;
        c.master_seed = kSeed;
        c.workers = 0;
        ExperimentReport r = run_forge_pe(c);
        for (const auto& row : r.forgery_rows) {
            bool below = row.mean_p <= row.bound + 3.0 * row.stderr_p;
            ok = ok && below;
            detail += row.experiment_id + "=" + fmt(row.mean_p) + "<=" +
                      fmt(row.bound) + " ";
        }
    }
    report(4, "pe forgery means below the closed-form bound for both strategies",
           ok, detail);
}

void criterion_5() {
    bool ok = true;
    double worst_tv = 0.0, worst_fid = 1.0;
    int pair = 0;
    for (auto [d, D] : {std::pair{8, 4}, std::pair{16, 8}, std::pair{32, 8}}) {
        for (int t = 0; t < 20; ++t) {
            RngStream rng(kSeed, static_cast<std::uint64_t>(1000 + pair++));
            UnitaryMatrix u = haar_unitary(D, rng);
            PeQpuf pe = PeQpuf::from_unitary(u, d, 0);
            PureState psi = random_pure_state(D, rng);
            Eigen::VectorXd fast = outcome_distribution(pe, pe.to_eigenbasis(psi));
            Eigen::VectorXd circ = full_circuit_distribution(u, d, psi);
            double tv = 0.5 * (fast - circ).cwiseAbs().sum();
            worst_tv = std::max(worst_tv, tv);

            RngStream ra(kSeed, static_cast<std::uint64_t>(2000 + pair));
            RngStream rb(kSeed, static_cast<std::uint64_t>(2000 + pair));
            auto [kc, post_c] = full_circuit_measure(u, d, psi, ra);
            auto [kf, post_f] = measure(pe, pe.to_eigenbasis(psi), rb);
            double fid = fidelity(post_c.amplitudes(), pe.to_standard(post_f).amplitudes());
            worst_fid = std::min(worst_fid, fid);
            ok = ok && tv <= 1e-9 && kc == kf && fid >= 1.0 - 1e-9;
        }
    }
    report(5, "fast path matches the explicit circuit oracle", ok,
           "max_tv=" + fmt(worst_tv) + " min_fidelity=" + fmt(worst_fid));
}

void criterion_6() {
    bool ok = true;
    double worst_povm = 0.0, worst_comm = 0.0;
    // small scale: Kraus matrices taken from the explicit circuit, where
    // commutativity is not automatic from the representation
    {
        const int d = 8, D = 4;
        for (int t = 0; t < 10; ++t) {
            RngStream rng(kSeed, static_cast<std::uint64_t>(3000 + t));
            UnitaryMatrix u = haar_unitary(D, rng);
            std::vector<Matrix> kraus(d);
            Matrix povm_sum = Matrix::Zero(D, D);
            for (int k = 0; k < d; ++k) {
                kraus[k] = full_circuit_kraus(u, d, k);
                povm_sum += kraus[k].adjoint() * kraus[k];
            }
            worst_povm = std::max(worst_povm,
                                  max_norm_diff(povm_sum, Matrix::Identity(D, D)));
            for (int a = 0; a < d; ++a)
                for (int b = a + 1; b < d; ++b)
                    worst_comm = std::max(
                        worst_comm, max_norm_diff(kraus[a] * kraus[b],
                                                  kraus[b] * kraus[a]));
        }
    }
    // large scale: eigenbasis diagonals, completeness per eigenline
    {
        const int d = 128, D = 8;
        for (int t = 0; t < 10; ++t) {
            RngStream rng(kSeed, static_cast<std::uint64_t>(3100 + t));
            PeQpuf pe = PeQpuf::from_unitary(haar_unitary(D, rng), d, 0);
            Eigen::VectorXd diag_sum = Eigen::VectorXd::Zero(D);
            for (int k = 0; k < d; ++k) diag_sum += kraus_diag(pe, k).cwiseAbs2();
            worst_povm = std::max(
                worst_povm, (diag_sum - Eigen::VectorXd::Ones(D)).cwiseAbs().maxCoeff());
        }
    }
    ok = worst_povm <= 1e-9 && worst_comm <= 1e-12;
    report(6, "povm completeness and kraus commutativity", ok,
           "max_completeness_defect=" + fmt(worst_povm) +
               " max_commutator=" + fmt(worst_comm));
}

void criterion_7() {
    RngStream rng(kSeed, 4000);
    IdealQpuf qpuf(haar_unitary(16, rng));
    int passes = 0;
    const int n = 10000;
    for (int t = 0; t < n; ++t) {
        QueryRecord rec = generate_token(qpuf, random_pure_state(16, rng), rng);
        if (verify_token(qpuf, rec.token_state, rec.outcome, rng).passed) ++passes;
    }
    double worst_tv = 0.0;
    for (int t = 0; t < 50; ++t) {
        UnitaryMatrix u = haar_unitary(8, rng);
        IdealQpuf q2(u);
        PureState psi = random_pure_state(8, rng);
        double tv = 0.5 * (outcome_distribution(q2, psi) - rcnot_distribution(u, psi))
                              .cwiseAbs().sum();
        worst_tv = std::max(worst_tv, tv);
    }
    report(7, "ideal re-verification is exact; rcnot oracle agrees",
           passes == n && worst_tv <= 1e-9,
           "passes=" + std::to_string(passes) + "/" + std::to_string(n) +
               " max_tv=" + fmt(worst_tv));
}

void criterion_8() {
    const int d = 32, D = 6;
    RngStream rng(kSeed, 5000);
    EigenSystem es;
    es.dim_D = D;
    es.ancilla_dim_d = d;
    es.eigenvectors = haar_unitary(D, rng).matrix();
    es.phases.resize(D);
    int picked[D] = {0, 5, 11, 17, 24, 31};
    for (int j = 0; j < D; ++j) es.phases(j) = picked[j];
    PeQpuf pe(es, 0);

    bool ok = true;
    double worst = 0.0;
    for (int j = 0; j < D; ++j) {
        PureState ej = PureState::basis_state(D, j, Basis::EigenbasisOfU);
        RngStream r(kSeed, static_cast<std::uint64_t>(5100 + j));
        auto [k, post] = measure(pe, ej, r);
        double err = 1.0 - fidelity(post.amplitudes(), ej.amplitudes());
        worst = std::max(worst, err);
        ok = ok && k == picked[j] && err <= 1e-12;
    }
    report(8, "integer eigenphases estimated deterministically with fixed points",
           ok, "max_fidelity_defect=" + fmt(worst));
}

void criterion_9() {
    bool ok = true;
    double worst = 0.0;
    auto window = [](int width, double x) {
        double acc = 0.0;
        for (int k = -width; k <= width; ++k) acc += sinc(x - k) * sinc(x - k);
        return acc;
    };
    for (int delta : {4, 8, 16}) {
        for (double b : {1.0, std::sqrt(static_cast<double>(delta)), delta / 2.0}) {
            double low = bounds::lemma1_lower(b);
            double span = delta - b;
            for (int i = 0; i <= 80; ++i) {
                double x = -span + 2.0 * span * i / 80.0;
                double slack = window(delta, x) - low;
                worst = std::min(worst, slack);
                ok = ok && slack >= -1e-12;
            }
        }
        for (int c : {2, 3, 5}) {
            double up = bounds::lemma2_upper(static_cast<double>(c));
            for (int i = 0; i <= 80; ++i) {
                double x = delta + c + 10.0 * i / 80.0;
                double slack = up - std::max(window(delta, x), window(delta, -x));
                worst = std::min(worst, slack);
                ok = ok && slack >= -1e-12;
            }
        }
    }
    report(9, "truncated sinc series never violates the lemma bounds", ok,
           "min_slack=" + fmt(worst));
}

void criterion_10(const std::string& first_csv) {
    ExperimentConfig c = fig3_right_config();
    std::string second_csv = report_csv(run_verification_rate(c));
    report(10, "identical seeds reproduce byte-identical csv output",
           !first_csv.empty() && first_csv == second_csv,
           "bytes=" + std::to_string(first_csv.size()));
}

} // namespace

int main() {
    std::string fig3_right_csv;
    criterion_1(fig3_right_csv);
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(fig3_right_csv);
    std::printf("%s (%d/10 criteria passed)\n", g_failures == 0 ? "PASS" : "FAIL",
                10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
