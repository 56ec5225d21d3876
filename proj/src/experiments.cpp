#include "qpufsim/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <thread>

namespace qpufsim {

namespace {

// Runs fn(i) for i in [0, n); trials write into index-addressed slots, so
// the result is identical for any worker count.
void parallel_for(long n, int workers, const std::function<void(long)>& fn) {
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 1 || n < 2) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    workers = static_cast<int>(std::min<long>(workers, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (long i = w; i < n; i += workers) fn(i);
        });
    for (auto& t : pool) t.join();
}

double elapsed_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Uniform state from the orthogonal complement of the given (orthonormal
// or not) frame; draws Gaussians and projects the frame out.
Vector complement_sample(const std::vector<Vector>& frame, int dim, RngStream& rng) {
    for (;;) {
        Vector v(dim);
        for (int i = 0; i < dim; ++i) v(i) = rng.complex_gaussian();
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& f : frame) v -= f.dot(v) / f.squaredNorm() * f;
        double n = v.norm();
        if (n > 1e-12) return v / n;
    }
}

Vector span_sample(const std::vector<Vector>& frame, RngStream& rng) {
    Vector v = Vector::Zero(frame.front().size());
    for (const auto& f : frame) v += rng.complex_gaussian() * f;
    return v / v.norm();
}

struct MeanStderr {
    double mean;
    double stderr_p;
};

MeanStderr mean_stderr(const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= std::max<std::size_t>(1, xs.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

} // namespace

ExperimentReport run_outcome_histogram(const ExperimentConfig& config) {
    const int d = config.ancilla_dim_d, D = config.dim_D;
    if (d < 2 || D < 1)
        throw std::invalid_argument("run_outcome_histogram: d and D must be set");
    auto t0 = std::chrono::steady_clock::now();

    std::vector<int> diffs(config.num_states);
    parallel_for(config.num_states, config.workers, [&](long i) {
        RngStream rng(config.master_seed, static_cast<std::uint64_t>(i));
        UnitaryMatrix u = haar_unitary(D, rng);
        PeQpuf pe(eigensystem_unitary(u, d), 0);
        PureState input = pe.to_eigenbasis(random_pure_state(D, rng));
        PeToken token = generate(pe, input, rng);
        auto [m1, post] = measure(pe, token.state_eig, rng);
        int diff = ((m1 - token.verifier_value) % d + d) % d;
        if (diff > d / 2) diff -= d; // map into (-d/2, d/2]
        diffs[i] = diff;
    });

    std::vector<long> counts(d, 0);
    for (int diff : diffs) ++counts[diff + d / 2 - (d % 2 == 0 ? 1 : 0)];

    ExperimentReport report;
    report.config = config;
    for (int b = 0; b < d; ++b) {
        int diff = b - d / 2 + (d % 2 == 0 ? 1 : 0);
        report.histogram_rows.push_back({diff, counts[b]});
    }
    report.wall_clock_s = elapsed_since(t0);
    return report;
}

ExperimentReport run_verification_rate(const ExperimentConfig& config) {
    const int d = config.ancilla_dim_d, D = config.dim_D;
    if (d < 2 || D < 1 || config.delta_values.empty())
        throw std::invalid_argument("run_verification_rate: d, D and deltas must be set");
    auto t0 = std::chrono::steady_clock::now();

    const long per_cell = config.num_states;
    const long cells =
        static_cast<long>(config.delta_values.size()) * config.num_iterations;
    std::vector<char> passed(cells * per_cell);

    parallel_for(cells * per_cell, config.workers, [&](long t) {
        long cell = t / per_cell;
        int delta = config.delta_values[cell / config.num_iterations];
        RngStream rng(config.master_seed, static_cast<std::uint64_t>(t));
        UnitaryMatrix u = haar_unitary(D, rng);
        PeQpuf pe(eigensystem_unitary(u, d), delta);
        PureState input = pe.to_eigenbasis(random_pure_state(D, rng));
        PeToken token = generate(pe, input, rng);
        passed[t] = verify(pe, token, rng).passed ? 1 : 0;
    });

    ExperimentReport report;
    report.config = config;
    for (std::size_t di = 0; di < config.delta_values.size(); ++di) {
        int delta = config.delta_values[di];
        double bound = delta >= 2 ? bounds::verification_lower_bound(delta) : 0.0;
        for (int it = 0; it < config.num_iterations; ++it) {
            long cell = static_cast<long>(di) * config.num_iterations + it;
            long n_pass = 0;
            for (long s = 0; s < per_cell; ++s) n_pass += passed[cell * per_cell + s];
            report.rate_rows.push_back(
                {delta, it, static_cast<double>(n_pass) / per_cell, bound,
                 config.num_states});
        }
    }
    report.wall_clock_s = elapsed_since(t0);
    return report;
}

ExperimentReport run_forge_ideal(const ExperimentConfig& config,
                                 AdversaryStrategy strategy) {
    const int D = config.dim_D, q = config.q_size;
    if (D < 2 || q >= D)
        throw std::invalid_argument("run_forge_ideal: requires |Q_A| < D");
    auto t0 = std::chrono::steady_clock::now();

    std::vector<double> p(config.trials);
    parallel_for(config.trials, config.workers, [&](long t) {
        RngStream rng(config.master_seed, static_cast<std::uint64_t>(t));
        UnitaryMatrix u = haar_unitary(D, rng);
        // best-case database: q distinct outcomes, no degeneracies
        std::vector<Vector> known;
        known.reserve(q);
        for (int i = 0; i < q; ++i) known.push_back(u.matrix().col(i));
        int target = q + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(D - q)));
        Vector guess;
        switch (strategy) {
        case AdversaryStrategy::Complement:
            guess = complement_sample(known, D, rng);
            break;
        case AdversaryStrategy::Uniform:
            guess = random_pure_state(D, rng).amplitudes();
            break;
        case AdversaryStrategy::Span:
            if (known.empty())
                throw std::invalid_argument("run_forge_ideal: span strategy needs |Q_A| >= 1");
            guess = span_sample(known, rng);
            break;
        }
        p[t] = std::norm(guess.dot(u.matrix().col(target)));
    });

    auto [mean, se] = mean_stderr(p);
    ExperimentReport report;
    report.config = config;
    report.forgery_rows.push_back({config.experiment_id, D, 0, q, 0, mean, se,
                                   bounds::ideal_forgery_bound(D, q)});
    report.wall_clock_s = elapsed_since(t0);
    return report;
}

ExperimentReport run_forge_pe(const ExperimentConfig& config) {
    const int d = config.ancilla_dim_d, D = config.dim_D, q = config.q_size;
    if (config.delta_values.size() != 1)
        throw std::invalid_argument("run_forge_pe: exactly one delta required");
    const int delta = config.delta_values.front();
    if (static_cast<long>(q) * 4 * delta >= d)
        throw std::invalid_argument("run_forge_pe: outcome spacing infeasible (q*4*Delta >= d)");
    auto t0 = std::chrono::steady_clock::now();

    const int n_strategies = 2; // complement, uniform
    std::vector<double> p(static_cast<long>(config.trials) * n_strategies);
    parallel_for(config.trials, config.workers, [&](long t) {
        RngStream rng(config.master_seed, static_cast<std::uint64_t>(t));
        UnitaryMatrix u = haar_unitary(D, rng);
        PeQpuf pe(eigensystem_unitary(u, d), delta);

        // adversary database: q honest tokens with known outcomes
        std::vector<Vector> known;
        std::vector<int> outcomes;
        for (int i = 0; i < q; ++i) {
            PureState input = pe.to_eigenbasis(random_pure_state(D, rng));
            PeToken token = generate(pe, input, rng);
            known.push_back(token.state_eig.amplitudes());
            outcomes.push_back(token.verifier_value);
        }

        // target m with circular distance >= 2*Delta from every known outcome
        std::vector<int> valid;
        for (int m = 0; m < d; ++m) {
            bool ok = true;
            for (int k : outcomes)
                if (circular_distance_d(m, k, d) < 2 * delta) { ok = false; break; }
            if (ok) valid.push_back(m);
        }
        int m = valid[rng.uniform_int(valid.size())];

        Vector comp_guess = complement_sample(known, D, rng);
        Vector unif_guess = random_pure_state(D, rng).amplitudes();
        p[t * n_strategies + 0] =
            window_weight(pe, m, PureState(comp_guess, Basis::EigenbasisOfU));
        p[t * n_strategies + 1] =
            window_weight(pe, m, PureState(unif_guess, Basis::EigenbasisOfU));
    });

    double bound = bounds::pe_forgery_bound(d, delta, q);
    ExperimentReport report;
    report.config = config;
    const char* names[n_strategies] = {"complement", "uniform"};
    for (int s = 0; s < n_strategies; ++s) {
        std::vector<double> ps(config.trials);
        for (long t = 0; t < config.trials; ++t) ps[t] = p[t * n_strategies + s];
        auto [mean, se] = mean_stderr(ps);
        report.forgery_rows.push_back({config.experiment_id + "-" + names[s], d,
                                       delta, q, 0, mean, se, bound});
    }
    report.wall_clock_s = elapsed_since(t0);
    return report;
}

ExperimentReport run_reuse_chain(const ExperimentConfig& config) {
    const int d = config.ancilla_dim_d, D = config.dim_D;
    if (config.delta_values.size() != 1)
        throw std::invalid_argument("run_reuse_chain: exactly one delta required");
    const int delta = config.delta_values.front();
    const int n_rounds = config.chain_length;
    if (n_rounds < 1)
        throw std::invalid_argument("run_reuse_chain: chain_length must be >= 1");
    auto t0 = std::chrono::steady_clock::now();

    // reached[t*n + r] == 1 iff token t entered round r; passed likewise
    std::vector<char> reached(static_cast<long>(config.num_states) * n_rounds, 0);
    std::vector<char> passed(static_cast<long>(config.num_states) * n_rounds, 0);
    parallel_for(config.num_states, config.workers, [&](long t) {
        RngStream rng(config.master_seed, static_cast<std::uint64_t>(t));
        UnitaryMatrix u = haar_unitary(D, rng);
        PeQpuf pe(eigensystem_unitary(u, d), delta);
        PureState input = pe.to_eigenbasis(random_pure_state(D, rng));
        PeToken token = generate(pe, input, rng);
        for (int r = 0; r < n_rounds; ++r) {
            reached[t * n_rounds + r] = 1;
            PeVerification v = verify(pe, token, rng);
            passed[t * n_rounds + r] = v.passed ? 1 : 0;
            if (!v.passed) break; // failed chains terminate
            token = std::move(v.refreshed);
        }
    });

    ExperimentReport report;
    report.config = config;
    double bound = delta >= 2 ? bounds::verification_lower_bound(delta) : 0.0;
    for (int r = 0; r < n_rounds; ++r) {
        long n_in = 0, n_pass = 0;
        for (long t = 0; t < config.num_states; ++t) {
            n_in += reached[t * n_rounds + r];
            n_pass += passed[t * n_rounds + r];
        }
        double rate = n_in ? static_cast<double>(n_pass) / n_in : 0.0;
        report.rate_rows.push_back({delta, r, rate, bound, static_cast<int>(n_in)});
    }
    report.wall_clock_s = elapsed_since(t0);
    return report;
}

std::string report_csv(const ExperimentReport& report) {
    std::string out;
    const auto& c = report.config;
    if (!report.histogram_rows.empty()) {
        out += "experiment_id,d,D,diff,count\n";
        for (const auto& r : report.histogram_rows)
            out += c.experiment_id + "," + std::to_string(c.ancilla_dim_d) + "," +
                   std::to_string(c.dim_D) + "," + std::to_string(r.diff) + "," +
                   std::to_string(r.count) + "\n";
    }
    if (!report.rate_rows.empty()) {
        out += "experiment_id,d,D,delta,iteration,v_rate,bound,num_states\n";
        for (const auto& r : report.rate_rows)
            out += c.experiment_id + "," + std::to_string(c.ancilla_dim_d) + "," +
                   std::to_string(c.dim_D) + "," + std::to_string(r.delta) + "," +
                   std::to_string(r.iteration) + "," + fmt_double(r.v_rate) + "," +
                   fmt_double(r.bound) + "," + std::to_string(r.num_states) + "\n";
    }
    if (!report.forgery_rows.empty()) {
        out += "experiment_id,d_or_D,delta,q_size,trial_block,mean_p,stderr,bound\n";
        for (const auto& r : report.forgery_rows)
            out += r.experiment_id + "," + std::to_string(r.d_or_D) + "," +
                   std::to_string(r.delta) + "," + std::to_string(r.q_size) + "," +
                   std::to_string(r.trial_block) + "," + fmt_double(r.mean_p) + "," +
                   fmt_double(r.stderr_p) + "," + fmt_double(r.bound) + "\n";
    }
    return out;
}

void write_report(const ExperimentReport& report, const std::string& path) {
    {
        std::ofstream csv(path, std::ios::binary);
        if (!csv) throw std::runtime_error("write_report: cannot open " + path);
        csv << report_csv(report);
        if (!csv) throw std::runtime_error("write_report: write failed for " + path);
    }
    const std::string side = path + ".summary";
    std::ofstream sum(side, std::ios::binary);
    if (!sum) throw std::runtime_error("write_report: cannot open " + side);
    const auto& c = report.config;
    sum << "experiment_id=" << c.experiment_id << "\n"
        << "seed=" << c.master_seed << "\n"
        << "d=" << c.ancilla_dim_d << "\n"
        << "D=" << c.dim_D << "\n"
        << "num_states=" << c.num_states << "\n"
        << "num_iterations=" << c.num_iterations << "\n"
        << "trials=" << c.trials << "\n"
        << "q_size=" << c.q_size << "\n"
        << "chain_length=" << c.chain_length << "\n"
        << "version=qpufsim-0.1.0\n"
        << "wall_clock_s=" << fmt_double(report.wall_clock_s) << "\n";
    if (!sum) throw std::runtime_error("write_report: write failed for " + side);
}

} // namespace qpufsim
