#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "qpufsim/experiments.hpp"
#include "qpufsim/selftest.hpp"

namespace {

struct CommonOpts {
    int d = 0;
    int D = 0;
    std::vector<int> deltas;
    int states = 1000;
    int iters = 1;
    int trials = 10000;
    int qsize = 0;
    int chain = 1;
    std::int64_t seed = -1;
    int workers = 0;
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--d", o.d, "ancilla dimension d");
    cmd->add_option("--D", o.D, "unitary dimension D");
    cmd->add_option("--delta", o.deltas, "decision boundary (repeatable)");
    cmd->add_option("--states", o.states, "number of tokens/states");
    cmd->add_option("--iters", o.iters, "iterations");
    cmd->add_option("--trials", o.trials, "Monte-Carlo trials");
    cmd->add_option("--qsize", o.qsize, "adversary database size");
    cmd->add_option("--chain", o.chain, "verification chain length");
    cmd->add_option("--seed", o.seed, "master seed (default: env QPUFSIM_SEED or random)");
    cmd->add_option("--workers", o.workers, "worker threads (0 = machine parallelism)");
    cmd->add_option("--out", o.out, "output CSV path");
    cmd->set_config("--config")->configurable(false);
}

std::uint64_t resolve_seed(std::int64_t flag_value) {
    if (flag_value >= 0) return static_cast<std::uint64_t>(flag_value);
    if (const char* env = std::getenv("QPUFSIM_SEED"))
        return std::strtoull(env, nullptr, 10);
    std::uint64_t s = std::random_device{}();
    std::cout << "generated seed: " << s << "\n";
    return s;
}

qpufsim::ExperimentConfig make_config(const std::string& id, const CommonOpts& o) {
    qpufsim::ExperimentConfig c;
    c.experiment_id = id;
    c.ancilla_dim_d = o.d;
    c.dim_D = o.D;
    c.delta_values = o.deltas;
    c.num_states = o.states;
    c.num_iterations = o.iters;
    c.trials = o.trials;
    c.q_size = o.qsize;
    c.chain_length = o.chain;
    c.master_seed = resolve_seed(o.seed);
    c.workers = o.workers;
    c.output_path = o.out.empty() ? id + ".csv" : o.out;
    return c;
}

void emit(const qpufsim::ExperimentReport& report) {
    qpufsim::write_report(report, report.config.output_path);
    std::cout << "wrote " << report.config.output_path << " ("
              << report.wall_clock_s << " s)\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qpufsim: quantum PUF protocol simulator"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* ideal_demo = app.add_subcommand("ideal-demo", "one ideal generate/verify round");
    auto* pe_demo = app.add_subcommand("pe-demo", "one PE generate/verify round");
    auto* fig3_left = app.add_subcommand("fig3-left", "outcome-difference histogram");
    auto* fig3_right = app.add_subcommand("fig3-right", "verification rate vs bound");
    auto* forge_ideal = app.add_subcommand("forge-ideal", "ideal-channel forgery Monte-Carlo");
    auto* forge_pe = app.add_subcommand("forge-pe", "PE forgery Monte-Carlo");
    auto* reuse_chain = app.add_subcommand("reuse-chain", "multi-round token reuse");
    auto* bounds_cmd = app.add_subcommand("bounds", "print closed-form bound table");
    auto* selftest_cmd = app.add_subcommand("selftest", "run the invariant suites");
    for (auto* cmd : {ideal_demo, pe_demo, fig3_left, fig3_right, forge_ideal,
                      forge_pe, reuse_chain, bounds_cmd, selftest_cmd})
        add_common(cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (ideal_demo->parsed()) {
            int D = o.D > 0 ? o.D : 8;
            qpufsim::RngStream rng(resolve_seed(o.seed));
            qpufsim::IdealQpuf qpuf(qpufsim::haar_unitary(D, rng));
            auto record = qpufsim::generate_token(
                qpuf, qpufsim::random_pure_state(D, rng), rng);
            auto result = qpufsim::verify_token(qpuf, record.token_state,
                                                record.outcome, rng);
            std::cout << "D=" << D << " outcome=" << record.outcome
                      << " verified_outcome=" << result.measured_outcome
                      << " pass=" << (result.passed ? "true" : "false") << "\n";
            return result.passed ? 0 : 2;
        }
        if (pe_demo->parsed()) {
            int D = o.D > 0 ? o.D : 8;
            int d = o.d > 0 ? o.d : 128;
            int delta = o.deltas.empty() ? 8 : o.deltas.front();
            qpufsim::RngStream rng(resolve_seed(o.seed));
            auto pe = qpufsim::PeQpuf::from_unitary(qpufsim::haar_unitary(D, rng),
                                                    d, delta);
            auto token = qpufsim::generate(
                pe, pe.to_eigenbasis(qpufsim::random_pure_state(D, rng)), rng);
            auto v = qpufsim::verify(pe, token, rng);
            std::cout << "d=" << d << " D=" << D << " delta=" << delta
                      << " m0=" << token.verifier_value << " m1=" << v.measured_outcome
                      << " pass=" << (v.passed ? "true" : "false") << "\n";
            return 0;
        }
        if (fig3_left->parsed()) {
            if (o.d == 0) o.d = 64;
            if (o.D == 0) o.D = 64;
            emit(qpufsim::run_outcome_histogram(make_config("fig3-left", o)));
            return 0;
        }
        if (fig3_right->parsed()) {
            if (o.d == 0) o.d = 128;
            if (o.D == 0) o.D = 8;
            if (o.deltas.empty()) o.deltas = {2, 4, 8, 16, 32};
            emit(qpufsim::run_verification_rate(make_config("fig3-right", o)));
            return 0;
        }
        if (forge_ideal->parsed()) {
            if (o.D == 0) o.D = 16;
            emit(qpufsim::run_forge_ideal(make_config("forge-ideal", o)));
            return 0;
        }
        if (forge_pe->parsed()) {
            if (o.d == 0) o.d = 128;
            if (o.D == 0) o.D = 128;
            if (o.deltas.empty()) o.deltas = {4};
            emit(qpufsim::run_forge_pe(make_config("forge-pe", o)));
            return 0;
        }
        if (reuse_chain->parsed()) {
            if (o.d == 0) o.d = 128;
            if (o.D == 0) o.D = 8;
            if (o.deltas.empty()) o.deltas = {8};
            if (o.chain < 1) o.chain = 5;
            emit(qpufsim::run_reuse_chain(make_config("reuse-chain", o)));
            return 0;
        }
        if (bounds_cmd->parsed()) {
            std::vector<int> deltas =
                o.deltas.empty() ? std::vector<int>{2, 4, 8, 16, 32} : o.deltas;
            int d = o.d > 0 ? o.d : 128;
            int D = o.D > 0 ? o.D : 16;
            std::cout << "delta,f_delta,verification_lower_bound,"
                         "ideal_forgery_bound(D=" << D << ",Q=" << o.qsize
                      << "),pe_forgery_bound(d=" << d << ",Q=" << o.qsize << ")\n";
            for (int delta : deltas) {
                auto f = qpufsim::bounds::report_f_delta(delta);
                auto v = qpufsim::bounds::report_verification_lower_bound(delta);
                auto fi = qpufsim::bounds::report_ideal_forgery(D, o.qsize);
                auto fp = qpufsim::bounds::report_pe_forgery(d, delta, o.qsize);
                auto cell = [](const qpufsim::bounds::BoundReport& r) {
                    return r.validity_preconditions_met ? std::to_string(r.value)
                                                        : std::string("n/a");
                };
                std::cout << delta << "," << cell(f) << "," << cell(v) << ","
                          << cell(fi) << "," << cell(fp) << "\n";
            }
            return 0;
        }
        if (selftest_cmd->parsed()) {
            std::uint64_t seed = o.seed >= 0 ? static_cast<std::uint64_t>(o.seed) : 12345;
            return qpufsim::selftest(std::cout, seed) ? 0 : 2;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
