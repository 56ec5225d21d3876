#include "qpufsim/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qpufsim::bounds {

namespace {
constexpr double kPiSq = std::numbers::pi * std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
} // namespace

double lemma1_lower(double b) {
    if (b < 0.0) throw std::invalid_argument("lemma1_lower: requires b >= 0");
    return 1.0 - 2.0 / (kPiSq * (b + 0.5));
}

double lemma2_upper(double c) {
    if (c <= 1.0)
        throw std::invalid_argument("lemma2_upper: requires c > 1 (bound vacuous)");
    return 2.0 / (kPiSq * (c - 1.0));
}

double f_delta(int delta) {
    if (delta < 2) throw std::invalid_argument("f_delta: requires Delta >= 2");
    double first = 1.0 - 2.0 / (kPiSq * (std::sqrt(static_cast<double>(delta)) + 0.5));
    double second = 1.0 - 2.0 / (kPiSq * std::abs(delta - 0.5));
    return first * second;
}

double verification_lower_bound(int delta) {
    double f = f_delta(delta);
    double s = 1.0 - std::sqrt(1.0 - f);
    return s * s;
}

double ideal_forgery_bound(int dim_D, int q_size) {
    if (q_size >= dim_D)
        throw std::invalid_argument("ideal_forgery_bound: requires |Q_A| < D");
    return 1.0 / (dim_D - q_size);
}

double pe_forgery_bound(int d, int delta, int q_size) {
    if (delta < 4)
        throw std::invalid_argument("pe_forgery_bound: requires Delta >= 4 (Delta/2 > 2)");
    if (static_cast<double>(d) / (3.0 * delta) <= q_size)
        throw std::invalid_argument("pe_forgery_bound: requires d/(3 Delta) > |Q_A|");
    double leak = 2.0 / (kPiSq * (delta / 2.0 - 1.0));
    double subspace = d / (2.0 * (delta + delta / 2.0)) - q_size;
    return (1.0 - leak) / subspace + leak;
}

template <typename F>
static BoundReport guarded(std::string name, std::map<std::string, double> params,
                           F&& eval) {
    BoundReport r{std::move(name), std::move(params), kNaN, true};
    try {
        r.value = eval();
    } catch (const std::invalid_argument&) {
        r.validity_preconditions_met = false;
    }
    return r;
}

BoundReport report_f_delta(int delta) {
    return guarded("f_delta", {{"Delta", static_cast<double>(delta)}},
                   [&] { return f_delta(delta); });
}

BoundReport report_verification_lower_bound(int delta) {
    return guarded("verification_lower_bound",
                   {{"Delta", static_cast<double>(delta)}},
                   [&] { return verification_lower_bound(delta); });
}

BoundReport report_ideal_forgery(int dim_D, int q_size) {
    return guarded("ideal_forgery_bound",
                   {{"D", static_cast<double>(dim_D)},
                    {"Q", static_cast<double>(q_size)}},
                   [&] { return ideal_forgery_bound(dim_D, q_size); });
}

BoundReport report_pe_forgery(int d, int delta, int q_size) {
    return guarded("pe_forgery_bound",
                   {{"d", static_cast<double>(d)},
                    {"Delta", static_cast<double>(delta)},
                    {"Q", static_cast<double>(q_size)}},
                   [&] { return pe_forgery_bound(d, delta, q_size); });
}

} // namespace qpufsim::bounds
