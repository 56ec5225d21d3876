#ifndef QPUFSIM_BOUNDS_HPP
#define QPUFSIM_BOUNDS_HPP

#include <map>
#include <string>

namespace qpufsim::bounds {

/// Lower bound 1 - 2/(pi^2 (b + 1/2)) on the truncated sinc^2 series
/// inside the window (margin b >= 0).
double lemma1_lower(double b);

/// Upper bound 2/(pi^2 (c - 1)) on the truncated sinc^2 series outside
/// the window (margin c > 1).
double lemma2_upper(double c);

/// f(Delta) = (1 - 2/(pi^2 (sqrt(Delta)+1/2))) (1 - 2/(pi^2 |Delta-1/2|)),
/// Delta >= 2.
double f_delta(int delta);

/// Authentic-verification lower bound (1 - sqrt(1 - f(Delta)))^2.
double verification_lower_bound(int delta);

/// Ideal-channel forgery bound 1/(D - |Q_A|).
double ideal_forgery_bound(int dim_D, int q_size);

/// PE forgery bound
/// (1 - 2/(pi^2 (Delta/2 - 1))) / (d/(2 (Delta + Delta/2)) - |Q_A|)
///   + 2/(pi^2 (Delta/2 - 1)),
/// valid for Delta >= 4 and d/(3 Delta) > |Q_A|.
double pe_forgery_bound(int d, int delta, int q_size);

struct BoundReport {
    std::string name;
    std::map<std::string, double> parameters;
    double value;
    bool validity_preconditions_met;
};

/// Evaluate a named bound into a report row; never throws, records
/// failed preconditions instead.
BoundReport report_f_delta(int delta);
BoundReport report_verification_lower_bound(int delta);
BoundReport report_ideal_forgery(int dim_D, int q_size);
BoundReport report_pe_forgery(int d, int delta, int q_size);

} // namespace qpufsim::bounds

#endif
