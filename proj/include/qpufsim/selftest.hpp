#ifndef QPUFSIM_SELFTEST_HPP
#define QPUFSIM_SELFTEST_HPP

#include <cstdint>
#include <ostream>

namespace qpufsim {

/// Condensed invariant suite across all modules; prints one line per
/// check and returns true iff every check passed.
bool selftest(std::ostream& os, std::uint64_t seed);

} // namespace qpufsim

#endif
