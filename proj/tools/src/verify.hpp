#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bench.hpp"

namespace mpole::cli {

struct verify_options {
    int pmax = 0;  // 0: precision default (20 double, 8 single)
    std::uint64_t seed = default_seed;
    int mu = 0;
    int nu = 0;
    bool dump_tables = false;
    int order = -1;  // with dump_tables: dump this row only
    std::string charges_path;  // optional charge set for the field suite
};

struct suite_result {
    std::string name;
    double max_error;
    double tolerance;
    bool passed;
};

/// Runs the oracle and invariant suites and prints one line per suite.
/// Returns the per-suite reports; all passed iff every .passed is set.
template <typename Real>
std::vector<suite_result> run_verify(const verify_options& opt,
                                     std::ostream& os);

/// Dense F_n/G_n as decimal text followed by the four packed streams,
/// in pack() order.
template <typename Real>
void dump_tables(std::ostream& os, const verify_options& opt);

}  // namespace mpole::cli
