#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mpole::cli {

inline constexpr std::uint64_t default_seed = 12345;

struct bench_options {
    int pmin = 1;
    int pmax = 50;
    int batch = 0;        // 0: one batch width of solids
    long long reps = 0;   // 0: auto, targets >= 50 ms of work per point
    std::string kernel = "both";  // optimized | naive | both
    std::uint64_t seed = default_seed;
    int mu = 0;  // 0: precision default
    int nu = 0;
};

struct bench_record {
    int order;
    std::string kernel;
    double ns_per_translation;
    int batch;
    long long reps;
};

/// Times batched translations with random solids and random nonzero
/// shifts on the calling thread. One record per (order, kernel).
/// Throws std::invalid_argument for bad flag ranges.
template <typename Real>
std::vector<bench_record> run_bench(const bench_options& opt);

/// Header `P,kernel,ns_per_translation,batch,reps`, one record per line.
void write_csv(std::ostream& os, std::span<const bench_record> records);

/// Least-squares slope of log(ns) against log(P) over plo <= P <= phi.
double loglog_slope(std::span<const bench_record> records,
                    const std::string& kernel, int plo, int phi);

}  // namespace mpole::cli
