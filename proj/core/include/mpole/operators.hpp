#pragma once

#include <memory>
#include <span>
#include <vector>

#include "mpole/kernels.hpp"

namespace mpole {

/// Dense swap matrix B_n for the exchange of the x- and z-axes, acting
/// on signed coefficient rows. (2n+1) x (2n+1), row-major, entry (m, l)
/// at [(m+n)*(2n+1) + (l+n)]. Built in double regardless of the library
/// precision; every entry is a dyadic rational.
std::vector<double> wigner_b(int n);

/// Swap matrices F_n (real parts) and G_n (imaginary parts) derived
/// from B_n, each (n+1) x (n+1) row-major:
///
///   F_n[m][l] = B_n[0][m]                      if l = 0
///               B_n[l][m] + (-1)^l B_n[-l][m]  otherwise
///   G_n[m][l] = 0                              if l = 0 or m = 0
///               B_n[l][m] - (-1)^l B_n[-l][m]  otherwise
///
/// Both are 50% structurally zero in a chequerboard: F_n[m][l] = 0
/// whenever (m+l) mod 2 != n mod 2, G_n with the opposite parity.
struct swap_pair {
    std::vector<double> f;
    std::vector<double> g;
};
swap_pair swap_matrices(int n, const std::vector<double>& b);

/// Packs a (n+1) x (n+1) chequerboard matrix into the stream the
/// blocked kernel consumes: rows padded with zeros to a multiple of mu,
/// then per mu-row panel, per column l, the mu/2 values of parity-p
/// rows in increasing order. p must be the matrix's nonzero parity.
/// Throws std::invalid_argument for odd mu.
template <typename Real>
std::vector<Real> pack(std::span<const Real> dense, int n, int mu, int parity);

/// Per-row swap tables: the dense matrices and the four packed streams
/// (F, G and their transposes) consumed by the pipeline.
template <typename Real>
struct swap_matrix_set {
    int n = 0;
    std::vector<Real> f_dense;
    std::vector<Real> g_dense;
    std::vector<Real> f_packed;
    std::vector<Real> g_packed;
    std::vector<Real> ft_packed;
    std::vector<Real> gt_packed;
};

/// Shift-independent tables for translations up to a maximum order:
/// the faculty table 0! .. (2P-2)!, inverse faculties, and the packed
/// swap matrices for n = 0 .. P-1. Immutable after construction.
template <typename Real>
class operator_data {
public:
    /// Throws std::invalid_argument when order exceeds max_order() or
    /// the config is invalid.
    explicit operator_data(int order,
                           kernel_config cfg = default_kernel_config<Real>());

    int order() const noexcept { return order_; }
    const kernel_config& config() const noexcept { return cfg_; }

    /// entries[k] = k! for k = 0 .. 2*order - 2.
    std::span<const Real> faculties() const noexcept { return faculties_; }

    /// entries[d] = 1/d! for d = 0 .. order - 1.
    std::span<const Real> inv_faculties() const noexcept {
        return inv_faculties_;
    }

    const swap_matrix_set<Real>& swaps(int n) const {
        return swaps_[static_cast<std::size_t>(n)];
    }

    /// Largest order whose faculty table stays finite: the largest P
    /// with (2P-2)! representable. 86 in double, 18 in single.
    static int max_order() noexcept;

    /// Shared, lazily built instance per (order, cfg). Thread safe;
    /// exactly one instance is ever constructed per key.
    static std::shared_ptr<const operator_data> acquire(
        int order, kernel_config cfg = default_kernel_config<Real>());

private:
    int order_;
    kernel_config cfg_;
    std::vector<Real> faculties_;
    std::vector<Real> inv_faculties_;
    std::vector<swap_matrix_set<Real>> swaps_;
};

}  // namespace mpole
