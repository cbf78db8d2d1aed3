#pragma once

#include <cstddef>

namespace mpole {

// Upper bounds for the block sizes; microkernel accumulator tiles live
// on the stack.
inline constexpr int max_block_height = 32;
inline constexpr int max_batch_width = 64;

/// Block sizes governing packing and the microkernel contract. mu is
/// the block height (even, >= 2), nu the batch width: the number of
/// solids processed per slab row.
struct kernel_config {
    int mu;
    int nu;

    friend bool operator==(const kernel_config&, const kernel_config&) = default;
};

/// Portable defaults: mu = 6 with nu = 8 (double) or nu = 16 (single).
template <typename Real>
kernel_config default_kernel_config() noexcept;

/// Throws std::invalid_argument unless mu is even with
/// 2 <= mu <= max_block_height and 1 <= nu <= max_batch_width.
void validate(const kernel_config& cfg);

constexpr int padded_rows(int rows, int mu) noexcept {
    return ((rows + mu - 1) / mu) * mu;
}

/// One mu x nu output tile of the blocked swap-matrix product.
///
/// `panel` holds k_count * mu/2 packed values in pack() order: for each
/// column k the mu/2 entries of rows i with (i + k) mod 2 == parity,
/// increasing i. b is k_count x nu row-major, c is mu x nu row-major.
/// Each packed value is consumed exactly once, in stream order.
template <typename Real>
void swap_microkernel(const Real* panel, int k_count, int parity,
                      const Real* b, Real* c, int mu, int nu,
                      bool accumulate);

/// Full blocked product with a packed swap matrix: c = A b where A is
/// the (rows x rows) matrix whose packed stream is `packed` (padded to
/// padded_rows(rows, mu) rows). b is rows x nu, c is padded x nu.
template <typename Real>
void swap_product(const Real* packed, int rows, int parity, const Real* b,
                  Real* c, int mu, int nu);

/// One output tile of the z-translation product. The matrix entries are
/// the faculties A[i][k] = (offset + i + k)! read from `fac`; nothing is
/// stored explicitly. c[i][j] = sum_k fac[offset+i+k] * b[k][j] for
/// i < rows (rows <= mu), j < nu.
template <typename Real>
void hankel_microkernel(const Real* fac, int offset, int k_count,
                        const Real* b, Real* c, int rows, int nu);

/// Tiles hankel_microkernel over out_rows rows in steps of mu.
template <typename Real>
void hankel_product(const Real* fac, int offset, int k_count, const Real* b,
                    Real* c, int out_rows, int mu, int nu);

/// z-axis unit-shift recentring products. w[d] holds the signed inverse
/// faculty sigma^d / d!.
///
///   lower: c[i][j] = sum_{k <= i, k < k_count} w[i-k] * b[k][j]
///   upper: c[i][j] = sum_{k >= i, k < k_count} w[k-i] * b[k][j]
template <typename Real>
void zshift_lower_product(const Real* w, const Real* b, int k_count, Real* c,
                          int out_rows, int nu);

template <typename Real>
void zshift_upper_product(const Real* w, const Real* b, int k_count, Real* c,
                          int out_rows, int nu);

/// Elementwise rotate-and-scale pass over `rows` slab rows of width nu:
///
///   re' = s * (re * cos_m - im * sin_m)
///   im' = s * (re * sin_m + im * cos_m)
///
/// with s = scale[j] (or 1 when scale is null) and the angle multiples
/// taken per (row m, column j) from the rows x nu tables.
template <typename Real>
void rotate_scale_rows(Real* re, Real* im, int rows, int nu,
                       const Real* scale, const Real* cos_m,
                       const Real* sin_m);

}  // namespace mpole
