#pragma once

#include <span>

#include "mpole/operators.hpp"
#include "mpole/solid.hpp"
#include "mpole/workspace.hpp"

namespace mpole {

/// One translation job: source expansion, shift vector r_AB pointing
/// from the source centre to the target centre, the requested output
/// order, and the destination solid (resized and overwritten; it may
/// alias the source of the same request, but not of another one).
template <typename Real>
struct translation_request {
    const solid<Real>* source;
    vec3<Real> shift;
    int target_order;
    solid<Real>* output;
};

/// Batched multipole-to-local translation. Requests may carry arbitrary
/// shifts and mixed orders; the batch is partitioned by (input order,
/// output order) and processed in chunks of the configured batch width.
///
/// Requires max(input, output) order <= ops.order() and <= ws.max_order(),
/// and ws.config() == ops.config(). Throws std::domain_error for zero
/// shifts and std::invalid_argument for order or workspace mismatches.
template <typename Real>
void m2l(const operator_data<Real>& ops,
         std::span<const translation_request<Real>> batch,
         workspace<Real>& ws);

/// Batched multipole-to-multipole recentring (exact at equal orders).
template <typename Real>
void m2m(const operator_data<Real>& ops,
         std::span<const translation_request<Real>> batch,
         workspace<Real>& ws);

/// Batched local-to-local recentring (exact at equal orders).
template <typename Real>
void l2l(const operator_data<Real>& ops,
         std::span<const translation_request<Real>> batch,
         workspace<Real>& ws);

// Single-request conveniences.
template <typename Real>
solid<Real> m2l(const operator_data<Real>& ops, const solid<Real>& m,
                const vec3<Real>& shift, int target_order, workspace<Real>& ws);
template <typename Real>
solid<Real> m2m(const operator_data<Real>& ops, const solid<Real>& m,
                const vec3<Real>& shift, int target_order, workspace<Real>& ws);
template <typename Real>
solid<Real> l2l(const operator_data<Real>& ops, const solid<Real>& l,
                const vec3<Real>& shift, int target_order, workspace<Real>& ws);

/// Reference kernel: the four-fold nested loop over the double-height
/// sum L_n^m = (-1)^n sum_k sum_l conj(M_k^l) S_{n+k}^{m+l}(r), with S
/// evaluated up to order P_in + P_out - 1.
template <typename Real>
solid<Real> m2l_naive(const solid<Real>& m, const vec3<Real>& r,
                      int target_order);

/// Sign constants of the z-axis unit-shift recentring kernels, fixed by
/// the requirement that recentring by r_AB moves the expansion centre
/// from A to B = A + r_AB:
///
///   m2m:  M'_n^m = sum_{k<=n} sigma^{n-k} M_k^m / (n-k)!  with sigma = -1
///   l2l:  L'_n^m = sum_{k>=n} sigma^{k-n} L_k^m / (k-n)!  with sigma = +1
inline constexpr int m2m_shift_sign = -1;
inline constexpr int l2l_shift_sign = +1;

}  // namespace mpole
