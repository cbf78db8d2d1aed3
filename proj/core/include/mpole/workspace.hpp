#pragma once

#include <vector>

#include "mpole/kernels.hpp"

namespace mpole {

namespace detail {
template <typename Real>
class translation_engine;
}

/// Mutable scratch area for the batched translations: the ping-pong
/// swap slab pairs, the per-column translation slabs, and the per-chunk
/// geometry tables. One workspace per concurrent caller; translations
/// never touch anything else that is mutable.
template <typename Real>
class workspace {
public:
    explicit workspace(int max_order,
                       kernel_config cfg = default_kernel_config<Real>());

    int max_order() const noexcept { return max_order_; }
    const kernel_config& config() const noexcept { return cfg_; }

private:
    friend class detail::translation_engine<Real>;

    int max_order_;
    kernel_config cfg_;

    // Swap slabs, padded_rows(max_order, mu) x nu each. Products write
    // to the partner pair; they cannot run in place.
    std::vector<Real> swap_a_re_, swap_a_im_;
    std::vector<Real> swap_b_re_, swap_b_im_;

    // Translation slabs, one block per column m. Input column m holds
    // P - m rows; output column m is padded to a multiple of mu.
    std::vector<Real> trans_in_re_, trans_in_im_;
    std::vector<Real> trans_out_re_, trans_out_im_;
    std::vector<std::size_t> in_offset_;   // row offsets, in slab rows
    std::vector<std::size_t> out_offset_;

    // Per-chunk geometry tables, row m (or n) by column j.
    std::vector<Real> cos_a_, sin_a_, sin_a_neg_;
    std::vector<Real> cos_b_, sin_b_, sin_b_neg_;
    std::vector<Real> pow_, inv_pow_;  // (max_order + 1) rows

    std::vector<Real> zshift_weights_;
};

}  // namespace mpole
