#include "mpole/workspace.hpp"

#include <stdexcept>

namespace mpole {

template <typename Real>
workspace<Real>::workspace(int max_order, kernel_config cfg)
    : max_order_(max_order), cfg_(cfg) {
    validate(cfg);
    if (max_order < 1) throw std::invalid_argument("max_order must be >= 1");

    const std::size_t nu = static_cast<std::size_t>(cfg.nu);
    const std::size_t padded =
        static_cast<std::size_t>(padded_rows(max_order, cfg.mu));
    swap_a_re_.assign(padded * nu, Real(0));
    swap_a_im_.assign(padded * nu, Real(0));
    swap_b_re_.assign(padded * nu, Real(0));
    swap_b_im_.assign(padded * nu, Real(0));

    in_offset_.resize(max_order + 1);
    out_offset_.resize(max_order + 1);
    std::size_t in_rows = 0, out_rows = 0;
    for (int m = 0; m < max_order; ++m) {
        in_offset_[m] = in_rows;
        out_offset_[m] = out_rows;
        in_rows += static_cast<std::size_t>(max_order - m);
        out_rows += static_cast<std::size_t>(padded_rows(max_order - m, cfg.mu));
    }
    in_offset_[max_order] = in_rows;
    out_offset_[max_order] = out_rows;
    trans_in_re_.assign(in_rows * nu, Real(0));
    trans_in_im_.assign(in_rows * nu, Real(0));
    trans_out_re_.assign(out_rows * nu, Real(0));
    trans_out_im_.assign(out_rows * nu, Real(0));

    const std::size_t angle_rows = static_cast<std::size_t>(max_order);
    cos_a_.assign(angle_rows * nu, Real(0));
    sin_a_.assign(angle_rows * nu, Real(0));
    sin_a_neg_.assign(angle_rows * nu, Real(0));
    cos_b_.assign(angle_rows * nu, Real(0));
    sin_b_.assign(angle_rows * nu, Real(0));
    sin_b_neg_.assign(angle_rows * nu, Real(0));
    pow_.assign((angle_rows + 1) * nu, Real(0));
    inv_pow_.assign((angle_rows + 1) * nu, Real(0));

    zshift_weights_.assign(static_cast<std::size_t>(max_order), Real(0));
}

template class workspace<float>;
template class workspace<double>;

}  // namespace mpole
