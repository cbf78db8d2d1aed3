#include "mpole/kernels.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mpole {

template <>
kernel_config default_kernel_config<double>() noexcept {
    return {6, 8};
}

template <>
kernel_config default_kernel_config<float>() noexcept {
    return {6, 16};
}

void validate(const kernel_config& cfg) {
    if (cfg.mu < 2 || (cfg.mu & 1) || cfg.mu > max_block_height)
        throw std::invalid_argument("kernel_config: mu must be even, 2 <= mu <= " +
                                    std::to_string(max_block_height));
    if (cfg.nu < 1 || cfg.nu > max_batch_width)
        throw std::invalid_argument("kernel_config: nu must satisfy 1 <= nu <= " +
                                    std::to_string(max_batch_width));
}

namespace {

// Known block shapes get fully unrolled bodies; anything else falls
// back to the runtime-sized loop. Both consume the packed stream in
// identical order.
template <typename Real, int Mu, int Nu>
void swap_tile_fixed(const Real* __restrict panel, int k_count, int parity,
                     const Real* __restrict b, Real* __restrict c,
                     bool accumulate) {
    Real tile[Mu * Nu] = {};
    for (int k = 0; k < k_count; ++k) {
        const Real* brow = b + static_cast<std::size_t>(k) * Nu;
        const int first = (parity + k) & 1;
        for (int t = 0; t < Mu / 2; ++t) {
            const Real a = *panel++;
            Real* crow = tile + (first + 2 * t) * Nu;
            for (int j = 0; j < Nu; ++j) crow[j] += a * brow[j];
        }
    }
    if (accumulate) {
        for (int i = 0; i < Mu * Nu; ++i) c[i] += tile[i];
    } else {
        std::copy(tile, tile + Mu * Nu, c);
    }
}

template <typename Real>
void swap_tile_generic(const Real* __restrict panel, int k_count, int parity,
                       const Real* __restrict b, Real* __restrict c, int mu,
                       int nu, bool accumulate) {
    Real tile[max_block_height * max_batch_width] = {};
    const int half = mu / 2;
    for (int k = 0; k < k_count; ++k) {
        const Real* brow = b + static_cast<std::size_t>(k) * nu;
        const int first = (parity + k) & 1;
        for (int t = 0; t < half; ++t) {
            const Real a = *panel++;
            Real* crow = tile + (first + 2 * t) * nu;
            for (int j = 0; j < nu; ++j) crow[j] += a * brow[j];
        }
    }
    const int count = mu * nu;
    if (accumulate) {
        for (int i = 0; i < count; ++i) c[i] += tile[i];
    } else {
        std::copy(tile, tile + count, c);
    }
}

}  // namespace

template <typename Real>
void swap_microkernel(const Real* panel, int k_count, int parity,
                      const Real* b, Real* c, int mu, int nu,
                      bool accumulate) {
    switch (mu * 256 + nu) {
        case 6 * 256 + 8:
            swap_tile_fixed<Real, 6, 8>(panel, k_count, parity, b, c,
                                        accumulate);
            return;
        case 6 * 256 + 16:
            swap_tile_fixed<Real, 6, 16>(panel, k_count, parity, b, c,
                                         accumulate);
            return;
        case 14 * 256 + 16:
            swap_tile_fixed<Real, 14, 16>(panel, k_count, parity, b, c,
                                          accumulate);
            return;
        default:
            swap_tile_generic(panel, k_count, parity, b, c, mu, nu,
                              accumulate);
            return;
    }
}

template <typename Real>
void swap_product(const Real* packed, int rows, int parity, const Real* b,
                  Real* c, int mu, int nu) {
    const int panels = (rows + mu - 1) / mu;
    const std::size_t panel_len =
        static_cast<std::size_t>(rows) * static_cast<std::size_t>(mu / 2);
    for (int p = 0; p < panels; ++p) {
        swap_microkernel(packed + p * panel_len, rows, parity, b,
                         c + static_cast<std::size_t>(p) * mu * nu, mu, nu,
                         false);
    }
}

namespace {

template <typename Real, int Nu>
void hankel_tile_fixed(const Real* __restrict fac, int offset, int k_count,
                       const Real* __restrict b, Real* __restrict c,
                       int rows) {
    for (int i = 0; i < rows; ++i) {
        Real acc[Nu] = {};
        const Real* f = fac + offset + i;
        for (int k = 0; k < k_count; ++k) {
            const Real a = f[k];
            const Real* brow = b + static_cast<std::size_t>(k) * Nu;
            for (int j = 0; j < Nu; ++j) acc[j] += a * brow[j];
        }
        std::copy(acc, acc + Nu, c + static_cast<std::size_t>(i) * Nu);
    }
}

}  // namespace

template <typename Real>
void hankel_microkernel(const Real* fac, int offset, int k_count,
                        const Real* b, Real* c, int rows, int nu) {
    if (nu == 8) {
        hankel_tile_fixed<Real, 8>(fac, offset, k_count, b, c, rows);
        return;
    }
    if (nu == 16) {
        hankel_tile_fixed<Real, 16>(fac, offset, k_count, b, c, rows);
        return;
    }
    for (int i = 0; i < rows; ++i) {
        Real acc[max_batch_width] = {};
        const Real* f = fac + offset + i;
        for (int k = 0; k < k_count; ++k) {
            const Real a = f[k];
            const Real* brow = b + static_cast<std::size_t>(k) * nu;
            for (int j = 0; j < nu; ++j) acc[j] += a * brow[j];
        }
        std::copy(acc, acc + nu, c + static_cast<std::size_t>(i) * nu);
    }
}

template <typename Real>
void hankel_product(const Real* fac, int offset, int k_count, const Real* b,
                    Real* c, int out_rows, int mu, int nu) {
    for (int i0 = 0; i0 < out_rows; i0 += mu) {
        hankel_microkernel(fac, offset + i0, k_count, b,
                           c + static_cast<std::size_t>(i0) * nu,
                           std::min(mu, out_rows - i0), nu);
    }
}

template <typename Real>
void zshift_lower_product(const Real* w, const Real* b, int k_count, Real* c,
                          int out_rows, int nu) {
    for (int i = 0; i < out_rows; ++i) {
        Real acc[max_batch_width] = {};
        const int klim = std::min(i, k_count - 1);
        for (int k = 0; k <= klim; ++k) {
            const Real a = w[i - k];
            const Real* brow = b + static_cast<std::size_t>(k) * nu;
            for (int j = 0; j < nu; ++j) acc[j] += a * brow[j];
        }
        std::copy(acc, acc + nu, c + static_cast<std::size_t>(i) * nu);
    }
}

template <typename Real>
void zshift_upper_product(const Real* w, const Real* b, int k_count, Real* c,
                          int out_rows, int nu) {
    for (int i = 0; i < out_rows; ++i) {
        Real acc[max_batch_width] = {};
        for (int k = i; k < k_count; ++k) {
            const Real a = w[k - i];
            const Real* brow = b + static_cast<std::size_t>(k) * nu;
            for (int j = 0; j < nu; ++j) acc[j] += a * brow[j];
        }
        std::copy(acc, acc + nu, c + static_cast<std::size_t>(i) * nu);
    }
}

template <typename Real>
void rotate_scale_rows(Real* re, Real* im, int rows, int nu,
                       const Real* scale, const Real* cos_m,
                       const Real* sin_m) {
    for (int m = 0; m < rows; ++m) {
        Real* rrow = re + static_cast<std::size_t>(m) * nu;
        Real* irow = im + static_cast<std::size_t>(m) * nu;
        const Real* crow = cos_m + static_cast<std::size_t>(m) * nu;
        const Real* srow = sin_m + static_cast<std::size_t>(m) * nu;
        if (scale) {
            for (int j = 0; j < nu; ++j) {
                const Real a = rrow[j], bb = irow[j];
                rrow[j] = scale[j] * (a * crow[j] - bb * srow[j]);
                irow[j] = scale[j] * (a * srow[j] + bb * crow[j]);
            }
        } else {
            for (int j = 0; j < nu; ++j) {
                const Real a = rrow[j], bb = irow[j];
                rrow[j] = a * crow[j] - bb * srow[j];
                irow[j] = a * srow[j] + bb * crow[j];
            }
        }
    }
}

#define MPOLE_INSTANTIATE(Real)                                              \
    template void swap_microkernel<Real>(const Real*, int, int, const Real*, \
                                         Real*, int, int, bool);             \
    template void swap_product<Real>(const Real*, int, int, const Real*,     \
                                     Real*, int, int);                       \
    template void hankel_microkernel<Real>(const Real*, int, int,            \
                                           const Real*, Real*, int, int);    \
    template void hankel_product<Real>(const Real*, int, int, const Real*,   \
                                       Real*, int, int, int);                \
    template void zshift_lower_product<Real>(const Real*, const Real*, int,  \
                                             Real*, int, int);               \
    template void zshift_upper_product<Real>(const Real*, const Real*, int,  \
                                             Real*, int, int);               \
    template void rotate_scale_rows<Real>(Real*, Real*, int, int,            \
                                          const Real*, const Real*,          \
                                          const Real*);

MPOLE_INSTANTIATE(float)
MPOLE_INSTANTIATE(double)

#undef MPOLE_INSTANTIATE

}  // namespace mpole
