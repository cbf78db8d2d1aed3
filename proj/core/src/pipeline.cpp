#include "mpole/pipeline.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mpole/geometry.hpp"
#include "mpole/harmonics.hpp"
#include "mpole/kernels.hpp"

namespace mpole {

namespace detail {

/// Runs chunks of up to nu uniform-order requests through the four
/// stages: per-shift geometry tables, the forward rotate/swap pass into
/// the translation buffers, the column-wise z-axis product, and the
/// backward pass into the outputs.
template <typename Real>
class translation_engine {
public:
    enum class op_kind { m2l, m2m, l2l };

    translation_engine(const operator_data<Real>& ops, workspace<Real>& ws)
        : ops_(ops), ws_(ws), mu_(ws.config().mu), nu_(ws.config().nu) {
        if (!(ws.config() == ops.config()))
            throw std::invalid_argument(
                "workspace kernel config does not match operator data");
    }

    void run_chunk(op_kind kind,
                   std::span<const translation_request<Real>> chunk, int p_in,
                   int p_out) {
        const int p_rot = std::max(p_in, p_out);
        load_geometry(chunk, p_rot);

        const bool source_is_local = kind == op_kind::l2l;
        forward_pass(chunk, p_in, source_is_local);

        switch (kind) {
            case op_kind::m2l: z_translate_m2l(p_in, p_out); break;
            case op_kind::m2m: z_shift(p_in, p_out, m2m_shift_sign, false); break;
            case op_kind::l2l: z_shift(p_in, p_out, l2l_shift_sign, true); break;
        }

        backward_pass(chunk, kind, p_in, p_out);
    }

private:
    void load_geometry(std::span<const translation_request<Real>> chunk,
                       int p_rot) {
        const int nu = nu_;
        auto& ws = ws_;
        // Idle columns get benign values so padding never produces
        // non-finite intermediates.
        for (int j = 0; j < nu; ++j) {
            const bool active = j < static_cast<int>(chunk.size());
            shift_angles<Real> a{Real(1), Real(1), Real(0), Real(1), Real(0)};
            if (active) a = decompose_angles(chunk[j].shift);

            Real ca = Real(1), sa = Real(0), cb = Real(1), sb = Real(0);
            for (int m = 0; m < p_rot; ++m) {
                const std::size_t i = static_cast<std::size_t>(m) * nu + j;
                ws.cos_a_[i] = ca;
                ws.sin_a_[i] = sa;
                ws.sin_a_neg_[i] = -sa;
                ws.cos_b_[i] = cb;
                ws.sin_b_[i] = sb;
                ws.sin_b_neg_[i] = -sb;
                const Real nca = ca * a.cos_alpha - sa * a.sin_alpha;
                const Real nsa = sa * a.cos_alpha + ca * a.sin_alpha;
                ca = nca;
                sa = nsa;
                const Real ncb = cb * a.cos_beta - sb * a.sin_beta;
                const Real nsb = sb * a.cos_beta + cb * a.sin_beta;
                cb = ncb;
                sb = nsb;
            }
            Real pw = Real(1), ipw = Real(1);
            const Real inv = Real(1) / a.r_norm;
            for (int n = 0; n <= p_rot; ++n) {
                const std::size_t i = static_cast<std::size_t>(n) * nu + j;
                ws.pow_[i] = pw;
                ws.inv_pow_[i] = ipw;
                pw *= a.r_norm;
                ipw *= inv;
            }
        }
    }

    // Swap buffer rows for solid row n: coefficient m in slab row m,
    // padded with zero rows to a multiple of mu.
    void fill_from_sources(std::span<const translation_request<Real>> chunk,
                           int n) {
        const int nu = nu_;
        const int padded = padded_rows(n + 1, mu_);
        std::fill_n(ws_.swap_a_re_.begin(),
                    static_cast<std::size_t>(padded) * nu, Real(0));
        std::fill_n(ws_.swap_a_im_.begin(),
                    static_cast<std::size_t>(padded) * nu, Real(0));
        for (int j = 0; j < static_cast<int>(chunk.size()); ++j) {
            const solid<Real>& src = *chunk[j].source;
            for (int m = 0; m <= n; ++m) {
                const std::size_t i = static_cast<std::size_t>(m) * nu + j;
                ws_.swap_a_re_[i] = src.re(n, m);
                ws_.swap_a_im_[i] = src.im(n, m);
            }
        }
    }

    // One full axis-swap pass on rows 0..n of the A slabs (result lands
    // back in A; B is the ping-pong partner): swap, rotate by beta, swap.
    // Local solids use the transposed panels and need the m = 0 real row
    // halved on entry and doubled on exit; the transposed matrices fold
    // the missing negative-m partner of that entry twice.
    void swap_pass(int n, bool transposed, const Real* sin_b_row) {
        const auto& sw = ops_.swaps(n);
        const Real* fp = transposed ? sw.ft_packed.data() : sw.f_packed.data();
        const Real* gp = transposed ? sw.gt_packed.data() : sw.g_packed.data();
        const int rows = n + 1;
        const int fparity = n & 1;
        const int gparity = (n + 1) & 1;
        swap_product(fp, rows, fparity, ws_.swap_a_re_.data(),
                     ws_.swap_b_re_.data(), mu_, nu_);
        swap_product(gp, rows, gparity, ws_.swap_a_im_.data(),
                     ws_.swap_b_im_.data(), mu_, nu_);
        rotate_scale_rows<Real>(ws_.swap_b_re_.data(), ws_.swap_b_im_.data(),
                                rows, nu_, nullptr, ws_.cos_b_.data(),
                                sin_b_row);
        swap_product(fp, rows, fparity, ws_.swap_b_re_.data(),
                     ws_.swap_a_re_.data(), mu_, nu_);
        swap_product(gp, rows, gparity, ws_.swap_b_im_.data(),
                     ws_.swap_a_im_.data(), mu_, nu_);
    }

    void scale_row(Real* row, Real factor) {
        for (int j = 0; j < nu_; ++j) row[j] *= factor;
    }

    void forward_pass(std::span<const translation_request<Real>> chunk,
                      int p_in, bool source_is_local) {
        const int nu = nu_;
        for (int n = 0; n < p_in; ++n) {
            fill_from_sources(chunk, n);
            // multipoles shrink by |r|^{n+1}, locals grow by |r|^n
            const Real* scale =
                source_is_local
                    ? &ws_.pow_[static_cast<std::size_t>(n) * nu]
                    : &ws_.inv_pow_[static_cast<std::size_t>(n + 1) * nu];
            rotate_scale_rows(ws_.swap_a_re_.data(), ws_.swap_a_im_.data(),
                              n + 1, nu, scale, ws_.cos_a_.data(),
                              ws_.sin_a_.data());
            if (source_is_local) scale_row(ws_.swap_a_re_.data(), Real(0.5));
            swap_pass(n, source_is_local, ws_.sin_b_.data());
            if (source_is_local) scale_row(ws_.swap_a_re_.data(), Real(2));
            // row m of the swap buffer is row n - m of translation column m
            for (int m = 0; m <= n; ++m) {
                const std::size_t dst =
                    (ws_.in_offset_[m] + static_cast<std::size_t>(n - m)) * nu;
                const std::size_t src = static_cast<std::size_t>(m) * nu;
                std::copy_n(ws_.swap_a_re_.data() + src, nu,
                            ws_.trans_in_re_.data() + dst);
                std::copy_n(ws_.swap_a_im_.data() + src, nu,
                            ws_.trans_in_im_.data() + dst);
            }
        }
    }

    void z_translate_m2l(int p_in, int p_out) {
        const Real* fac = ops_.faculties().data();
        const int cols = std::min(p_in, p_out);
        for (int m = 0; m < cols; ++m) {
            const Real* in_re =
                ws_.trans_in_re_.data() + ws_.in_offset_[m] * nu_;
            const Real* in_im =
                ws_.trans_in_im_.data() + ws_.in_offset_[m] * nu_;
            Real* out_re = ws_.trans_out_re_.data() + ws_.out_offset_[m] * nu_;
            Real* out_im = ws_.trans_out_im_.data() + ws_.out_offset_[m] * nu_;
            hankel_product(fac, 2 * m, p_in - m, in_re, out_re, p_out - m,
                           mu_, nu_);
            hankel_product(fac, 2 * m, p_in - m, in_im, out_im, p_out - m,
                           mu_, nu_);
        }
    }

    void z_shift(int p_in, int p_out, int sign, bool upper) {
        auto& w = ws_.zshift_weights_;
        const auto inv_fac = ops_.inv_faculties();
        const int wlen = std::max(p_in, p_out);
        for (int d = 0; d < wlen; ++d)
            w[d] = (sign < 0 && (d & 1)) ? -inv_fac[d] : inv_fac[d];
        const int cols = std::min(p_in, p_out);
        for (int m = 0; m < cols; ++m) {
            const Real* in_re =
                ws_.trans_in_re_.data() + ws_.in_offset_[m] * nu_;
            const Real* in_im =
                ws_.trans_in_im_.data() + ws_.in_offset_[m] * nu_;
            Real* out_re = ws_.trans_out_re_.data() + ws_.out_offset_[m] * nu_;
            Real* out_im = ws_.trans_out_im_.data() + ws_.out_offset_[m] * nu_;
            if (upper) {
                zshift_upper_product(w.data(), in_re, p_in - m, out_re,
                                     p_out - m, nu_);
                zshift_upper_product(w.data(), in_im, p_in - m, out_im,
                                     p_out - m, nu_);
            } else {
                zshift_lower_product(w.data(), in_re, p_in - m, out_re,
                                     p_out - m, nu_);
                zshift_lower_product(w.data(), in_im, p_in - m, out_im,
                                     p_out - m, nu_);
            }
        }
    }

    void backward_pass(std::span<const translation_request<Real>> chunk,
                       op_kind kind, int p_in, int p_out) {
        const int nu = nu_;
        const bool target_is_local = kind != op_kind::m2m;
        const bool with_signs = kind == op_kind::m2l;
        for (int n = 0; n < p_out; ++n) {
            // gather row n from the translation buffers; the signs
            // (-1)^{n+m} of the z-translation are fused in here
            const int padded = padded_rows(n + 1, mu_);
            std::fill_n(ws_.swap_a_re_.begin(),
                        static_cast<std::size_t>(padded) * nu, Real(0));
            std::fill_n(ws_.swap_a_im_.begin(),
                        static_cast<std::size_t>(padded) * nu, Real(0));
            const int mmax = std::min(n, std::min(p_in, p_out) - 1);
            for (int m = 0; m <= mmax; ++m) {
                const std::size_t src =
                    (ws_.out_offset_[m] + static_cast<std::size_t>(n - m)) *
                    nu;
                const std::size_t dst = static_cast<std::size_t>(m) * nu;
                if (with_signs && ((n + m) & 1)) {
                    for (int j = 0; j < nu; ++j) {
                        ws_.swap_a_re_[dst + j] = -ws_.trans_out_re_[src + j];
                        ws_.swap_a_im_[dst + j] = -ws_.trans_out_im_[src + j];
                    }
                } else {
                    std::copy_n(ws_.trans_out_re_.data() + src, nu,
                                ws_.swap_a_re_.data() + dst);
                    std::copy_n(ws_.trans_out_im_.data() + src, nu,
                                ws_.swap_a_im_.data() + dst);
                }
            }
            if (target_is_local) scale_row(ws_.swap_a_re_.data(), Real(0.5));
            swap_pass(n, target_is_local, ws_.sin_b_neg_.data());
            if (target_is_local) scale_row(ws_.swap_a_re_.data(), Real(2));
            // locals pick up |r|^{-n}, multipoles undo their |r|^{-(n+1)}
            const Real* scale =
                target_is_local
                    ? &ws_.inv_pow_[static_cast<std::size_t>(n) * nu]
                    : &ws_.pow_[static_cast<std::size_t>(n + 1) * nu];
            rotate_scale_rows(ws_.swap_a_re_.data(), ws_.swap_a_im_.data(),
                              n + 1, nu, scale, ws_.cos_a_.data(),
                              ws_.sin_a_neg_.data());
            for (int j = 0; j < static_cast<int>(chunk.size()); ++j) {
                solid<Real>& dst = *chunk[j].output;
                for (int m = 0; m <= n; ++m) {
                    const std::size_t i = static_cast<std::size_t>(m) * nu + j;
                    dst.re(n, m) = ws_.swap_a_re_[i];
                    dst.im(n, m) = ws_.swap_a_im_[i];
                }
            }
        }
    }

    const operator_data<Real>& ops_;
    workspace<Real>& ws_;
    int mu_;
    int nu_;
};

template <typename Real>
void run_batch(typename translation_engine<Real>::op_kind kind,
               const operator_data<Real>& ops,
               std::span<const translation_request<Real>> batch,
               workspace<Real>& ws, solid_kind out_kind) {
    if (batch.empty()) return;

    for (const auto& req : batch) {
        if (!req.source || !req.output)
            throw std::invalid_argument("translation request with null solid");
        const int p_in = req.source->order();
        const int p_out = req.target_order;
        if (p_in < 1 || p_out < 1)
            throw std::invalid_argument("translation orders must be >= 1");
        const int needed = std::max(p_in, p_out);
        if (needed > ops.order())
            throw std::invalid_argument(
                "translation order exceeds operator data order");
        if (needed > ws.max_order())
            throw std::invalid_argument(
                "translation order exceeds workspace capacity");
        if (norm(req.shift) < std::numeric_limits<Real>::min())
            throw std::domain_error("translation with zero shift vector");
    }

    // Uniform slab geometry per chunk: group requests by order pair,
    // preserving order within a group.
    std::vector<translation_request<Real>> sorted(batch.begin(), batch.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) {
                         if (a.source->order() != b.source->order())
                             return a.source->order() < b.source->order();
                         return a.target_order < b.target_order;
                     });

    // Resize outputs up front. When an output aliases its own source
    // and must change shape, keep a copy of the source alive.
    std::deque<solid<Real>> saved;
    for (auto& req : sorted) {
        solid<Real>* out = req.output;
        if (out->order() != req.target_order) {
            if (out == req.source) {
                saved.push_back(*out);
                req.source = &saved.back();
            }
            *out = solid<Real>(out_kind, req.target_order);
        } else {
            out->set_kind(out_kind);
        }
    }

    translation_engine<Real> engine(ops, ws);
    const std::size_t nu = static_cast<std::size_t>(ws.config().nu);
    std::size_t i = 0;
    while (i < sorted.size()) {
        const int p_in = sorted[i].source->order();
        const int p_out = sorted[i].target_order;
        std::size_t j = i;
        while (j < sorted.size() && j - i < nu &&
               sorted[j].source->order() == p_in &&
               sorted[j].target_order == p_out)
            ++j;
        engine.run_chunk(kind,
                         std::span<const translation_request<Real>>(
                             sorted.data() + i, j - i),
                         p_in, p_out);
        i = j;
    }
}

}  // namespace detail

template <typename Real>
void m2l(const operator_data<Real>& ops,
         std::span<const translation_request<Real>> batch,
         workspace<Real>& ws) {
    detail::run_batch<Real>(detail::translation_engine<Real>::op_kind::m2l,
                            ops, batch, ws, solid_kind::local);
}

template <typename Real>
void m2m(const operator_data<Real>& ops,
         std::span<const translation_request<Real>> batch,
         workspace<Real>& ws) {
    detail::run_batch<Real>(detail::translation_engine<Real>::op_kind::m2m,
                            ops, batch, ws, solid_kind::multipole);
}

template <typename Real>
void l2l(const operator_data<Real>& ops,
         std::span<const translation_request<Real>> batch,
         workspace<Real>& ws) {
    detail::run_batch<Real>(detail::translation_engine<Real>::op_kind::l2l,
                            ops, batch, ws, solid_kind::local);
}

namespace {

template <typename Real>
solid<Real> run_single(void (*op)(const operator_data<Real>&,
                                  std::span<const translation_request<Real>>,
                                  workspace<Real>&),
                       const operator_data<Real>& ops, const solid<Real>& s,
                       const vec3<Real>& shift, int target_order,
                       workspace<Real>& ws, solid_kind out_kind) {
    solid<Real> out(out_kind, target_order);
    translation_request<Real> req{&s, shift, target_order, &out};
    op(ops, std::span<const translation_request<Real>>(&req, 1), ws);
    return out;
}

}  // namespace

template <typename Real>
solid<Real> m2l(const operator_data<Real>& ops, const solid<Real>& m,
                const vec3<Real>& shift, int target_order,
                workspace<Real>& ws) {
    return run_single<Real>(&m2l<Real>, ops, m, shift, target_order, ws,
                            solid_kind::local);
}

template <typename Real>
solid<Real> m2m(const operator_data<Real>& ops, const solid<Real>& m,
                const vec3<Real>& shift, int target_order,
                workspace<Real>& ws) {
    return run_single<Real>(&m2m<Real>, ops, m, shift, target_order, ws,
                            solid_kind::multipole);
}

template <typename Real>
solid<Real> l2l(const operator_data<Real>& ops, const solid<Real>& l,
                const vec3<Real>& shift, int target_order,
                workspace<Real>& ws) {
    return run_single<Real>(&l2l<Real>, ops, l, shift, target_order, ws,
                            solid_kind::local);
}

template <typename Real>
solid<Real> m2l_naive(const solid<Real>& m, const vec3<Real>& r,
                      int target_order) {
    const int p_in = m.order();
    const solid<Real> s = singular(p_in + target_order - 1, r);
    solid<Real> out(solid_kind::local, target_order);
    for (int n = 0; n < target_order; ++n) {
        const Real row_sign = (n & 1) ? Real(-1) : Real(1);
        for (int mm = 0; mm <= n; ++mm) {
            std::complex<Real> acc{};
            for (int k = 0; k < p_in; ++k) {
                for (int l = -k; l <= k; ++l) {
                    acc += std::conj(m.coeff(k, l)) * s.coeff(n + k, mm + l);
                }
            }
            out.set(n, mm, row_sign * acc);
        }
    }
    return out;
}

#define MPOLE_INSTANTIATE(Real)                                           \
    template void m2l<Real>(const operator_data<Real>&,                   \
                            std::span<const translation_request<Real>>,   \
                            workspace<Real>&);                            \
    template void m2m<Real>(const operator_data<Real>&,                   \
                            std::span<const translation_request<Real>>,   \
                            workspace<Real>&);                            \
    template void l2l<Real>(const operator_data<Real>&,                   \
                            std::span<const translation_request<Real>>,   \
                            workspace<Real>&);                            \
    template solid<Real> m2l<Real>(const operator_data<Real>&,            \
                                   const solid<Real>&, const vec3<Real>&, \
                                   int, workspace<Real>&);                \
    template solid<Real> m2m<Real>(const operator_data<Real>&,            \
                                   const solid<Real>&, const vec3<Real>&, \
                                   int, workspace<Real>&);                \
    template solid<Real> l2l<Real>(const operator_data<Real>&,            \
                                   const solid<Real>&, const vec3<Real>&, \
                                   int, workspace<Real>&);                \
    template solid<Real> m2l_naive<Real>(const solid<Real>&,              \
                                         const vec3<Real>&, int);

MPOLE_INSTANTIATE(float)
MPOLE_INSTANTIATE(double)

#undef MPOLE_INSTANTIATE

}  // namespace mpole
