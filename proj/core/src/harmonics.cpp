#include "mpole/harmonics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mpole {

namespace {

template <typename Real>
bool effectively_zero(Real r_norm) {
    return r_norm < std::numeric_limits<Real>::min();  // zero or subnormal
}

}  // namespace

template <typename Real>
solid<Real> regular(int order, const vec3<Real>& r) {
    solid<Real> out(solid_kind::regular, order);
    out.re(0, 0) = Real(1);
    if (order == 1) return out;

    const Real x = r.x, y = r.y, z = r.z;
    if (effectively_zero(norm(r))) return out;  // R_0^0 = 1, higher rows 0
    const Real r2 = x * x + y * y + z * z;

    for (int n = 1; n < order; ++n) {
        // diagonal: R_n^n = (x + iy) / (2n) * R_{n-1}^{n-1}
        const Real inv2n = Real(1) / Real(2 * n);
        const Real pre = out.re(n - 1, n - 1);
        const Real pim = out.im(n - 1, n - 1);
        out.re(n, n) = inv2n * (x * pre - y * pim);
        out.im(n, n) = inv2n * (x * pim + y * pre);
        // (n^2 - m^2) R_n^m = (2n-1) z R_{n-1}^m - |r|^2 R_{n-2}^m
        const Real zf = Real(2 * n - 1) * z;
        for (int m = 0; m < n; ++m) {
            const Real denom = Real(1) / Real(n * n - m * m);
            Real re = zf * out.re(n - 1, m);
            Real im = zf * out.im(n - 1, m);
            if (n - 2 >= m) {
                re -= r2 * out.re(n - 2, m);
                im -= r2 * out.im(n - 2, m);
            }
            out.re(n, m) = denom * re;
            out.im(n, m) = (m == 0) ? Real(0) : denom * im;
        }
    }
    return out;
}

template <typename Real>
solid<Real> singular(int order, const vec3<Real>& r) {
    const Real rn = norm(r);
    if (effectively_zero(rn))
        throw std::domain_error("singular harmonics at r = 0");

    solid<Real> out(solid_kind::singular, order);
    out.re(0, 0) = Real(1) / rn;
    const Real x = r.x, y = r.y, z = r.z;
    const Real inv_r2 = Real(1) / (x * x + y * y + z * z);

    for (int n = 1; n < order; ++n) {
        // diagonal: S_n^n = (2n-1) (x + iy) / |r|^2 * S_{n-1}^{n-1}
        const Real c = Real(2 * n - 1) * inv_r2;
        const Real pre = out.re(n - 1, n - 1);
        const Real pim = out.im(n - 1, n - 1);
        out.re(n, n) = c * (x * pre - y * pim);
        out.im(n, n) = c * (x * pim + y * pre);
        // |r|^2 S_n^m = (2n-1) z S_{n-1}^m - ((n-1)^2 - m^2) S_{n-2}^m
        const Real zf = Real(2 * n - 1) * z;
        for (int m = 0; m < n; ++m) {
            Real re = zf * out.re(n - 1, m);
            Real im = zf * out.im(n - 1, m);
            if (n - 2 >= m) {
                const Real k = Real((n - 1) * (n - 1) - m * m);
                re -= k * out.re(n - 2, m);
                im -= k * out.im(n - 2, m);
            }
            out.re(n, m) = inv_r2 * re;
            out.im(n, m) = (m == 0) ? Real(0) : inv_r2 * im;
        }
    }
    return out;
}

template <typename Real>
std::vector<Real> direct_potential(std::span<const vec3<Real>> targets,
                                   std::span<const point_charge<Real>> sources) {
    std::vector<Real> out;
    out.reserve(targets.size());
    for (const auto& t : targets) {
        Real u = 0;
        for (const auto& s : sources) {
            const Real d = norm(t - s.position);
            if (effectively_zero(d))
                throw std::domain_error("target coincides with a source");
            u += s.charge / d;
        }
        out.push_back(u);
    }
    return out;
}

template <typename Real>
solid<Real> p2m(std::span<const point_charge<Real>> sources,
                const vec3<Real>& center, int order) {
    solid<Real> out(solid_kind::multipole, order);
    for (const auto& s : sources) {
        const solid<Real> rv = regular(order, s.position - center);
        auto dst = out.data();
        auto src = rv.data();
        for (std::size_t i = 0; i < dst.size(); ++i)
            dst[i] += s.charge * src[i];
    }
    return out;
}

namespace {

// m = 0 term plus twice the real part of the m > 0 products; the
// negative-m half of the sum is its conjugate.
template <typename Real>
Real paired_sum(const solid<Real>& coeffs, const solid<Real>& values) {
    Real total = 0;
    const int order = coeffs.order();
    for (int n = 0; n < order; ++n) {
        total += coeffs.re(n, 0) * values.re(n, 0);
        Real row = 0;
        for (int m = 1; m <= n; ++m) {
            // Re(c * conj(v))
            row += coeffs.re(n, m) * values.re(n, m) +
                   coeffs.im(n, m) * values.im(n, m);
        }
        total += Real(2) * row;
    }
    return total;
}

}  // namespace

template <typename Real>
Real eval_multipole(const solid<Real>& m, const vec3<Real>& center,
                    const vec3<Real>& x) {
    return paired_sum(m, singular(m.order(), x - center));
}

template <typename Real>
Real eval_local(const solid<Real>& l, const vec3<Real>& center,
                const vec3<Real>& x) {
    return paired_sum(l, regular(l.order(), x - center));
}

#define MPOLE_INSTANTIATE(Real)                                               \
    template solid<Real> regular<Real>(int, const vec3<Real>&);               \
    template solid<Real> singular<Real>(int, const vec3<Real>&);              \
    template std::vector<Real> direct_potential<Real>(                        \
        std::span<const vec3<Real>>, std::span<const point_charge<Real>>);    \
    template solid<Real> p2m<Real>(std::span<const point_charge<Real>>,       \
                                   const vec3<Real>&, int);                   \
    template Real eval_multipole<Real>(const solid<Real>&, const vec3<Real>&, \
                                       const vec3<Real>&);                    \
    template Real eval_local<Real>(const solid<Real>&, const vec3<Real>&,     \
                                   const vec3<Real>&);

MPOLE_INSTANTIATE(float)
MPOLE_INSTANTIATE(double)

#undef MPOLE_INSTANTIATE

}  // namespace mpole
