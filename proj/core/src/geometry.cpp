#include "mpole/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mpole {

namespace detail {

template <typename Real>
shift_angles<Real> decompose_angles(const vec3<Real>& r) {
    const Real h = std::hypot(r.x, r.y);
    const Real rn = std::hypot(h, r.z);
    if (rn < std::numeric_limits<Real>::min())
        throw std::domain_error("zero shift vector");

    shift_angles<Real> a;
    a.r_norm = rn;
    if (h == Real(0)) {
        a.cos_alpha = Real(1);
        a.sin_alpha = Real(0);
    } else {
        a.cos_alpha = r.y / h;
        a.sin_alpha = r.x / h;
    }
    a.cos_beta = r.z / rn;
    a.sin_beta = -h / rn;
    return a;
}

template shift_angles<float> decompose_angles<float>(const vec3<float>&);
template shift_angles<double> decompose_angles<double>(const vec3<double>&);

}  // namespace detail

template <typename Real>
shift_geometry<Real> decompose(const vec3<Real>& r, int order) {
    const auto a = detail::decompose_angles(r);

    shift_geometry<Real> g;
    g.r_norm = a.r_norm;
    g.cos_alpha = a.cos_alpha;
    g.sin_alpha = a.sin_alpha;
    g.cos_beta = a.cos_beta;
    g.sin_beta = a.sin_beta;

    const std::size_t len = static_cast<std::size_t>(order) + 1;
    g.pow.resize(len);
    g.inv_pow.resize(len);
    g.cos_m_alpha.resize(len);
    g.sin_m_alpha.resize(len);
    g.cos_m_beta.resize(len);
    g.sin_m_beta.resize(len);

    g.pow[0] = Real(1);
    g.inv_pow[0] = Real(1);
    const Real inv = Real(1) / a.r_norm;
    for (std::size_t n = 1; n < len; ++n) {
        g.pow[n] = g.pow[n - 1] * a.r_norm;
        g.inv_pow[n] = g.inv_pow[n - 1] * inv;
    }

    g.cos_m_alpha[0] = Real(1);
    g.sin_m_alpha[0] = Real(0);
    g.cos_m_beta[0] = Real(1);
    g.sin_m_beta[0] = Real(0);
    for (std::size_t m = 1; m < len; ++m) {
        // e^{i(m+1)t} = e^{imt} e^{it}
        g.cos_m_alpha[m] = g.cos_m_alpha[m - 1] * a.cos_alpha -
                           g.sin_m_alpha[m - 1] * a.sin_alpha;
        g.sin_m_alpha[m] = g.sin_m_alpha[m - 1] * a.cos_alpha +
                           g.cos_m_alpha[m - 1] * a.sin_alpha;
        g.cos_m_beta[m] = g.cos_m_beta[m - 1] * a.cos_beta -
                          g.sin_m_beta[m - 1] * a.sin_beta;
        g.sin_m_beta[m] = g.sin_m_beta[m - 1] * a.cos_beta +
                          g.cos_m_beta[m - 1] * a.sin_beta;
    }
    return g;
}

template shift_geometry<float> decompose<float>(const vec3<float>&, int);
template shift_geometry<double> decompose<double>(const vec3<double>&, int);

}  // namespace mpole
