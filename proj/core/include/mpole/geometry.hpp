#pragma once

#include <vector>

#include "mpole/solid.hpp"

namespace mpole {

/// Per-shift rotation and scaling tables. All angle terms are obtained
/// from the components of r without trigonometric function calls:
///
///   cos(a) = y / sqrt(x^2 + y^2),   cos(b) = z / |r|,
///   sin(a) = x / sqrt(x^2 + y^2),   sin(b) = -sqrt(x^2 + y^2) / |r|,
///
/// with cos(a) = 1, sin(a) = 0 when x = y = 0. The arrays run over
/// n = 0 .. order, filled by the recurrences pow[n+1] = pow[n] * |r| and
/// e^{i(m+1)a} = e^{ima} * e^{ia}.
template <typename Real>
struct shift_geometry {
    Real r_norm;
    Real cos_alpha;
    Real sin_alpha;
    Real cos_beta;
    Real sin_beta;
    std::vector<Real> pow;      // |r|^n
    std::vector<Real> inv_pow;  // |r|^-n
    std::vector<Real> cos_m_alpha;
    std::vector<Real> sin_m_alpha;
    std::vector<Real> cos_m_beta;
    std::vector<Real> sin_m_beta;
};

/// Decompose a shift vector. Throws std::domain_error when |r| is zero
/// or subnormal.
template <typename Real>
shift_geometry<Real> decompose(const vec3<Real>& r, int order);

namespace detail {

/// Scalar part of decompose(), shared with the batched pipeline which
/// writes the tables into strided workspace slabs instead.
template <typename Real>
struct shift_angles {
    Real r_norm;
    Real cos_alpha;
    Real sin_alpha;
    Real cos_beta;
    Real sin_beta;
};

template <typename Real>
shift_angles<Real> decompose_angles(const vec3<Real>& r);

}  // namespace detail

}  // namespace mpole
