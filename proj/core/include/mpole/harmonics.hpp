#pragma once

#include <span>
#include <vector>

#include "mpole/solid.hpp"

namespace mpole {

template <typename Real>
struct point_charge {
    vec3<Real> position;
    Real charge;
};

/// Regular harmonic values R_n^m(r) for n < order, evaluated row by row
/// with square roots and elementary arithmetic only. r = 0 (including
/// subnormal |r|) yields R_0^0 = 1 and zeros elsewhere.
template <typename Real>
solid<Real> regular(int order, const vec3<Real>& r);

/// Singular harmonic values S_n^m(r), S_0^0 = 1/|r|.
/// Throws std::domain_error when |r| is zero or subnormal.
template <typename Real>
solid<Real> singular(int order, const vec3<Real>& r);

/// u(x_i) = sum_j q_j / |x_i - x_j|. Throws std::domain_error if a
/// target coincides with a source position.
template <typename Real>
std::vector<Real> direct_potential(std::span<const vec3<Real>> targets,
                                   std::span<const point_charge<Real>> sources);

/// Multipole expansion of a charge set about `center`:
/// M_n^m = sum_j q_j R_n^m(x_j - center). The regular values enter
/// without conjugation.
template <typename Real>
solid<Real> p2m(std::span<const point_charge<Real>> sources,
                const vec3<Real>& center, int order);

/// Value of the multipole expansion at x. Throws std::domain_error at
/// x = center. The real-valued sum is taken over m >= 0 as the m = 0
/// term plus twice the real part of the m > 0 products.
template <typename Real>
Real eval_multipole(const solid<Real>& m, const vec3<Real>& center,
                    const vec3<Real>& x);

/// Value of the local expansion at x.
template <typename Real>
Real eval_local(const solid<Real>& l, const vec3<Real>& center,
                const vec3<Real>& x);

}  // namespace mpole
