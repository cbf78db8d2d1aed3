#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace mpole {

template <typename Real>
struct vec3 {
    Real x;
    Real y;
    Real z;
};

template <typename Real>
inline Real norm(const vec3<Real>& v) {
    return std::hypot(v.x, v.y, v.z);
}

template <typename Real>
inline vec3<Real> operator-(const vec3<Real>& a, const vec3<Real>& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}

template <typename Real>
inline vec3<Real> operator+(const vec3<Real>& a, const vec3<Real>& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}

enum class solid_kind { multipole, local, regular, singular };

inline char kind_letter(solid_kind k) noexcept {
    switch (k) {
        case solid_kind::multipole: return 'M';
        case solid_kind::local: return 'L';
        case solid_kind::regular: return 'R';
        case solid_kind::singular: return 'S';
    }
    return '?';
}

inline solid_kind kind_from_letter(char c) {
    switch (c) {
        case 'M': return solid_kind::multipole;
        case 'L': return solid_kind::local;
        case 'R': return solid_kind::regular;
        case 'S': return solid_kind::singular;
    }
    throw std::invalid_argument(std::string("unknown solid kind '") + c + "'");
}

// Storage layout: rows concatenated in increasing n, within a row the
// coefficients C_n^0 .. C_n^n as interleaved (re, im) pairs.
constexpr std::size_t index_re(int n, int m) noexcept {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) +
           2 * static_cast<std::size_t>(m);
}

constexpr std::size_t index_im(int n, int m) noexcept {
    return index_re(n, m) + 1;
}

constexpr std::size_t solid_size(int order) noexcept {
    return static_cast<std::size_t>(order) * static_cast<std::size_t>(order + 1);
}

/// Triangular array of P(P+1) reals holding the coefficients C_n^m,
/// 0 <= m <= n < P, of one expansion or harmonic-value set.
///
/// Coefficients with negative m are never stored; coeff() derives them
/// on demand from C_n^{-m} = (-1)^m conj(C_n^m). The imaginary slot of
/// every m = 0 coefficient is kept at zero.
template <typename Real>
class solid {
public:
    using value_type = Real;

    solid(solid_kind kind, int order)
        : kind_(kind), order_(order), data_(solid_size(order), Real(0)) {
        assert(order >= 1);
    }

    solid_kind kind() const noexcept { return kind_; }
    void set_kind(solid_kind k) noexcept { kind_ = k; }
    int order() const noexcept { return order_; }

    Real re(int n, int m) const {
        assert(in_range(n, m));
        return data_[index_re(n, m)];
    }
    Real im(int n, int m) const {
        assert(in_range(n, m));
        return data_[index_im(n, m)];
    }
    Real& re(int n, int m) {
        assert(in_range(n, m));
        return data_[index_re(n, m)];
    }
    Real& im(int n, int m) {
        assert(in_range(n, m));
        return data_[index_im(n, m)];
    }

    /// Coefficient for signed column -n <= m <= n.
    std::complex<Real> coeff(int n, int m) const {
        assert(n >= 0 && n < order_ && m >= -n && m <= n);
        if (m >= 0)
            return {data_[index_re(n, m)], data_[index_im(n, m)]};
        const Real sign = (m & 1) ? Real(-1) : Real(1);
        return {sign * data_[index_re(n, -m)], -sign * data_[index_im(n, -m)]};
    }

    void set(int n, int m, std::complex<Real> v) {
        assert(in_range(n, m));
        data_[index_re(n, m)] = v.real();
        data_[index_im(n, m)] = (m == 0) ? Real(0) : v.imag();
    }

    std::span<Real> data() noexcept { return data_; }
    std::span<const Real> data() const noexcept { return data_; }

    friend bool operator==(const solid& a, const solid& b) {
        return a.kind_ == b.kind_ && a.order_ == b.order_ && a.data_ == b.data_;
    }

private:
    bool in_range(int n, int m) const noexcept {
        return n >= 0 && n < order_ && m >= 0 && m <= n;
    }

    solid_kind kind_;
    int order_;
    std::vector<Real> data_;
};

}  // namespace mpole
