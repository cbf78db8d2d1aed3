#include "mpole/operators.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace mpole {

std::vector<double> wigner_b(int n) {
    std::vector<double> b{1.0};
    // Each target row of B_{cur+1} is generated by exactly one of the
    // recurrences: row 0 by 2B^{0,l} = B^{0,l-1} - B^{0,l+1}, row m > 0
    // from source row m-1 by 2B^{m,l} = B^{m-1,l-1} + 2B^{m-1,l} +
    // B^{m-1,l+1}, row m < 0 mirrored with the minus signs. Entries with
    // |l| > cur are zero.
    for (int cur = 0; cur < n; ++cur) {
        const int src_dim = 2 * cur + 1;
        const int dim = src_dim + 2;
        auto get = [&](int m, int l) -> double {
            if (std::abs(m) > cur || std::abs(l) > cur) return 0.0;
            return b[static_cast<std::size_t>(m + cur) * src_dim + (l + cur)];
        };
        std::vector<double> nb(static_cast<std::size_t>(dim) * dim);
        for (int m = -(cur + 1); m <= cur + 1; ++m) {
            for (int l = -(cur + 1); l <= cur + 1; ++l) {
                double v;
                if (m == 0) {
                    v = 0.5 * (get(0, l - 1) - get(0, l + 1));
                } else if (m > 0) {
                    v = 0.5 * (get(m - 1, l - 1) + 2.0 * get(m - 1, l) +
                               get(m - 1, l + 1));
                } else {
                    v = 0.5 * (get(m + 1, l - 1) - 2.0 * get(m + 1, l) +
                               get(m + 1, l + 1));
                }
                nb[static_cast<std::size_t>(m + cur + 1) * dim +
                   (l + cur + 1)] = v;
            }
        }
        b = std::move(nb);
    }
    return b;
}

swap_pair swap_matrices(int n, const std::vector<double>& b) {
    const int dim = 2 * n + 1;
    auto at = [&](int m, int l) {
        return b[static_cast<std::size_t>(m + n) * dim + (l + n)];
    };
    swap_pair out;
    const std::size_t sz = static_cast<std::size_t>(n + 1) * (n + 1);
    out.f.assign(sz, 0.0);
    out.g.assign(sz, 0.0);
    for (int m = 0; m <= n; ++m) {
        for (int l = 0; l <= n; ++l) {
            const std::size_t i = static_cast<std::size_t>(m) * (n + 1) + l;
            const double sign = (l & 1) ? -1.0 : 1.0;
            out.f[i] = (l == 0) ? at(0, m) : at(l, m) + sign * at(-l, m);
            if (l != 0 && m != 0) out.g[i] = at(l, m) - sign * at(-l, m);
        }
    }
    return out;
}

template <typename Real>
std::vector<Real> pack(std::span<const Real> dense, int n, int mu,
                       int parity) {
    if (mu < 2 || (mu & 1))
        throw std::invalid_argument("pack: block height must be even and >= 2");
    const int rows = n + 1;
    const int panels = (rows + mu - 1) / mu;
    std::vector<Real> out;
    out.reserve(static_cast<std::size_t>(panels) * rows * (mu / 2));
    for (int p = 0; p < panels; ++p) {
        for (int l = 0; l < rows; ++l) {
            const int first = (parity + l) & 1;
            for (int t = 0; t < mu / 2; ++t) {
                const int r = p * mu + first + 2 * t;
                out.push_back(r < rows
                                  ? dense[static_cast<std::size_t>(r) * rows + l]
                                  : Real(0));
            }
        }
    }
    return out;
}

template std::vector<float> pack<float>(std::span<const float>, int, int, int);
template std::vector<double> pack<double>(std::span<const double>, int, int,
                                          int);

namespace {

template <typename Real>
int computed_max_order() {
    // largest P with (2P-2)! finite
    Real f = 1;
    int k = 0;
    while (true) {
        const Real next = f * Real(k + 1);
        if (std::isinf(next)) break;
        f = next;
        ++k;
    }
    return k / 2 + 1;
}

template <typename Real>
std::vector<Real> transpose_dense(std::span<const Real> a, int rows) {
    std::vector<Real> t(a.size());
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j)
            t[static_cast<std::size_t>(j) * rows + i] =
                a[static_cast<std::size_t>(i) * rows + j];
    return t;
}

}  // namespace

template <typename Real>
operator_data<Real>::operator_data(int order, kernel_config cfg)
    : order_(order), cfg_(cfg) {
    validate(cfg);
    if (order < 1) throw std::invalid_argument("order must be >= 1");
    if (order > max_order())
        throw std::invalid_argument(
            "order too large: faculty table overflows at order " +
            std::to_string(order) + " (cap " + std::to_string(max_order()) +
            ")");

    const int fcount = 2 * order - 1;  // 0! .. (2P-2)!
    faculties_.resize(fcount);
    faculties_[0] = Real(1);
    for (int k = 1; k < fcount; ++k)
        faculties_[k] = faculties_[k - 1] * Real(k);

    inv_faculties_.resize(order);
    for (int d = 0; d < order; ++d)
        inv_faculties_[d] = Real(1) / faculties_[d];

    swaps_.resize(order);
    for (int n = 0; n < order; ++n) {
        const auto fg = swap_matrices(n, wigner_b(n));
        auto& s = swaps_[n];
        s.n = n;
        const std::size_t sz = fg.f.size();
        s.f_dense.resize(sz);
        s.g_dense.resize(sz);
        for (std::size_t i = 0; i < sz; ++i) {
            s.f_dense[i] = static_cast<Real>(fg.f[i]);
            s.g_dense[i] = static_cast<Real>(fg.g[i]);
        }
        const int fp = n & 1;        // F nonzero where (m+l) % 2 == n % 2
        const int gp = (n + 1) & 1;  // G with the opposite parity
        const auto ft = transpose_dense<Real>(s.f_dense, n + 1);
        const auto gt = transpose_dense<Real>(s.g_dense, n + 1);
        s.f_packed = pack<Real>(s.f_dense, n, cfg.mu, fp);
        s.g_packed = pack<Real>(s.g_dense, n, cfg.mu, gp);
        s.ft_packed = pack<Real>(ft, n, cfg.mu, fp);
        s.gt_packed = pack<Real>(gt, n, cfg.mu, gp);
    }
}

template <typename Real>
int operator_data<Real>::max_order() noexcept {
    static const int cap = computed_max_order<Real>();
    return cap;
}

template <typename Real>
std::shared_ptr<const operator_data<Real>> operator_data<Real>::acquire(
    int order, kernel_config cfg) {
    using key_type = std::tuple<int, int, int>;
    static std::mutex mtx;
    static std::map<key_type, std::shared_ptr<const operator_data>> cache;

    const key_type key{order, cfg.mu, cfg.nu};
    std::lock_guard lock(mtx);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_shared<operator_data>(order, cfg))
                 .first;
    return it->second;
}

template class operator_data<float>;
template class operator_data<double>;

}  // namespace mpole
