#include "doctest.h"
#include "mpole/operators.hpp"
#include "test_helpers.hpp"

#include <cmath>
#include <thread>

using namespace mpole;
using doctest::Approx;

namespace {

double b_at(const std::vector<double>& b, int n, int m, int l) {
    return b[static_cast<std::size_t>(m + n) * (2 * n + 1) + (l + n)];
}

// straightforward unpacker, the round-trip oracle for pack()
template <typename Real>
std::vector<Real> unpack(std::span<const Real> stream, int n, int mu,
                         int parity) {
    const int rows = n + 1;
    std::vector<Real> dense(static_cast<std::size_t>(rows) * rows, Real(0));
    std::size_t pos = 0;
    const int panels = (rows + mu - 1) / mu;
    for (int p = 0; p < panels; ++p) {
        for (int l = 0; l < rows; ++l) {
            const int first = (parity + l) & 1;
            for (int t = 0; t < mu / 2; ++t, ++pos) {
                const int r = p * mu + first + 2 * t;
                if (r < rows)
                    dense[static_cast<std::size_t>(r) * rows + l] =
                        stream[pos];
            }
        }
    }
    REQUIRE(pos == stream.size());
    return dense;
}

}  // namespace

TEST_CASE("B matrices: base cases") {
    const auto b0 = wigner_b(0);
    REQUIRE(b0.size() == 1);
    CHECK(b0[0] == 1.0);

    const auto b1 = wigner_b(1);
    const double want[3][3] = {{0.5, -1.0, 0.5}, {-0.5, 0.0, 0.5}, {0.5, 1.0, 0.5}};
    for (int m = -1; m <= 1; ++m)
        for (int l = -1; l <= 1; ++l)
            CHECK(b_at(b1, 1, m, l) == want[m + 1][l + 1]);
}

TEST_CASE("B matrices are involutory") {
    for (int n = 0; n <= 10; ++n) {
        const auto b = wigner_b(n);
        const int dim = 2 * n + 1;
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                double acc = 0;
                for (int k = 0; k < dim; ++k)
                    acc += b[i * dim + k] * b[k * dim + j];
                CHECK(std::abs(acc - (i == j ? 1.0 : 0.0)) < 1e-13);
            }
        }
    }
}

TEST_CASE("swap matrices F_1, G_1 and degenerate F_0, G_0") {
    const auto fg1 = swap_matrices(1, wigner_b(1));
    CHECK(fg1.f == std::vector<double>{0.0, 2.0, 0.5, 0.0});
    CHECK(fg1.g == std::vector<double>{0.0, 0.0, 0.0, 1.0});

    const auto fg0 = swap_matrices(0, wigner_b(0));
    CHECK(fg0.f == std::vector<double>{1.0});
    CHECK(fg0.g == std::vector<double>{0.0});
}

TEST_CASE("chequerboard structure") {
    for (int n = 0; n <= 12; ++n) {
        const auto fg = swap_matrices(n, wigner_b(n));
        const int rows = n + 1;
        int excluded_f = 0, excluded_g = 0;
        for (int m = 0; m < rows; ++m) {
            for (int l = 0; l < rows; ++l) {
                const std::size_t i = static_cast<std::size_t>(m) * rows + l;
                if (((m + l) & 1) != (n & 1)) {
                    CHECK(fg.f[i] == 0.0);
                    ++excluded_f;
                }
                if (((m + l) & 1) != ((n + 1) & 1)) {
                    CHECK(fg.g[i] == 0.0);
                    ++excluded_g;
                }
            }
        }
        // one of the two parity classes, so half the slots rounded
        const int sq = rows * rows;
        CHECK((excluded_f == sq / 2 || excluded_f == (sq + 1) / 2));
        CHECK((excluded_g == sq / 2 || excluded_g == (sq + 1) / 2));
        // first row and column of G
        for (int l = 0; l < rows; ++l) CHECK(fg.g[l] == 0.0);
        for (int m = 0; m < rows; ++m)
            CHECK(fg.g[static_cast<std::size_t>(m) * rows] == 0.0);
    }
}

TEST_CASE("involution at the F/G level") {
    auto rng = testing::make_rng(3);
    std::normal_distribution<double> nd;
    for (int n = 0; n <= 30; ++n) {
        const auto fg = swap_matrices(n, wigner_b(n));
        const int rows = n + 1;
        std::vector<double> v(rows), w(rows), u(rows);
        for (auto& x : v) x = nd(rng);
        auto apply = [&](const std::vector<double>& a,
                         const std::vector<double>& in,
                         std::vector<double>& out) {
            for (int m = 0; m < rows; ++m) {
                double acc = 0;
                for (int l = 0; l < rows; ++l)
                    acc += a[static_cast<std::size_t>(m) * rows + l] * in[l];
                out[m] = acc;
            }
        };
        apply(fg.f, v, w);
        apply(fg.f, w, u);
        for (int m = 0; m < rows; ++m)
            CHECK(std::abs(u[m] - v[m]) <=
                  1e-12 * std::max(1.0, std::abs(v[m])));
        v[0] = 0.0;  // G maps are involutory on the m > 0 subspace
        apply(fg.g, v, w);
        apply(fg.g, w, u);
        for (int m = 1; m < rows; ++m)
            CHECK(std::abs(u[m] - v[m]) <=
                  1e-12 * std::max(1.0, std::abs(v[m])));
    }
}

TEST_CASE("pack: derived streams for n = 1, mu = 6") {
    const auto fg = swap_matrices(1, wigner_b(1));
    const auto fs = pack<double>(fg.f, 1, 6, 1);
    CHECK(fs == std::vector<double>{0.5, 0.0, 0.0, 2.0, 0.0, 0.0});
    const auto gs = pack<double>(fg.g, 1, 6, 0);
    CHECK(gs == std::vector<double>{0.0, 0.0, 0.0, 1.0, 0.0, 0.0});
}

TEST_CASE("pack rejects odd block heights") {
    const auto fg = swap_matrices(1, wigner_b(1));
    CHECK_THROWS_AS(pack<double>(fg.f, 1, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(pack<double>(fg.f, 1, 0, 1), std::invalid_argument);
}

TEST_CASE("pack round trips through a straightforward unpacker") {
    auto rng = testing::make_rng(9);
    std::normal_distribution<double> nd;
    for (int n : {0, 1, 2, 5, 11, 24, 40}) {
        for (int mu : {2, 6, 8, 14}) {
            for (int parity : {0, 1}) {
                const int rows = n + 1;
                std::vector<double> dense(
                    static_cast<std::size_t>(rows) * rows, 0.0);
                for (int m = 0; m < rows; ++m)
                    for (int l = 0; l < rows; ++l)
                        if (((m + l) & 1) == parity)
                            dense[static_cast<std::size_t>(m) * rows + l] =
                                nd(rng);
                const auto stream = pack<double>(dense, n, mu, parity);
                CHECK(stream.size() ==
                      static_cast<std::size_t>((rows + mu - 1) / mu) * rows *
                          (mu / 2));
                CHECK(unpack<double>(stream, n, mu, parity) == dense);
            }
        }
    }
}

TEST_CASE("operator data: faculty table") {
    const operator_data<double> ops(3);
    const auto fac = ops.faculties();
    REQUIRE(fac.size() == 5);
    CHECK(fac[0] == 1.0);
    CHECK(fac[1] == 1.0);
    CHECK(fac[2] == 2.0);
    CHECK(fac[3] == 6.0);
    CHECK(fac[4] == 24.0);
    for (std::size_t d = 0; d < ops.inv_faculties().size(); ++d)
        CHECK(ops.inv_faculties()[d] == 1.0 / fac[d]);
}

// The caps follow from the largest k with k! finite; the oracle below
// recomputes that limit directly in the target precision.
template <typename Real>
int cap_oracle() {
    Real f = 1;
    int k = 0;
    while (!std::isinf(f * Real(k + 1))) {
        f *= Real(k + 1);
        ++k;
    }
    return k / 2 + 1;
}

TEST_CASE("operator data: order caps") {
    CHECK(operator_data<double>::max_order() == cap_oracle<double>());
    CHECK(operator_data<double>::max_order() == 86);
    CHECK_NOTHROW(operator_data<double>(86));
    CHECK_THROWS_AS(operator_data<double>(87), std::invalid_argument);

    CHECK(operator_data<float>::max_order() == cap_oracle<float>());
    CHECK(operator_data<float>::max_order() == 18);
    CHECK_NOTHROW(operator_data<float>(18));
    CHECK_THROWS_AS(operator_data<float>(19), std::invalid_argument);

    CHECK_THROWS_AS(operator_data<double>(0), std::invalid_argument);
}

TEST_CASE("operator data: packed tables match dense ones") {
    const operator_data<double> ops(9);
    for (int n = 0; n < 9; ++n) {
        const auto& s = ops.swaps(n);
        CHECK(unpack<double>(s.f_packed, n, ops.config().mu, n & 1) ==
              s.f_dense);
        const int rows = n + 1;
        std::vector<double> ft(s.f_dense.size());
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < rows; ++j)
                ft[static_cast<std::size_t>(j) * rows + i] =
                    s.f_dense[static_cast<std::size_t>(i) * rows + j];
        CHECK(unpack<double>(s.ft_packed, n, ops.config().mu, n & 1) == ft);
    }
}

TEST_CASE("operator data cache") {
    const auto a = operator_data<double>::acquire(7);
    const auto b = operator_data<double>::acquire(7);
    CHECK(a.get() == b.get());
    const auto c = operator_data<double>::acquire(8);
    CHECK(a.get() != c.get());
    const auto d = operator_data<double>::acquire(7, kernel_config{2, 4});
    CHECK(a.get() != d.get());

    std::vector<std::shared_ptr<const operator_data<double>>> got(4);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t)
        threads.emplace_back(
            [&got, t] { got[t] = operator_data<double>::acquire(13); });
    for (auto& t : threads) t.join();
    for (int t = 1; t < 4; ++t) CHECK(got[t].get() == got[0].get());
}
