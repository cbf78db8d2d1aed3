#include "doctest.h"
#include "mpole/harmonics.hpp"
#include "test_helpers.hpp"

#include <cmath>
#include <numeric>

using namespace mpole;
using doctest::Approx;

namespace {

double factorial(int n) {
    double f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

}  // namespace

TEST_CASE("regular harmonics, first diagonal step") {
    const auto r = regular<double>(2, {1.0, 2.0, 3.0});
    CHECK(r.re(1, 1) == Approx(0.5).epsilon(1e-15));
    CHECK(r.im(1, 1) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("regular harmonics on the z axis: R_n^0 = 1/n!") {
    const int p = 12;
    const auto r = regular<double>(p, {0.0, 0.0, 1.0});
    for (int n = 0; n < p; ++n) {
        CHECK(r.re(n, 0) == Approx(1.0 / factorial(n)).epsilon(1e-14));
        for (int m = 1; m <= n; ++m) {
            CHECK(r.re(n, m) == 0.0);
            CHECK(r.im(n, m) == 0.0);
        }
    }
}

TEST_CASE("regular harmonics at r = 0") {
    const auto r = regular<double>(3, {0.0, 0.0, 0.0});
    CHECK(r.re(0, 0) == 1.0);
    for (int n = 1; n < 3; ++n)
        for (int m = 0; m <= n; ++m) {
            CHECK(r.re(n, m) == 0.0);
            CHECK(r.im(n, m) == 0.0);
        }
    // subnormal |r| is treated the same way
    const auto tiny = regular<double>(3, {1e-310, 0.0, 0.0});
    CHECK(tiny.re(0, 0) == 1.0);
    CHECK(tiny.re(1, 1) == 0.0);
}

TEST_CASE("singular harmonics on the z axis") {
    const auto s1 = singular<double>(1, {0.0, 0.0, 2.0});
    CHECK(s1.re(0, 0) == Approx(0.5).epsilon(1e-15));
    const auto s2 = singular<double>(2, {0.0, 0.0, 2.0});
    CHECK(s2.re(1, 0) == Approx(0.25).epsilon(1e-15));

    // closed form S_n^0 = n!/R^{n+1}, S_n^m = 0 for m != 0
    const double rr = 1.7;
    const int p = 30;
    const auto s = singular<double>(p, {0.0, 0.0, rr});
    for (int n = 0; n < p; ++n) {
        const double want = factorial(n) / std::pow(rr, n + 1);
        CHECK(std::abs(s.re(n, 0) - want) <= 1e-13 * std::abs(want));
        for (int m = 1; m <= n; ++m) {
            CHECK(s.re(n, m) == 0.0);
            CHECK(s.im(n, m) == 0.0);
        }
    }
}

TEST_CASE("singular harmonics reject the singular point") {
    CHECK_THROWS_AS(singular<double>(3, {0.0, 0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(singular<double>(3, {0.0, 1e-310, 0.0}),
                    std::domain_error);
}

TEST_CASE("singular recurrence residuals") {
    auto rng = testing::make_rng(5);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 10; ++trial) {
        const vec3<double> r{nd(rng), nd(rng), nd(rng) + 2.0};
        const double r2 = r.x * r.x + r.y * r.y + r.z * r.z;
        const int p = 30;
        const auto s = singular<double>(p, r);
        for (int n = 2; n < p; ++n) {
            for (int m = 0; m < n - 1; ++m) {
                const auto sn = s.coeff(n, m);
                const auto s1 = s.coeff(n - 1, m);
                const auto s2 = s.coeff(n - 2, m);
                const auto lhs = r2 * sn;
                const auto rhs = (2.0 * n - 1.0) * r.z * s1 -
                                 double((n - 1) * (n - 1) - m * m) * s2;
                const double scale =
                    std::max({std::abs(lhs), std::abs(rhs), 1e-300});
                CHECK(std::abs(lhs - rhs) <= 1e-13 * scale);
            }
        }
    }
}

TEST_CASE("homogeneity under scaling") {
    auto rng = testing::make_rng(7);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> us(0.4, 2.5);
    const int p = 20;
    for (int trial = 0; trial < 8; ++trial) {
        const vec3<double> r{nd(rng), nd(rng), nd(rng) + 1.5};
        const double sc = us(rng);
        const vec3<double> rs{sc * r.x, sc * r.y, sc * r.z};

        const auto ra = regular<double>(p, r);
        const auto rb = regular<double>(p, rs);
        const auto sa = singular<double>(p, r);
        const auto sb = singular<double>(p, rs);
        for (int n = 0; n < p; ++n) {
            const double rn = std::pow(sc, n);
            const double sn = std::pow(sc, -(n + 1));
            for (int m = 0; m <= n; ++m) {
                const auto va = rn * ra.coeff(n, m);
                const auto vb = rb.coeff(n, m);
                CHECK(std::abs(va - vb) <=
                      1e-12 * std::max(1.0, std::abs(vb)));
                const auto wa = sn * sa.coeff(n, m);
                const auto wb = sb.coeff(n, m);
                CHECK(std::abs(wa - wb) <=
                      1e-12 * std::max(1.0, std::abs(wb)));
            }
        }
    }
}

TEST_CASE("direct potential") {
    using pc = point_charge<double>;
    const std::vector<pc> one{{{0.0, 0.0, 0.0}, 1.0}};
    const std::vector<vec3<double>> t1{{0.0, 0.0, 2.0}};
    CHECK(direct_potential<double>(t1, one)[0] == Approx(0.5));

    const std::vector<pc> pair{{{1.0, 0.0, 0.0}, 1.0},
                               {{-1.0, 0.0, 0.0}, 1.0}};
    const std::vector<vec3<double>> t0{{0.0, 0.0, 0.0}};
    CHECK(direct_potential<double>(t0, pair)[0] == Approx(2.0));

    CHECK_THROWS_AS(
        direct_potential<double>(std::vector<vec3<double>>{{1.0, 0.0, 0.0}},
                                 pair),
        std::domain_error);

    // independent summation oracle (reverse order)
    auto rng = testing::make_rng(11);
    const auto cluster =
        testing::random_cluster<double>(rng, {0, 0, 0}, 1.0, 10);
    const std::vector<vec3<double>> targets{{3.0, 1.0, -2.0},
                                            {-2.5, 0.5, 3.5}};
    const auto got = direct_potential<double>(targets, cluster);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        double want = 0;
        for (auto it = cluster.rbegin(); it != cluster.rend(); ++it)
            want += it->charge / norm(targets[i] - it->position);
        CHECK(got[i] == Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("p2m basics") {
    using pc = point_charge<double>;
    const vec3<double> c{0.3, -0.1, 0.4};
    const std::vector<pc> at_center{{c, 2.5}};
    const auto m0 = p2m<double>(at_center, c, 5);
    CHECK(m0.re(0, 0) == 2.5);
    for (int n = 1; n < 5; ++n)
        for (int mm = 0; mm <= n; ++mm) {
            CHECK(m0.re(n, mm) == 0.0);
            CHECK(m0.im(n, mm) == 0.0);
        }

    const double d = 0.37;
    const std::vector<pc> above{{{c.x, c.y, c.z + d}, 1.0}};
    const auto mz = p2m<double>(above, c, 10);
    for (int n = 0; n < 10; ++n)
        CHECK(mz.re(n, 0) ==
              Approx(std::pow(d, n) / factorial(n)).epsilon(1e-13));
}

TEST_CASE("p2m convention: off-axis geometric series") {
    // pins the no-conjugation convention
    const double a = 0.8, x = 3.0;
    const std::vector<point_charge<double>> q{{{0.0, a, 0.0}, 1.0}};
    const auto m = p2m<double>(q, {0, 0, 0}, 26);
    const double u = eval_multipole(m, {0.0, 0.0, 0.0}, {0.0, x, 0.0});
    CHECK(u == Approx(1.0 / (x - a)).epsilon(1e-9));
}

TEST_CASE("expansion evaluation") {
    solid<double> m(solid_kind::multipole, 4);
    m.re(0, 0) = 1.0;
    CHECK(eval_multipole(m, {0, 0, 0}, {0.0, 0.0, 2.0}) == Approx(0.5));
    CHECK_THROWS_AS(eval_multipole(m, {1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}),
                    std::domain_error);

    const std::vector<point_charge<double>> q{{{0.0, 0.0, 0.25}, 1.0}};
    const auto mg = p2m<double>(q, {0, 0, 0}, 10);
    CHECK(std::abs(eval_multipole(mg, {0.0, 0.0, 0.0}, {0.0, 0.0, 2.0}) -
                   1.0 / 1.75) < 1e-8);

    solid<double> l(solid_kind::local, 3);
    l.set(1, 1, {1.0, 0.0});
    const vec3<double> xx{0.37, -0.21, 0.83};
    CHECK(eval_local(l, {0, 0, 0}, xx) == Approx(xx.x).epsilon(1e-14));
}

TEST_CASE("multipole evaluation converges to the direct sum") {
    auto rng = testing::make_rng(13);
    const vec3<double> c{0, 0, 0};
    const auto cluster = testing::random_cluster<double>(rng, c, 0.5, 12);
    const std::vector<vec3<double>> targets{{2.0, 1.0, 1.5}, {-2.2, 0.3, 1.8}};
    const auto want = direct_potential<double>(targets, cluster);

    double prev = 1e30;
    for (int p : {4, 8, 12, 16}) {
        const auto m = p2m<double>(cluster, c, p);
        double err = 0;
        for (std::size_t i = 0; i < targets.size(); ++i)
            err = std::max(err, std::abs(eval_multipole(m, c, targets[i]) -
                                         want[i]));
        CHECK(err <= prev * 1.5);  // monotone in the large
        prev = err;
    }
    CHECK(prev < 1e-7);
}

TEST_CASE("single precision harmonics") {
    const auto r = regular<float>(6, {0.5f, -0.25f, 1.0f});
    const auto rd = regular<double>(6, {0.5, -0.25, 1.0});
    for (int n = 0; n < 6; ++n)
        for (int m = 0; m <= n; ++m)
            CHECK(std::abs(r.re(n, m) - rd.re(n, m)) < 1e-5);
}
