#include "doctest.h"
#include "mpole/solid.hpp"
#include "test_helpers.hpp"

#include <set>

using namespace mpole;

TEST_CASE("index layout") {
    CHECK(index_re(0, 0) == 0);
    CHECK(index_im(0, 0) == 1);
    CHECK(index_re(2, 1) == 8);
    CHECK(index_im(2, 1) == 9);
    CHECK(solid_size(5) == 30);

    // bijective over the stored slots
    const int p = 9;
    std::set<std::size_t> seen;
    for (int n = 0; n < p; ++n) {
        for (int m = 0; m <= n; ++m) {
            CHECK(index_re(n, m) < solid_size(p));
            CHECK(index_im(n, m) < solid_size(p));
            seen.insert(index_re(n, m));
            seen.insert(index_im(n, m));
        }
    }
    CHECK(seen.size() == solid_size(p));
}

TEST_CASE("negative m symmetry") {
    solid<double> s(solid_kind::multipole, 3);
    s.set(1, 1, {2.0, 3.0});
    CHECK(s.coeff(1, -1) == std::complex<double>{-2.0, 3.0});
    s.set(2, 2, {1.0, 0.0});
    CHECK(s.coeff(2, -2) == std::complex<double>{1.0, 0.0});
}

TEST_CASE("m = 0 imaginary slot stays zero") {
    solid<double> s(solid_kind::local, 4);
    s.set(2, 0, {0.7, 123.0});  // imaginary part discarded
    CHECK(s.im(2, 0) == 0.0);
    CHECK(s.coeff(2, 0).imag() == 0.0);

    auto rng = testing::make_rng();
    const auto r = testing::random_solid<double>(rng, 8);
    for (int n = 0; n < r.order(); ++n) CHECK(r.coeff(n, 0).imag() == 0.0);
}

TEST_CASE("round trip through coeff is exact") {
    auto rng = testing::make_rng(17);
    const auto s = testing::random_solid<double>(rng, 10);
    for (int n = 0; n < s.order(); ++n) {
        for (int m = 0; m <= n; ++m) {
            CHECK(s.coeff(n, m) ==
                  std::complex<double>{s.re(n, m), s.im(n, m)});
        }
    }
}

TEST_CASE("applying the symmetry map twice is the identity") {
    auto rng = testing::make_rng(23);
    const auto s = testing::random_solid<double>(rng, 12);
    for (int n = 0; n < s.order(); ++n) {
        for (int m = -n; m <= n; ++m) {
            const auto c = s.coeff(n, m);
            // C_n^m = (-1)^m conj(C_n^{-m}) applied to the derived value
            const double sign = (m & 1) ? -1.0 : 1.0;
            const auto back = sign * std::conj(s.coeff(n, -m));
            CHECK(back == c);  // bit exact
        }
    }
}
