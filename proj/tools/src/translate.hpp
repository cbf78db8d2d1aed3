#pragma once

#include <array>
#include <iosfwd>
#include <string>

namespace mpole::cli {

struct translate_options {
    std::string op = "m2l";  // m2l | m2m | l2l
    std::array<double, 3> shift{0, 0, 0};
    int pout = 0;  // 0: same as the input order
    int mu = 0;
    int nu = 0;
};

/// Reads solids from `in`, applies the requested translation to each,
/// and writes the results to `out` in the same format. m2l and m2m
/// expect M solids, l2l expects L solids.
template <typename Real>
void run_translate(const translate_options& opt, std::istream& in,
                   std::ostream& out);

struct p2m_options {
    std::array<double, 3> center{0, 0, 0};
    int order = 8;
    int mu = 0;  // unused, kept for uniform flag handling
    int nu = 0;
};

/// Reads a point-charge set from `in` and writes its multipole
/// expansion about the given centre to `out`.
template <typename Real>
void run_p2m(const p2m_options& opt, std::istream& in, std::ostream& out);

}  // namespace mpole::cli
