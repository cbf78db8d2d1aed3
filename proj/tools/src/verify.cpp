#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <stdexcept>

#include "mpole/mpole.hpp"

namespace mpole::cli {

namespace {

template <typename Real>
struct tolerances {
    double involution;
    double packed_dense;
    double m2l_oracle;
    double recentring;
    double field;
    int default_pmax;
};

template <typename Real>
tolerances<Real> default_tols();

template <>
tolerances<double> default_tols<double>() {
    return {1e-12, 1e-13, 1e-12, 1e-12, 1e-6, 20};
}

// single precision bounds are engineering defaults, scaled from the
// double ones by the precision ratio
template <>
tolerances<float> default_tols<float>() {
    return {1e-4, 1e-5, 1e-3, 1e-3, 1e-3, 8};
}

template <typename Real>
double normalized_error(const solid<Real>& a, const solid<Real>& b) {
    double scale = 0, diff = 0;
    auto da = a.data();
    auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) {
        scale = std::max(scale, std::abs(static_cast<double>(db[i])));
        diff = std::max(diff, std::abs(static_cast<double>(da[i]) -
                                       static_cast<double>(db[i])));
    }
    return diff / std::max(scale, 1e-300);
}

template <typename Real>
solid<Real> random_solid(std::mt19937_64& rng, int order) {
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    solid<Real> s(solid_kind::multipole, order);
    for (int n = 0; n < order; ++n)
        for (int m = 0; m <= n; ++m)
            s.set(n, m, {static_cast<Real>(ud(rng)),
                         m == 0 ? Real(0) : static_cast<Real>(ud(rng))});
    return s;
}

template <typename Real>
vec3<Real> random_shift(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    std::uniform_real_distribution<double> us(0.5, 2.0);
    while (true) {
        vec3<Real> r{static_cast<Real>(ud(rng)), static_cast<Real>(ud(rng)),
                     static_cast<Real>(ud(rng))};
        const Real len = norm(r);
        if (len < Real(0.1)) continue;
        const Real want = static_cast<Real>(us(rng));
        return {r.x / len * want, r.y / len * want, r.z / len * want};
    }
}

double suite_swap_involution(int pmax, std::mt19937_64& rng) {
    double worst = 0;
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    for (int n = 0; n < pmax; ++n) {
        const auto fg = swap_matrices(n, wigner_b(n));
        const int rows = n + 1;
        std::vector<double> v(rows), w(rows), u(rows);
        for (auto& x : v) x = ud(rng);
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
            worst = std::max(worst, std::abs(u[m] - v[m]) /
                                        std::max(1.0, std::abs(v[m])));
        v[0] = 0.0;
        apply(fg.g, v, w);
        apply(fg.g, w, u);
        for (int m = 1; m < rows; ++m)
            worst = std::max(worst, std::abs(u[m] - v[m]) /
                                        std::max(1.0, std::abs(v[m])));
    }
    return worst;
}

template <typename Real>
double suite_packed_dense(int pmax, kernel_config cfg, std::mt19937_64& rng) {
    const operator_data<Real> ops(pmax, cfg);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    double worst = 0;
    for (int n = 0; n < pmax; ++n) {
        const auto& sw = ops.swaps(n);
        const int rows = n + 1;
        std::vector<Real> b(static_cast<std::size_t>(rows) * cfg.nu);
        for (auto& x : b) x = static_cast<Real>(ud(rng));
        const int padded = padded_rows(rows, cfg.mu);
        std::vector<Real> c(static_cast<std::size_t>(padded) * cfg.nu);
        swap_product(sw.f_packed.data(), rows, n & 1, b.data(), c.data(),
                     cfg.mu, cfg.nu);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cfg.nu; ++j) {
                double want = 0;
                for (int l = 0; l < rows; ++l)
                    want += static_cast<double>(
                                sw.f_dense[static_cast<std::size_t>(i) * rows +
                                           l]) *
                            static_cast<double>(
                                b[static_cast<std::size_t>(l) * cfg.nu + j]);
                const double got =
                    c[static_cast<std::size_t>(i) * cfg.nu + j];
                worst = std::max(worst, std::abs(got - want) /
                                            std::max(1.0, std::abs(want)));
            }
    }
    return worst;
}

template <typename Real>
double suite_m2l_oracle(int pmax, kernel_config cfg, std::mt19937_64& rng,
                        int cases_per_order) {
    const auto ops = operator_data<Real>::acquire(pmax, cfg);
    workspace<Real> ws(pmax, cfg);
    double worst = 0;
    for (int p = 1; p <= pmax; ++p) {
        for (int c = 0; c < cases_per_order; ++c) {
            const auto m = random_solid<Real>(rng, p);
            const auto r = random_shift<Real>(rng);
            worst = std::max(worst, normalized_error(m2l(*ops, m, r, p, ws),
                                                     m2l_naive(m, r, p)));
        }
    }
    return worst;
}

template <typename Real>
double suite_recentring(int pmax, kernel_config cfg, std::mt19937_64& rng) {
    const int p = std::min(pmax, 10);
    const auto ops = operator_data<Real>::acquire(p, cfg);
    workspace<Real> ws(p, cfg);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);

    std::vector<point_charge<Real>> charges;
    for (int i = 0; i < 8; ++i)
        charges.push_back({{static_cast<Real>(0.4 * ud(rng)),
                            static_cast<Real>(0.4 * ud(rng)),
                            static_cast<Real>(0.4 * ud(rng))},
                           static_cast<Real>(ud(rng))});
    const vec3<Real> a{0, 0, 0};
    const vec3<Real> b{Real(0.9), Real(-0.4), Real(0.6)};
    const auto ma = p2m<Real>(charges, a, p);
    const auto mb = p2m<Real>(charges, b, p);
    double worst = normalized_error(m2m(*ops, ma, b - a, p, ws), mb);

    const vec3<Real> lc{Real(4), Real(3.2), Real(3.8)};
    const auto l = m2l(*ops, ma, lc, p, ws);
    const vec3<Real> shift{Real(0.25), Real(-0.3), Real(0.2)};
    const auto moved = l2l(*ops, l, shift, p, ws);
    const vec3<Real> nc = lc + shift;
    for (int i = 0; i < 25; ++i) {
        const vec3<Real> x{nc.x + static_cast<Real>(0.15 * ud(rng)),
                           nc.y + static_cast<Real>(0.15 * ud(rng)),
                           nc.z + static_cast<Real>(0.15 * ud(rng))};
        const double ref = eval_local(l, lc, x);
        const double got = eval_local(moved, nc, x);
        worst = std::max(worst,
                         std::abs(got - ref) / std::max(1.0, std::abs(ref)));
    }
    return worst;
}

template <typename Real>
double suite_field(int pmax, kernel_config cfg, std::mt19937_64& rng,
                   const std::string& charges_path) {
    const int p = std::min(pmax, 10);
    const auto ops = operator_data<Real>::acquire(p, cfg);
    workspace<Real> ws(p, cfg);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);

    std::vector<point_charge<Real>> charges;
    if (!charges_path.empty()) {
        std::ifstream in(charges_path);
        if (!in) throw std::runtime_error("cannot open " + charges_path);
        charges = read_charges<Real>(in);
        if (charges.empty())
            throw std::runtime_error(charges_path + ": no charges");
    } else {
        for (int i = 0; i < 20; ++i)
            charges.push_back({{static_cast<Real>(0.5 * ud(rng)),
                                static_cast<Real>(0.5 * ud(rng)),
                                static_cast<Real>(0.5 * ud(rng))},
                               static_cast<Real>(ud(rng))});
    }
    vec3<Real> src_center{0, 0, 0};
    Real radius = 0;
    for (const auto& c : charges) {
        src_center.x += c.position.x / charges.size();
        src_center.y += c.position.y / charges.size();
        src_center.z += c.position.z / charges.size();
    }
    for (const auto& c : charges)
        radius = std::max(radius, norm(c.position - src_center));

    // separation ratio >= 3 between the cluster radius and the shift
    const vec3<Real> shift{Real(3.2) * radius, Real(1.1) * radius,
                           Real(2.4) * radius};
    const vec3<Real> tgt_center = src_center + shift;

    const auto m = p2m<Real>(charges, src_center, p);
    const auto l = m2l(*ops, m, shift, p, ws);

    std::vector<vec3<Real>> targets;
    for (int i = 0; i < 10; ++i)
        targets.push_back({tgt_center.x + static_cast<Real>(0.3) * radius *
                                              static_cast<Real>(ud(rng)),
                           tgt_center.y + static_cast<Real>(0.3) * radius *
                                              static_cast<Real>(ud(rng)),
                           tgt_center.z + static_cast<Real>(0.3) * radius *
                                              static_cast<Real>(ud(rng))});
    const auto direct = direct_potential<Real>(targets, charges);
    double worst = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const double got = eval_local(l, tgt_center, targets[i]);
        worst = std::max(worst, std::abs(got - direct[i]) /
                                    std::max(1.0, std::abs(
                                                      static_cast<double>(
                                                          direct[i]))));
    }
    return worst;
}

}  // namespace

template <typename Real>
std::vector<suite_result> run_verify(const verify_options& opt,
                                     std::ostream& os) {
    const auto tol = default_tols<Real>();
    const int pmax = opt.pmax > 0 ? opt.pmax : tol.default_pmax;
    kernel_config cfg = default_kernel_config<Real>();
    if (opt.mu > 0) cfg.mu = opt.mu;
    if (opt.nu > 0) cfg.nu = opt.nu;
    validate(cfg);
    if (pmax < 1 || pmax > operator_data<Real>::max_order())
        throw std::invalid_argument(
            "order too large: pmax must be within 1 .. " +
            std::to_string(operator_data<Real>::max_order()));

    std::mt19937_64 rng(opt.seed);
    std::vector<suite_result> out;
    auto report = [&](const std::string& name, double err, double tolerance) {
        const bool ok = err <= tolerance;
        out.push_back({name, err, tolerance, ok});
        os << (ok ? "PASS" : "FAIL") << "  " << std::left << std::setw(24)
           << name << " max error " << std::scientific
           << std::setprecision(3) << err << "  (tolerance " << tolerance
           << ")\n"
           << std::defaultfloat;
    };

    report("swap involution", suite_swap_involution(pmax, rng),
           tol.involution);
    report("packed vs dense", suite_packed_dense<Real>(pmax, cfg, rng),
           tol.packed_dense);
    report("m2l vs naive",
           suite_m2l_oracle<Real>(pmax, cfg, rng, /*cases_per_order=*/20),
           tol.m2l_oracle);
    report("m2m/l2l exactness", suite_recentring<Real>(pmax, cfg, rng),
           tol.recentring);
    report("potential convergence",
           suite_field<Real>(pmax, cfg, rng, opt.charges_path), tol.field);
    return out;
}

template std::vector<suite_result> run_verify<float>(const verify_options&,
                                                     std::ostream&);
template std::vector<suite_result> run_verify<double>(const verify_options&,
                                                      std::ostream&);

template <typename Real>
void dump_tables(std::ostream& os, const verify_options& opt) {
    kernel_config cfg = default_kernel_config<Real>();
    if (opt.mu > 0) cfg.mu = opt.mu;
    if (opt.nu > 0) cfg.nu = opt.nu;
    validate(cfg);
    const auto tol = default_tols<Real>();
    const int pmax = opt.pmax > 0 ? opt.pmax : tol.default_pmax;
    const int first = opt.order >= 0 ? opt.order : 0;
    const int last = opt.order >= 0 ? opt.order : pmax - 1;
    if (last >= operator_data<Real>::max_order())
        throw std::invalid_argument("order too large");

    const operator_data<Real> ops(last + 1, cfg);
    os.precision(std::numeric_limits<Real>::max_digits10);
    for (int n = first; n <= last; ++n) {
        const auto& sw = ops.swaps(n);
        const int rows = n + 1;
        auto print_dense = [&](const char* name,
                               const std::vector<Real>& a) {
            os << name << "_" << n << " dense:\n";
            for (int m = 0; m < rows; ++m) {
                for (int l = 0; l < rows; ++l)
                    os << a[static_cast<std::size_t>(m) * rows + l]
                       << (l + 1 == rows ? '\n' : ' ');
            }
        };
        auto print_packed = [&](const char* name,
                                const std::vector<Real>& s) {
            os << name << "_" << n << " packed:";
            for (const Real v : s) os << ' ' << v;
            os << '\n';
        };
        print_dense("F", sw.f_dense);
        print_dense("G", sw.g_dense);
        print_packed("F", sw.f_packed);
        print_packed("G", sw.g_packed);
        print_packed("Ft", sw.ft_packed);
        print_packed("Gt", sw.gt_packed);
    }
}

template void dump_tables<float>(std::ostream&, const verify_options&);
template void dump_tables<double>(std::ostream&, const verify_options&);

}  // namespace mpole::cli
