#include "bench.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

#include "mpole/mpole.hpp"

namespace mpole::cli {

namespace {

using clock_type = std::chrono::steady_clock;

constexpr double target_seconds = 0.05;

template <typename Real>
struct bench_case {
    std::vector<solid<Real>> sources;
    std::vector<solid<Real>> outputs;
    std::vector<translation_request<Real>> requests;
};

template <typename Real>
bench_case<Real> make_case(std::mt19937_64& rng, int order, int batch) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> shift(0.5, 2.0);
    bench_case<Real> c;
    c.sources.reserve(batch);
    c.outputs.assign(batch, solid<Real>(solid_kind::local, order));
    for (int i = 0; i < batch; ++i) {
        solid<Real> s(solid_kind::multipole, order);
        for (int n = 0; n < order; ++n)
            for (int m = 0; m <= n; ++m)
                s.set(n, m, {static_cast<Real>(coeff(rng)),
                             m == 0 ? Real(0)
                                    : static_cast<Real>(coeff(rng))});
        c.sources.push_back(std::move(s));
    }
    for (int i = 0; i < batch; ++i) {
        vec3<Real> r{static_cast<Real>(coeff(rng)),
                     static_cast<Real>(coeff(rng)),
                     static_cast<Real>(coeff(rng))};
        const Real len = norm(r);
        const Real want = static_cast<Real>(shift(rng));
        if (len < Real(0.01)) {
            r = {want, Real(0), Real(0)};
        } else {
            r = {r.x / len * want, r.y / len * want, r.z / len * want};
        }
        c.requests.push_back({&c.sources[i], r, order, &c.outputs[i]});
    }
    return c;
}

template <typename Real>
double time_reps(const std::function<void()>& body, long long reps) {
    const auto start = clock_type::now();
    for (long long r = 0; r < reps; ++r) body();
    const auto stop = clock_type::now();
    return std::chrono::duration<double>(stop - start).count();
}

template <typename Real>
bench_record measure(const std::string& kernel, int order, int batch,
                     long long reps_requested,
                     const std::function<void()>& body) {
    body();  // warm-up, excluded from the totals
    long long reps = reps_requested;
    if (reps <= 0) {
        // calibrate against the 50 ms floor
        long long probe = 1;
        double t = 0;
        while (true) {
            t = time_reps<Real>(body, probe);
            if (t >= target_seconds / 8 || probe > (1LL << 24)) break;
            probe *= 4;
        }
        reps = std::max<long long>(
            1, static_cast<long long>(std::ceil(target_seconds / (t / probe))));
    }
    const double seconds = time_reps<Real>(body, reps);
    const double per = seconds / (static_cast<double>(reps) * batch);
    return {order, kernel, per * 1e9, batch, reps};
}

}  // namespace

template <typename Real>
std::vector<bench_record> run_bench(const bench_options& opt) {
    if (opt.pmin < 1 || opt.pmax < opt.pmin)
        throw std::invalid_argument("bench: need 1 <= pmin <= pmax");
    if (opt.kernel != "both" && opt.kernel != "optimized" &&
        opt.kernel != "naive")
        throw std::invalid_argument(
            "bench: kernel must be optimized, naive or both");
    kernel_config cfg = default_kernel_config<Real>();
    if (opt.mu > 0) cfg.mu = opt.mu;
    if (opt.nu > 0) cfg.nu = opt.nu;
    validate(cfg);
    const int batch = opt.batch > 0 ? opt.batch : cfg.nu;
    if (opt.pmax > operator_data<Real>::max_order())
        throw std::invalid_argument("bench: pmax exceeds the order cap " +
                                    std::to_string(operator_data<Real>::max_order()));

    const bool do_opt = opt.kernel != "naive";
    const bool do_naive = opt.kernel != "optimized";

    std::vector<bench_record> out;
    std::mt19937_64 rng(opt.seed);
    const auto ops = operator_data<Real>::acquire(opt.pmax, cfg);
    workspace<Real> ws(opt.pmax, cfg);

    for (int p = opt.pmin; p <= opt.pmax; ++p) {
        auto c = make_case<Real>(rng, p, batch);
        if (do_opt) {
            out.push_back(measure<Real>(
                "optimized", p, batch, opt.reps, [&] {
                    m2l<Real>(*ops,
                              std::span<const translation_request<Real>>(
                                  c.requests),
                              ws);
                }));
        }
        if (do_naive) {
            out.push_back(measure<Real>("naive", p, batch, opt.reps, [&] {
                for (int i = 0; i < batch; ++i)
                    c.outputs[i] =
                        m2l_naive(c.sources[i], c.requests[i].shift, p);
            }));
        }
    }
    return out;
}

template std::vector<bench_record> run_bench<float>(const bench_options&);
template std::vector<bench_record> run_bench<double>(const bench_options&);

void write_csv(std::ostream& os, std::span<const bench_record> records) {
    os << "P,kernel,ns_per_translation,batch,reps\n";
    os.precision(6);
    os << std::fixed;
    for (const auto& r : records) {
        os << r.order << ',' << r.kernel << ',' << r.ns_per_translation << ','
           << r.batch << ',' << r.reps << '\n';
    }
    os.unsetf(std::ios_base::fixed);
}

double loglog_slope(std::span<const bench_record> records,
                    const std::string& kernel, int plo, int phi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (const auto& r : records) {
        if (r.kernel != kernel || r.order < plo || r.order > phi) continue;
        const double x = std::log(static_cast<double>(r.order));
        const double y = std::log(r.ns_per_translation);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) return std::numeric_limits<double>::quiet_NaN();
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

}  // namespace mpole::cli
