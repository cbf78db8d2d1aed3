#include "translate.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpole/mpole.hpp"

namespace mpole::cli {

template <typename Real>
void run_translate(const translate_options& opt, std::istream& in,
                   std::ostream& out) {
    if (opt.op != "m2l" && opt.op != "m2m" && opt.op != "l2l")
        throw std::invalid_argument("translate: op must be m2l, m2m or l2l");

    const auto solids = read_solids<Real>(in);
    if (solids.empty()) throw std::runtime_error("no solids in input");

    const solid_kind want_kind =
        opt.op == "l2l" ? solid_kind::local : solid_kind::multipole;
    for (std::size_t i = 0; i < solids.size(); ++i) {
        if (solids[i].kind() != want_kind)
            throw std::runtime_error(
                "solid " + std::to_string(i + 1) + " has kind '" +
                std::string(1, kind_letter(solids[i].kind())) + "', " +
                opt.op + " needs '" + kind_letter(want_kind) + "'");
    }

    const vec3<Real> shift{static_cast<Real>(opt.shift[0]),
                           static_cast<Real>(opt.shift[1]),
                           static_cast<Real>(opt.shift[2])};

    kernel_config cfg = default_kernel_config<Real>();
    if (opt.mu > 0) cfg.mu = opt.mu;
    if (opt.nu > 0) cfg.nu = opt.nu;
    validate(cfg);

    int max_order = 0;
    std::vector<translation_request<Real>> reqs;
    std::vector<solid<Real>> outputs(
        solids.size(), solid<Real>(solid_kind::local, 1));
    for (std::size_t i = 0; i < solids.size(); ++i) {
        const int pout = opt.pout > 0 ? opt.pout : solids[i].order();
        reqs.push_back({&solids[i], shift, pout, &outputs[i]});
        max_order = std::max({max_order, solids[i].order(), pout});
    }

    const auto ops = operator_data<Real>::acquire(max_order, cfg);
    workspace<Real> ws(max_order, cfg);
    if (opt.op == "m2l") {
        m2l<Real>(*ops, reqs, ws);
    } else if (opt.op == "m2m") {
        m2m<Real>(*ops, reqs, ws);
    } else {
        l2l<Real>(*ops, reqs, ws);
    }

    for (const auto& s : outputs) write_solid(out, s);
}

template void run_translate<float>(const translate_options&, std::istream&,
                                   std::ostream&);
template void run_translate<double>(const translate_options&, std::istream&,
                                    std::ostream&);

template <typename Real>
void run_p2m(const p2m_options& opt, std::istream& in, std::ostream& out) {
    if (opt.order < 1 || opt.order > operator_data<Real>::max_order())
        throw std::invalid_argument("p2m: order must be within 1 .. " +
                                    std::to_string(
                                        operator_data<Real>::max_order()));
    const auto charges = read_charges<Real>(in);
    if (charges.empty()) throw std::runtime_error("no charges in input");
    const vec3<Real> center{static_cast<Real>(opt.center[0]),
                            static_cast<Real>(opt.center[1]),
                            static_cast<Real>(opt.center[2])};
    write_solid(out, p2m<Real>(charges, center, opt.order));
}

template void run_p2m<float>(const p2m_options&, std::istream&,
                             std::ostream&);
template void run_p2m<double>(const p2m_options&, std::istream&,
                              std::ostream&);

}  // namespace mpole::cli
