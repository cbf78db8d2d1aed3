#include "mpole/io.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mpole {

namespace {

// Tracks line numbers so parse errors can name them.
class token_reader {
public:
    explicit token_reader(std::istream& is) : is_(is) {}

    // next whitespace-separated token, or empty at end of input
    std::string next() {
        while (true) {
            if (pos_ >= line_.size()) {
                if (!std::getline(is_, line_)) return {};
                ++line_no_;
                pos_ = 0;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(line_[pos_]))) {
                ++pos_;
                continue;
            }
            const std::size_t start = pos_;
            while (pos_ < line_.size() &&
                   !std::isspace(static_cast<unsigned char>(line_[pos_])))
                ++pos_;
            return line_.substr(start, pos_ - start);
        }
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("line " + std::to_string(line_no_) + ": " +
                                 what);
    }

    int line() const noexcept { return line_no_; }

private:
    std::istream& is_;
    std::string line_;
    std::size_t pos_ = 0;
    int line_no_ = 0;
};

template <typename Real>
Real parse_real(const token_reader& r, const std::string& tok) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return static_cast<Real>(v);
    } catch (const std::exception&) {
        r.fail("expected a number, got '" + tok + "'");
    }
}

}  // namespace

template <typename Real>
void write_solid(std::ostream& os, const solid<Real>& s) {
    os << "SOLID " << kind_letter(s.kind()) << ' ' << s.order() << '\n';
    os.precision(std::numeric_limits<Real>::max_digits10);
    const auto data = s.data();
    std::size_t i = 0;
    for (int n = 0; n < s.order(); ++n) {
        const std::size_t row = 2 * static_cast<std::size_t>(n + 1);
        for (std::size_t k = 0; k < row; ++k, ++i) {
            os << data[i] << (k + 1 == row ? '\n' : ' ');
        }
    }
}

template <typename Real>
std::optional<solid<Real>> read_solid(std::istream& is) {
    token_reader r(is);
    const std::string head = r.next();
    if (head.empty()) return std::nullopt;
    if (head != "SOLID") r.fail("expected 'SOLID' header, got '" + head + "'");

    const std::string kind_tok = r.next();
    if (kind_tok.size() != 1) r.fail("expected solid kind M, L, R or S");
    solid_kind kind;
    try {
        kind = kind_from_letter(kind_tok[0]);
    } catch (const std::invalid_argument&) {
        r.fail("expected solid kind M, L, R or S, got '" + kind_tok + "'");
    }

    const std::string order_tok = r.next();
    int order = 0;
    try {
        std::size_t used = 0;
        order = std::stoi(order_tok, &used);
        if (used != order_tok.size()) throw std::invalid_argument(order_tok);
    } catch (const std::exception&) {
        r.fail("expected an order, got '" + order_tok + "'");
    }
    if (order < 1) r.fail("order must be >= 1");

    solid<Real> s(kind, order);
    auto data = s.data();
    for (std::size_t i = 0; i < data.size(); ++i) {
        const std::string tok = r.next();
        if (tok.empty())
            r.fail("unexpected end of input; expected " +
                   std::to_string(data.size()) + " values, got " +
                   std::to_string(i));
        data[i] = parse_real<Real>(r, tok);
    }
    return s;
}

template <typename Real>
std::vector<solid<Real>> read_solids(std::istream& is) {
    std::vector<solid<Real>> out;
    while (auto s = read_solid<Real>(is)) out.push_back(std::move(*s));
    return out;
}

template <typename Real>
std::vector<point_charge<Real>> read_charges(std::istream& is) {
    std::vector<point_charge<Real>> out;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        point_charge<Real> c{};
        if (!(ls >> c.position.x >> c.position.y >> c.position.z >> c.charge))
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected 'x y z q'");
        std::string rest;
        if (ls >> rest)
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": trailing content '" + rest + "'");
        out.push_back(c);
    }
    return out;
}

template <typename Real>
void write_charges(std::ostream& os,
                   std::span<const point_charge<Real>> charges) {
    os.precision(std::numeric_limits<Real>::max_digits10);
    for (const auto& c : charges)
        os << c.position.x << ' ' << c.position.y << ' ' << c.position.z
           << ' ' << c.charge << '\n';
}

#define MPOLE_INSTANTIATE(Real)                                             \
    template void write_solid<Real>(std::ostream&, const solid<Real>&);     \
    template std::optional<solid<Real>> read_solid<Real>(std::istream&);    \
    template std::vector<solid<Real>> read_solids<Real>(std::istream&);     \
    template std::vector<point_charge<Real>> read_charges<Real>(            \
        std::istream&);                                                     \
    template void write_charges<Real>(std::ostream&,                        \
                                      std::span<const point_charge<Real>>);

MPOLE_INSTANTIATE(float)
MPOLE_INSTANTIATE(double)

#undef MPOLE_INSTANTIATE

}  // namespace mpole
