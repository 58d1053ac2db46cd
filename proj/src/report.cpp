#include "charsum/report.hpp"

#include <cmath>
#include <cstdio>

namespace charsum {

IdentityReport make_report(std::string identity, std::string params, std::complex<double> lhs,
                           std::complex<double> rhs, double tolerance) {
    double dev = std::abs(lhs - rhs);
    return {std::move(identity), std::move(params), lhs, rhs, dev, tolerance, dev <= tolerance};
}

IdentityReport make_bound_report(std::string identity, std::string params, double value,
                                 double bound, double tolerance) {
    double over = std::max(0.0, value - bound);
    return {std::move(identity), std::move(params), {value, 0.0}, {bound, 0.0},
            over, tolerance, over <= tolerance};
}

std::string format_complex(std::complex<double> z) {
    char buf[64];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof(buf), "%.12g", z.real());
    } else {
        std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
    }
    return buf;
}

} // namespace charsum
