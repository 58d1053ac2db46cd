#ifndef CHARSUM_REPORT_HPP
#define CHARSUM_REPORT_HPP

#include <complex>
#include <string>
#include <vector>

namespace charsum {

// One checked identity: left/right values, deviation and verdict.
struct IdentityReport {
    std::string identity;
    std::string params;
    std::complex<double> lhs;
    std::complex<double> rhs;
    double deviation;
    double tolerance;
    bool pass;
};

IdentityReport make_report(std::string identity, std::string params, std::complex<double> lhs,
                           std::complex<double> rhs, double tolerance);

// Boolean-style check (bounds, counts); deviation is the margin overshoot.
IdentityReport make_bound_report(std::string identity, std::string params, double value,
                                 double bound, double tolerance);

std::string format_complex(std::complex<double> z);

} // namespace charsum

#endif
