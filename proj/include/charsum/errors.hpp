#ifndef CHARSUM_ERRORS_HPP
#define CHARSUM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace charsum {

// Error taxonomy mirrored by the CLI exit codes:
//   invalid_input -> 2, budget -> 3, identity failures -> 1 (reported, not thrown).
enum class errc {
    invalid_input,
    not_invertible,
    unsupported_modulus,
    budget_exceeded,
    angle_undefined,
    parity_violation,
    domain,
};

class error : public std::runtime_error {
public:
    error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    errc kind() const { return kind_; }

private:
    errc kind_;
};

inline const char* errc_name(errc k) {
    switch (k) {
        case errc::invalid_input: return "invalid-input";
        case errc::not_invertible: return "not-invertible";
        case errc::unsupported_modulus: return "unsupported-modulus";
        case errc::budget_exceeded: return "budget-exceeded";
        case errc::angle_undefined: return "angle-undefined";
        case errc::parity_violation: return "parity-violation";
        case errc::domain: return "domain";
    }
    return "unknown";
}

} // namespace charsum

#endif
