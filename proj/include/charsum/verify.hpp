#ifndef CHARSUM_VERIFY_HPP
#define CHARSUM_VERIFY_HPP

#include <string>
#include <vector>

#include "charsum/parallel.hpp"
#include "charsum/report.hpp"
#include "charsum/sums.hpp"

namespace charsum {

enum class VerifyScope { classical, paper, extension, analytic, all };

VerifyScope parse_scope(const std::string& name);
const char* scope_name(VerifyScope s);

struct VerifyResult {
    std::vector<IdentityReport> reports;
    int failures = 0;
};

VerifyResult run_verify_suite(VerifyScope scope, const Parallelism& par = {});

// Table-vs-direct cross check; names the first failing (m, n, c) in params.
IdentityReport check_table_consistency(const KloostermanTable& table, int samples = 40);

// Deterministic serializations (identical bytes for identical results).
std::string verify_report_json(const VerifyResult& r, const std::string& scope);
std::string verify_report_text(const VerifyResult& r, const std::string& scope);

} // namespace charsum

#endif
