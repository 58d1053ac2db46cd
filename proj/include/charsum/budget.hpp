#ifndef CHARSUM_BUDGET_HPP
#define CHARSUM_BUDGET_HPP

#include <string>

namespace charsum {

// Central size caps. Defaults are sized for desk-scale runs; the CLI can
// override each field, and the env var CHARSUM_BUDGET accepts either a plain
// integer (extension-field cap) or a comma list "ext_field=65536,g_cube=120".
struct Budget {
    long long ext_field = 1LL << 15; // max p^m for extension fields
    long long g_cube = 120;          // max modulus c for brute-force G sums
    long long h_double_sum = 4096;   // max q for O(q^2) double character sums
    long long kloosterman_c = 100000; // max modulus for a Kloosterman table
    long long moment_c = 4000;       // hard cap on moduli in the moment sum
};

Budget& global_budget();

// Parses CHARSUM_BUDGET if present. Called once from the CLI; tests may call
// apply_budget_spec directly.
void apply_budget_env();
void apply_budget_spec(Budget& b, const std::string& spec);

} // namespace charsum

#endif
