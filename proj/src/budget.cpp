#include "charsum/budget.hpp"

#include <cstdlib>
#include <sstream>

#include "charsum/errors.hpp"

namespace charsum {

Budget& global_budget() {
    static Budget b;
    return b;
}

void apply_budget_spec(Budget& b, const std::string& spec) {
    if (spec.empty()) return;
    if (spec.find('=') == std::string::npos) {
        b.ext_field = std::stoll(spec);
        return;
    }
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw error(errc::invalid_input, "budget spec: expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq);
        long long val = std::stoll(item.substr(eq + 1));
        if (key == "ext_field") b.ext_field = val;
        else if (key == "g_cube") b.g_cube = val;
        else if (key == "h_double_sum") b.h_double_sum = val;
        else if (key == "kloosterman_c") b.kloosterman_c = val;
        else if (key == "moment_c") b.moment_c = val;
        else throw error(errc::invalid_input, "budget spec: unknown key '" + key + "'");
    }
}

void apply_budget_env() {
    const char* env = std::getenv("CHARSUM_BUDGET");
    if (env) apply_budget_spec(global_budget(), env);
}

} // namespace charsum
