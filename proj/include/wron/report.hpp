#pragma once

// Fixed-schema JSON / CSV writers for the CLI. Numbers carry 17 significant
// digits in JSON (round-trip exact for doubles) and 12 in CSV, so identical
// runs produce byte-identical output. Non-finite values become null in JSON.

#include "wron/cartan.hpp"
#include "wron/verify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wron {

std::string format_double(double v, int significant_digits);

/// Per-sample row for the recover / cartan / probe-abel commands. Exactly one
/// of the value members is meaningful, depending on the flags.
struct CommandSample {
    double t = 0.0;
    bool degenerate = false;
    std::optional<std::string> domain_error;

    std::vector<double> p;              // recover
    std::optional<CartanData> cartan;   // cartan
    std::optional<AbelProbe> probe;     // probe-abel

    bool evaluated() const { return !degenerate && !domain_error; }
};

std::string render_recover_json(int n, const GridSpec& grid, const std::vector<CommandSample>& rows);
std::string render_recover_csv(int n, const std::vector<CommandSample>& rows);

std::string render_cartan_json(int n, const GridSpec& grid, const std::vector<CommandSample>& rows);
std::string render_cartan_csv(int n, const std::vector<CommandSample>& rows);

std::string render_probe_json(int n, const GridSpec& grid, const std::vector<CommandSample>& rows);
std::string render_probe_csv(int n, const std::vector<CommandSample>& rows);

std::string render_verify_json(const VerifyReport& report);
std::string render_verify_csv(const VerifyReport& report);

} // namespace wron
