#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "resolvent_lab/herglotz.hpp"

namespace resolvent_lab {

struct VerificationReport {
    std::string check_id;
    std::int64_t seed = 0;
    std::map<std::string, std::string> parameters;
    double margin = 0.0;   // signed slack; >= -1e-8 counts as a pass
    bool pass = false;
    std::int64_t runtime_ms = 0;
};

/// Deterministic random generator: n_atoms angles uniform on [0, 2 pi),
/// masses from a flat Dirichlet scaled to sum Re q, gamma = Im q.  The draws
/// use an explicit inverse-CDF on top of mt19937_64 so results are identical
/// across platforms.
Generator sample_generator(std::uint64_t seed, int n_atoms, Complex q);

struct SuiteConfig {
    std::vector<std::string> checks;        // empty = every known check
    std::vector<std::int64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10,
                                       11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
    std::vector<double> xs = {2.5, 5.0, 8.0, 10.0, 50.0};
    std::vector<double> xs_containment = {6.0, 8.0, 20.0, 100.0};
    int grid_radii = 64;
    int grid_angles = 256;
    double tol = 1e-12;
    int threads = 0;  // 0: RESOLVENT_LAB_THREADS or hardware count
};

const std::vector<std::string>& known_checks();

/// Run the configured checks and return one report per (check, seed, x)
/// combination, ordered deterministically.  Identical configs give
/// byte-identical payloads apart from runtime_ms.
std::vector<VerificationReport> run_suite(const SuiteConfig& config);

std::string report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const std::string& line);

void write_json_lines(std::ostream& out, const std::vector<VerificationReport>& reports);
void write_csv_summary(std::ostream& out, const std::vector<VerificationReport>& reports);

int worker_count(int requested = 0);

} // namespace resolvent_lab
