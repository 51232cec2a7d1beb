#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace viscoplast::cli {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Fast property suite behind the `verify` subcommand: constitutive sweeps,
/// elliptic manufactured solutions and oracle equivalence, transport
/// conservation, spectral calculus identities. Deterministic in the seed.
std::vector<CheckResult> run_verify_suite(std::uint64_t seed);

/// Worker bound for concurrent sweeps: min(hardware, VISCOPLAST_THREADS).
int max_workers();

} // namespace viscoplast::cli
