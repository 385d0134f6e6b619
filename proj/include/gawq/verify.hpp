#pragma once

// Acceptance criteria, each a self-contained check with pinned tolerances.
// Shared by `gawq verify` and the acceptance test binary.

#include "gawq/dynamics.hpp"
#include "gawq/packet.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gawq {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Reference configurations of the figures.
SystemParams reference_params(double gamma, int N = 3); // g = 0.812, J = 1, resonant
GaussianPacketSpec reference_packet();                  // alpha 0.02, j_c -500, k_c 1.32

// Memoizes the expensive lattice runs across criteria.
class VerifyContext {
public:
    explicit VerifyContext(std::filesystem::path scratch);

    const RunObservables& loss_run(double tol = 1e-9);
    const RunObservables& gain_run();
    const std::filesystem::path& scratch() const { return scratch_; }

private:
    std::filesystem::path scratch_;
    std::map<double, RunObservables> loss_;
    std::optional<RunObservables> gain_;
};

const std::vector<int>& criterion_ids();
std::string criterion_title(int id);

// Never throws: an exception inside a check is reported as a failure.
CriterionResult run_criterion(int id, VerifyContext& ctx);

// "PASS  3  decoupling ...  (detail)"
std::string format_result(const CriterionResult& r);

} // namespace gawq
