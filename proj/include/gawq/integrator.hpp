#pragma once

// Dormand-Prince 5(4) with FSAL and fourth-order dense output, on complex
// state vectors. Step control uses the max norm of the embedded error scaled
// by atol + rtol * |y|.

#include "gawq/core_model.hpp"

#include <functional>
#include <span>
#include <vector>

namespace gawq {

class DormandPrince {
public:
    using Rhs = std::function<void(double t, std::span<const cplx> y, std::span<cplx> dy)>;
    // Called at every requested output time with the interpolated state.
    using Observer = std::function<void(double t, std::span<const cplx> y)>;

    struct Options {
        double atol = 1e-9;
        double rtol = 1e-9;
        double h0 = 0.0;      // 0 picks a starting step from the rhs scale
        double h_min = 1e-12; // step underflow threshold
        double h_max = 0.0;   // 0 means unbounded
        long max_steps = 50'000'000;
    };

    struct Stats {
        long accepted = 0;
        long rejected = 0;
        long rhs_calls = 0;
    };

    DormandPrince(Rhs rhs, Options opt);

    // Advances y from t0 to out_times.back(), reporting each output time
    // (sorted, all >= t0). On return y holds the state at the last time.
    void integrate(double t0, std::vector<cplx>& y, std::span<const double> out_times, const Observer& obs);

    const Stats& stats() const { return stats_; }

private:
    Rhs rhs_;
    Options opt_;
    Stats stats_;
};

} // namespace gawq
