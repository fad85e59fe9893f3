#pragma once

#include "rootclust/geometry.hpp"

#include <cstdint>
#include <vector>

namespace rootclust {

/// What happened to a processed box (kept for optional plotting).
enum class BoxOutcome { Discarded, Subdivided, Emitted, Skipped, Absorbed };

struct PlotBox {
    Box box;
    BoxOutcome outcome;
};

/// Instrumentation accumulated across one solve. Everything here is
/// observational; no algorithmic decision reads it.
struct SolveStats {
    long boxes_processed = 0;      // subdivision tree size
    int max_depth = 0;             // subdivision tree depth
    long counting_calls = 0;       // T* invocations
    int64_t degree_weighted_cost = 0;  // sum of tested-polynomial degrees over T* calls
    int max_refine_prec = 0;       // highest 2^-L refinement target requested
    std::vector<int> refine_requests;  // every refinement target, in order
    long negative_boxes_tested = 0;    // counting tests on imaginary-negative boxes
    long negative_boxes_skipped = 0;   // boxes dropped by the conjugate-symmetry rule
    double t_total = 0;            // seconds
    double t_oracle_q = 0;         // cumulative deflated-oracle construction
    double t_refine = 0;           // cumulative cluster refinement
    double t_ps_to_coeffs = 0;     // cumulative power-sum -> coefficient conversion
    std::vector<PlotBox>* box_log = nullptr;  // optional, owned by the caller

    void merge_phase_times(const SolveStats& o) {
        t_oracle_q += o.t_oracle_q;
        t_refine += o.t_refine;
        t_ps_to_coeffs += o.t_ps_to_coeffs;
    }
};

}  // namespace rootclust
