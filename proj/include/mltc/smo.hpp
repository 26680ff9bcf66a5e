#pragma once

#include <cstdint>
#include <vector>

#include "mltc/corpus.hpp"

namespace mltc {

// Sparse vector with real values. The SVM solver works on these so it can
// also be exercised on non-binary inputs; binary feature vectors convert
// with implicit value 1.
struct SparseRealVector {
    std::vector<int> indices;
    std::vector<double> values;
    int dimension = 0;

    static SparseRealVector from_binary(const SparseBinaryVector& v);
    static SparseRealVector from_dense(const std::vector<double>& v);

    double dot(const SparseRealVector& o) const;
    double dot_dense(const std::vector<double>& w) const;
};

struct SmoParams {
    double c = 1.0;
    double tolerance = 1e-3;
    int max_passes = 200;  // cap on sweeps over the working set
};

// Linear SVM state produced by the solver. The weight vector is the folded
// sum alpha_i y_i x_i, so prediction is a single sparse dot plus bias.
struct SmoModel {
    std::vector<double> alpha;
    std::vector<double> weight_vector;
    double bias = 0.0;

    double decision(const SparseBinaryVector& x) const;
};

// Dual objective value after each accepted pair update; for tests.
struct SmoTrace {
    std::vector<double> dual_objective;
};

// Sequential minimal optimization for the linear-kernel dual with
// per-instance box constraints 0 <= alpha_i <= box[i]. Instances with
// box[i] = 0 are inert. Deterministic under `seed`.
SmoModel solve_smo(const std::vector<SparseRealVector>& x, const std::vector<int>& y,
                   const std::vector<double>& box, const SmoParams& params, std::uint64_t seed,
                   SmoTrace* trace = nullptr);

}  // namespace mltc
