#include "mltc/smo.hpp"

#include <algorithm>
#include <cmath>

#include "mltc/errors.hpp"
#include "mltc/rng.hpp"

namespace mltc {

// ---- SparseRealVector ----

SparseRealVector SparseRealVector::from_binary(const SparseBinaryVector& v) {
    SparseRealVector out;
    out.indices = v.indices;
    out.values.assign(v.indices.size(), 1.0);
    out.dimension = v.dimension;
    return out;
}

SparseRealVector SparseRealVector::from_dense(const std::vector<double>& v) {
    SparseRealVector out;
    out.dimension = (int)v.size();
    for (int i = 0; i < out.dimension; ++i) {
        if (v[std::size_t(i)] != 0.0) {
            out.indices.push_back(i);
            out.values.push_back(v[std::size_t(i)]);
        }
    }
    return out;
}

double SparseRealVector::dot(const SparseRealVector& o) const {
    double sum = 0.0;
    std::size_t i = 0, j = 0;
    while (i < indices.size() && j < o.indices.size()) {
        if (indices[i] == o.indices[j]) {
            sum += values[i] * o.values[j];
            ++i, ++j;
        } else if (indices[i] < o.indices[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return sum;
}

double SparseRealVector::dot_dense(const std::vector<double>& w) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < indices.size(); ++k)
        sum += values[k] * w[std::size_t(indices[k])];
    return sum;
}

double SmoModel::decision(const SparseBinaryVector& x) const {
    double sum = bias;
    for (int idx : x.indices) sum += weight_vector[std::size_t(idx)];
    return sum;
}

// ---- solver ----

namespace {

// Working state of one solve. f(x) = w.x + b with w maintained incrementally
// (linear kernel only).
struct Solver {
    const std::vector<SparseRealVector>& x;
    const std::vector<int>& y;
    const std::vector<double>& box;
    const SmoParams& params;
    SmoTrace* trace;

    std::vector<double> alpha;
    std::vector<double> w;
    double b = 0.0;
    Rng rng;

    Solver(const std::vector<SparseRealVector>& x, const std::vector<int>& y,
           const std::vector<double>& box, const SmoParams& params, std::uint64_t seed,
           SmoTrace* trace)
        : x(x), y(y), box(box), params(params), trace(trace),
          alpha(x.size(), 0.0), w(std::size_t(x[0].dimension), 0.0), rng(seed) {}

    double f(std::size_t i) const { return x[i].dot_dense(w) + b; }
    double error(std::size_t i) const { return f(i) - double(y[i]); }
    bool non_bound(std::size_t i) const {
        return alpha[i] > 0.0 && alpha[i] < box[i];
    }

    double dual_objective() const {
        double sum_alpha = 0.0;
        for (double a : alpha) sum_alpha += a;
        double wnorm = 0.0;
        for (double v : w) wnorm += v * v;
        return sum_alpha - 0.5 * wnorm;
    }

    bool take_step(std::size_t i1, std::size_t i2, double e2) {
        if (i1 == i2) return false;
        const double a1_old = alpha[i1], a2_old = alpha[i2];
        const double c1 = box[i1], c2 = box[i2];
        const int s = y[i1] * y[i2];
        double lo, hi;
        if (s < 0) {
            lo = std::max(0.0, a2_old - a1_old);
            hi = std::min(c2, c1 + a2_old - a1_old);
        } else {
            lo = std::max(0.0, a1_old + a2_old - c1);
            hi = std::min(c2, a1_old + a2_old);
        }
        if (hi - lo < 1e-12) return false;

        const double e1 = error(i1);
        const double k11 = x[i1].dot(x[i1]);
        const double k22 = x[i2].dot(x[i2]);
        const double k12 = x[i1].dot(x[i2]);
        const double eta = k11 + k22 - 2.0 * k12;

        double a2_new;
        if (eta > 0.0) {
            a2_new = a2_old + double(y[i2]) * (e1 - e2) / eta;
            a2_new = std::clamp(a2_new, lo, hi);
        } else {
            // Flat or concave direction: evaluate the objective at both ends.
            const double f1 = double(y[i1]) * (e1 + b) - a1_old * k11 - s * a2_old * k12;
            const double f2 = double(y[i2]) * (e2 + b) - s * a1_old * k12 - a2_old * k22;
            const double l1 = a1_old + s * (a2_old - lo);
            const double h1 = a1_old + s * (a2_old - hi);
            const double obj_lo = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 +
                                  0.5 * lo * lo * k22 + s * lo * l1 * k12;
            const double obj_hi = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 +
                                  0.5 * hi * hi * k22 + s * hi * h1 * k12;
            if (obj_lo < obj_hi - 1e-12) a2_new = lo;
            else if (obj_lo > obj_hi + 1e-12) a2_new = hi;
            else return false;
        }
        if (std::abs(a2_new - a2_old) < 1e-12 * (a2_new + a2_old + 1e-12)) return false;

        const double a1_new = a1_old + s * (a2_old - a2_new);
        const double d1 = a1_new - a1_old, d2 = a2_new - a2_old;

        const double b1 = b - e1 - double(y[i1]) * d1 * k11 - double(y[i2]) * d2 * k12;
        const double b2 = b - e2 - double(y[i1]) * d1 * k12 - double(y[i2]) * d2 * k22;
        if (a1_new > 0.0 && a1_new < c1) b = b1;
        else if (a2_new > 0.0 && a2_new < c2) b = b2;
        else b = 0.5 * (b1 + b2);

        for (std::size_t k = 0; k < x[i1].indices.size(); ++k)
            w[std::size_t(x[i1].indices[k])] += double(y[i1]) * d1 * x[i1].values[k];
        for (std::size_t k = 0; k < x[i2].indices.size(); ++k)
            w[std::size_t(x[i2].indices[k])] += double(y[i2]) * d2 * x[i2].values[k];

        alpha[i1] = a1_new;
        alpha[i2] = a2_new;
        if (trace) trace->dual_objective.push_back(dual_objective());
        return true;
    }

    // Platt's examineExample: pick a partner for a KKT-violating i2.
    bool examine(std::size_t i2) {
        const double e2 = error(i2);
        const double r2 = e2 * double(y[i2]);
        const bool violates = (r2 < -params.tolerance && alpha[i2] < box[i2]) ||
                              (r2 > params.tolerance && alpha[i2] > 0.0);
        if (!violates) return false;

        const std::size_t n = x.size();
        // Second-choice heuristic: maximize |e1 - e2| over non-bound points.
        std::size_t best = n;
        double best_gap = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!non_bound(i)) continue;
            double gap = std::abs(error(i) - e2);
            if (gap > best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best < n && take_step(best, i2, e2)) return true;

        const std::size_t start = (std::size_t)rng.next_below(n ? n : 1);
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t i = (start + k) % n;
            if (non_bound(i) && take_step(i, i2, e2)) return true;
        }
        const std::size_t start2 = (std::size_t)rng.next_below(n ? n : 1);
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t i = (start2 + k) % n;
            if (take_step(i, i2, e2)) return true;
        }
        return false;
    }

    void run() {
        const std::size_t n = x.size();
        bool examine_all = true;
        int changed = 0;
        int sweeps = 0;
        while ((changed > 0 || examine_all) && sweeps < params.max_passes) {
            changed = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (examine_all || non_bound(i))
                    if (examine(i)) ++changed;
            }
            ++sweeps;
            if (examine_all) examine_all = false;
            else if (changed == 0) examine_all = true;
        }
    }
};

}  // namespace

SmoModel solve_smo(const std::vector<SparseRealVector>& x, const std::vector<int>& y,
                   const std::vector<double>& box, const SmoParams& params, std::uint64_t seed,
                   SmoTrace* trace) {
    if (params.c <= 0.0) throw ConfigError("smo: C must be positive");
    if (params.tolerance <= 0.0) throw ConfigError("smo: tolerance must be positive");
    if (params.max_passes < 1) throw ConfigError("smo: max_passes must be >= 1");
    if (x.empty() || x.size() != y.size() || x.size() != box.size())
        throw ConfigError("smo: inconsistent problem arrays");

    Solver solver(x, y, box, params, seed, trace);
    solver.run();

    // The pair updates preserve sum(alpha_i y_i) = 0 up to rounding.
    double drift = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) drift += solver.alpha[i] * double(y[i]);
    internal_check(std::abs(drift) <= 1e-8, "smo equality constraint drift");

    SmoModel model;
    model.alpha = std::move(solver.alpha);
    model.weight_vector = std::move(solver.w);
    model.bias = solver.b;
    return model;
}

}  // namespace mltc
