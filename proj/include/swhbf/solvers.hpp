// SPDX-License-Identifier: Apache-2.0
//
// swhbf - switch-based hybrid beamforming for wideband multi-carrier receivers
// Copyright (C) 2026 The swhbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SWHBF_SOLVERS_HPP
#define SWHBF_SOLVERS_HPP

#include "numkernel.hpp"
#include "rxbeam.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace swhbf
{

struct DimensionGuardError : std::length_error
{
    using std::length_error::length_error;
};

// Largest n_rx * n_rf for which exhaustive enumeration is allowed.
inline constexpr int exhaustive_max_bits = 20;

struct TabuConfig
{
    int list_length = 80;      // tabu list size
    int max_iterations = 160;  // N_iter
    int stall_limit = 16;      // iterations without incumbent improvement before stopping

    // L = 10 n_rx, N_iter = 10 n_rx n_rf, stall = n_rx n_rf.
    static TabuConfig defaults(int n_rx, int n_rf)
    {
        return {10 * n_rx, 10 * n_rx * n_rf, n_rx * n_rf};
    }

    void validate() const
    {
        if (list_length < 1)
            throw InvalidInputError("TabuConfig: list_length must be >= 1");
        if (max_iterations < 1)
            throw InvalidInputError("TabuConfig: max_iterations must be >= 1");
        if (stall_limit < 1)
            throw InvalidInputError("TabuConfig: stall_limit must be >= 1");
    }
};

struct PgaConfig
{
    double step_scale = 1.0;       // c in alpha = c / sqrt(i + 1)
    int max_iterations = 500;
    double convergence_tol = 1e-6; // relative objective change

    void validate() const
    {
        if (!(step_scale > 0.0))
            throw InvalidInputError("PgaConfig: step_scale must be positive");
        if (!(convergence_tol > 0.0))
            throw InvalidInputError("PgaConfig: convergence_tol must be positive");
        if (max_iterations < 1)
            throw InvalidInputError("PgaConfig: max_iterations must be >= 1");
    }
};

struct SolveResult
{
    AnalogCombiner combiner;
    double objective = 0.0;
    std::vector<double> trajectory; // best objective after each iteration
    long evaluations = 0;           // objective calls
    long enumerated = 0;            // candidates visited by exhaustive search
};

namespace detail
{
// Objective values that differ by less than this (relative) count as ties.
inline bool improves(double candidate, double reference)
{
    return candidate > reference + 1e-12 * std::max(1.0, std::abs(reference));
}

// Rank check and objective of a binary combiner from a single real SVD.
class BinaryEvaluator
{
  public:
    BinaryEvaluator(const EffectiveCovarianceSet &cov, double noise, int n_streams)
        : cov_(cov), scale_(1.0 / noise), n_streams_(n_streams)
    {
    }

    int rank(const AnalogCombiner &w) const { return numerical_rank(w.to_real()); }
    bool feasible(const AnalogCombiner &w) const { return rank(w) >= n_streams_; }

    // nullopt when rank(w) < n_streams.
    std::optional<double> evaluate(const AnalogCombiner &w)
    {
        const RealMatrix m = w.to_real();
        Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeThinU);
        const RealVector &s = svd.singularValues();
        int r = 0;
        if (s.size() > 0 && s(0) > 0.0)
            while (r < s.size() && s(r) > default_rank_tol * s(0))
                ++r;
        if (r < n_streams_)
            return std::nullopt;
        ++calls_;
        if (r == 0)
            return 0.0;
        const ComplexMatrix Q = svd.matrixU().leftCols(r).cast<cdouble>();
        const ComplexMatrix X = Q.adjoint() * cov_.stacked_factors();
        double acc = 0.0;
        for (int k = 0; k < cov_.subcarriers(); ++k)
        {
            const Eigen::Index cols = cov_.offset(k + 1) - cov_.offset(k);
            acc += logdet2_eye_plus_gram(X.middleCols(cov_.offset(k), cols), scale_);
        }
        return acc / cov_.subcarriers();
    }

    long calls() const { return calls_; }
    int n_streams() const { return n_streams_; }

  private:
    const EffectiveCovarianceSet &cov_;
    double scale_;
    int n_streams_;
    long calls_ = 0;
};
} // namespace detail

// All feasible single-flip neighbours of w, in ascending flip index.
inline std::vector<AnalogCombiner> neighbors(const AnalogCombiner &w, int n_streams)
{
    std::vector<AnalogCombiner> out;
    for (int i = 0; i < w.size(); ++i)
    {
        AnalogCombiner c = w;
        c.flip(i);
        if (c.feasible(n_streams))
            out.push_back(std::move(c));
    }
    return out;
}

// Start point used when no warm start is supplied: all-ones for a single stream, otherwise distinct unit columns.
inline AnalogCombiner default_tabu_start(int n_rx, int n_rf, int n_streams)
{
    if (n_streams == 1)
        return AnalogCombiner::all_ones(n_rx, n_rf);
    return AnalogCombiner::identity_pattern(n_rx, n_rf, n_rf);
}

// Tabu search over binary combiners. Each step scans the non-tabu feasible neighbours of the current candidate,
// moves to the best one that strictly improves on it (lowest flip index among ties), updates the incumbent, and
// appends the candidate to a FIFO tabu list of bounded length. The run stops after max_iterations steps, after
// stall_limit steps without incumbent improvement, when no admissible move exists, or when the evaluation
// budget max_iterations * n_rx * n_rf is spent.
class TabuSearch
{
  public:
    TabuSearch(const EffectiveCovarianceSet &cov, double noise, int n_streams, AnalogCombiner w0, TabuConfig cfg)
        : eval_(cov, noise, n_streams), cfg_(cfg), current_(std::move(w0))
    {
        cfg_.validate();
        if (current_.rows() != cov.antennas())
            throw InvalidInputError("tabu_search: start point has wrong number of rows");
        budget_ = static_cast<long>(cfg_.max_iterations) * current_.size();
        const auto f0 = eval_.evaluate(current_);
        if (!f0)
            throw InvalidInputError("tabu_search: start point violates rank >= n_streams");
        current_value_ = *f0;
        incumbent_ = current_;
        incumbent_value_ = current_value_;
        push_tabu(current_);
    }

    // One iteration. Returns false once the search has stopped.
    bool step()
    {
        if (done_)
            return false;
        if (iteration_ >= cfg_.max_iterations)
        {
            done_ = true;
            return false;
        }

        int best_flip = -1;
        double best_value = current_value_;
        for (int i = 0; i < current_.size(); ++i)
        {
            if (eval_.calls() >= budget_)
                break;
            AnalogCombiner cand = current_;
            cand.flip(i);
            if (is_tabu(cand))
                continue;
            const auto v = eval_.evaluate(cand);
            if (v && detail::improves(*v, best_value))
            {
                best_value = *v;
                best_flip = i;
            }
        }

        const bool moved = best_flip >= 0;
        if (moved)
        {
            current_.flip(best_flip);
            current_value_ = best_value;
        }
        if (detail::improves(current_value_, incumbent_value_))
        {
            incumbent_ = current_;
            incumbent_value_ = current_value_;
            stall_ = 0;
        }
        else
        {
            ++stall_;
        }
        push_tabu(current_);
        ++iteration_;
        trajectory_.push_back(incumbent_value_);

        if (!moved || stall_ >= cfg_.stall_limit || iteration_ >= cfg_.max_iterations || eval_.calls() >= budget_)
            done_ = true;
        return true;
    }

    SolveResult run()
    {
        while (step())
        {
        }
        return result();
    }

    SolveResult result() const
    {
        SolveResult r;
        r.combiner = incumbent_;
        r.objective = incumbent_value_;
        r.trajectory = trajectory_;
        if (r.trajectory.empty())
            r.trajectory.push_back(incumbent_value_);
        r.evaluations = eval_.calls();
        return r;
    }

    const AnalogCombiner &current() const { return current_; }
    double current_value() const { return current_value_; }
    const AnalogCombiner &incumbent() const { return incumbent_; }
    double incumbent_value() const { return incumbent_value_; }
    const std::deque<AnalogCombiner> &tabu_list() const { return tabu_; }
    bool is_tabu(const AnalogCombiner &w) const { return tabu_count_.contains(w.key()); }
    int iteration() const { return iteration_; }
    bool done() const { return done_; }
    long evaluations() const { return eval_.calls(); }

  private:
    void push_tabu(const AnalogCombiner &w)
    {
        tabu_.push_back(w);
        ++tabu_count_[w.key()];
        if (static_cast<int>(tabu_.size()) > cfg_.list_length)
        {
            const std::string old = tabu_.front().key();
            tabu_.pop_front();
            if (--tabu_count_[old] == 0)
                tabu_count_.erase(old);
        }
    }

    detail::BinaryEvaluator eval_;
    TabuConfig cfg_;
    long budget_ = 0;

    AnalogCombiner current_;
    double current_value_ = 0.0;
    AnalogCombiner incumbent_;
    double incumbent_value_ = 0.0;

    std::deque<AnalogCombiner> tabu_;
    std::unordered_map<std::string, int> tabu_count_;

    std::vector<double> trajectory_;
    int iteration_ = 0;
    int stall_ = 0;
    bool done_ = false;
};

inline SolveResult tabu_search(const EffectiveCovarianceSet &cov, double noise, int n_streams, const AnalogCombiner &w0,
                               const TabuConfig &cfg)
{
    return TabuSearch(cov, noise, n_streams, w0, cfg).run();
}

// ---------- Box relaxation ----------

// Gradient of the relaxed objective with respect to the real entries of W.
// With C_k = noise I + Ftilde_k the objective is (1/K) sum_k [log2 det(W^T C_k W) - log2 det(W^T W)] - n_rf log2(noise),
// whose gradient is (2 / (K ln 2)) sum_k [Re(C_k W (W^T C_k W)^{-1}) - W (W^T W)^{-1}].
inline RealMatrix relaxed_gradient(const RealMatrix &w_in, const EffectiveCovarianceSet &cov, double noise)
{
    if (w_in.rows() != cov.antennas())
        throw InvalidInputError("relaxed_gradient: combiner rows do not match antenna count");
    RealMatrix w = w_in;
    const Eigen::Index n_rf = w.cols();
    if (n_rf > w.rows())
        throw InvalidInputError("relaxed_gradient: more RF chains than antennas");
    for (int shift = 0; numerical_rank(w) < n_rf && shift < w.rows(); ++shift)
    {
        // Degenerate point: nudge by a shifted identity pattern until W has full column rank.
        for (Eigen::Index j = 0; j < n_rf; ++j)
            w((j + shift) % w.rows(), j) += 1e-9;
    }

    const ComplexMatrix wc = w.cast<cdouble>();
    const RealMatrix gram = w.transpose() * w;
    const RealMatrix base = w * gram.ldlt().solve(RealMatrix::Identity(n_rf, n_rf));

    RealMatrix grad = RealMatrix::Zero(w.rows(), n_rf);
    for (int k = 0; k < cov.subcarriers(); ++k)
    {
        const ComplexMatrix &G = cov.factor(k);
        ComplexMatrix cw = noise * wc;
        cw.noalias() += G * (G.adjoint() * wc);
        const ComplexMatrix X = wc.adjoint() * cw;
        // C W X^{-1} = (X^{-1} (C W)^H)^H since X is Hermitian.
        const ComplexMatrix term = X.ldlt().solve(cw.adjoint()).adjoint();
        grad += term.real() - base;
    }
    return grad * (2.0 / (cov.subcarriers() * std::numbers::ln2));
}

struct PgaResult
{
    RealMatrix w;
    double objective = 0.0;
    int iterations = 0;
    long evaluations = 0;
};

// Projected gradient ascent on [0,1]^{n_rx x n_rf} with step c / sqrt(i + 1). Returns the best iterate seen.
inline PgaResult pga_relaxed(const EffectiveCovarianceSet &cov, double noise, const RealMatrix &w_init,
                             const PgaConfig &cfg)
{
    cfg.validate();
    if ((w_init.array() < 0.0).any() || (w_init.array() > 1.0).any())
        throw InvalidInputError("pga_relaxed: initial point outside [0,1]");

    PgaResult out;
    RealMatrix w = w_init;
    double f_prev = analog_objective(w, cov, noise);
    ++out.evaluations;
    out.w = w;
    out.objective = f_prev;

    for (int i = 1; i <= cfg.max_iterations; ++i)
    {
        const double alpha = cfg.step_scale / std::sqrt(i + 1.0);
        w = (w + alpha * relaxed_gradient(w, cov, noise)).cwiseMax(0.0).cwiseMin(1.0);
        const double f = analog_objective(w, cov, noise);
        ++out.evaluations;
        out.iterations = i;
        if (f > out.objective)
        {
            out.objective = f;
            out.w = w;
        }
        if (std::abs(f - f_prev) < cfg.convergence_tol * std::max(std::abs(f_prev), 1e-300))
            break;
        f_prev = f;
    }
    return out;
}

// Round at 0.5; if rank < n_streams, flip entries in order of closeness of their relaxed value to 0.5 until feasible.
// Falls back to distinct unit columns if every flip has been tried.
inline AnalogCombiner round_and_repair(const RealMatrix &w_relaxed, int n_streams)
{
    const int rows = static_cast<int>(w_relaxed.rows());
    const int cols = static_cast<int>(w_relaxed.cols());
    AnalogCombiner w(rows, cols);
    std::vector<double> value(static_cast<std::size_t>(w.size()));
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r)
        {
            const double v = w_relaxed(r, c);
            value[static_cast<std::size_t>(c * rows + r)] = v;
            w.set(r, c, v > 0.5);
        }
    if (w.feasible(n_streams))
        return w;

    std::vector<int> order(static_cast<std::size_t>(w.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(value[static_cast<std::size_t>(a)] - 0.5) < std::abs(value[static_cast<std::size_t>(b)] - 0.5);
    });
    for (int i : order)
    {
        w.flip(i);
        if (w.feasible(n_streams))
            return w;
    }
    return AnalogCombiner::identity_pattern(rows, cols, n_streams);
}

// PGA on the relaxation from a uniform random interior start, rounding, then tabu search from the rounded point.
template <typename Rng>
SolveResult pga_aided_tabu(const EffectiveCovarianceSet &cov, double noise, int n_rf, int n_streams,
                           const TabuConfig &tabu_cfg, const PgaConfig &pga_cfg, Rng &rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RealMatrix w0(cov.antennas(), n_rf);
    for (Eigen::Index c = 0; c < w0.cols(); ++c)
        for (Eigen::Index r = 0; r < w0.rows(); ++r)
            w0(r, c) = unit(rng);
    const PgaResult relaxed = pga_relaxed(cov, noise, w0, pga_cfg);
    SolveResult res = tabu_search(cov, noise, n_streams, round_and_repair(relaxed.w, n_streams), tabu_cfg);
    res.evaluations += relaxed.evaluations;
    return res;
}

// Enumerates all 2^(n_rx n_rf) binary combiners; ties go to the lowest vectorised integer (bit i = entry i).
inline SolveResult exhaustive_search(const EffectiveCovarianceSet &cov, double noise, int n_rf, int n_streams)
{
    const int n_rx = cov.antennas();
    const int bits = n_rx * n_rf;
    if (bits > exhaustive_max_bits)
        throw DimensionGuardError("exhaustive_search: n_rx * n_rf = " + std::to_string(bits) + " exceeds " +
                                  std::to_string(exhaustive_max_bits));

    detail::BinaryEvaluator eval(cov, noise, n_streams);
    SolveResult res;
    bool found = false;
    const std::uint64_t count = std::uint64_t{1} << bits;
    for (std::uint64_t mask = 0; mask < count; ++mask)
    {
        ++res.enumerated;
        const AnalogCombiner w = AnalogCombiner::from_mask(n_rx, n_rf, mask);
        const auto v = eval.evaluate(w);
        if (!v)
            continue;
        if (!found || detail::improves(*v, res.objective))
        {
            res.combiner = w;
            res.objective = *v;
            found = true;
        }
    }
    if (!found)
        throw InvalidInputError("exhaustive_search: no combiner satisfies rank >= n_streams");
    res.evaluations = eval.calls();
    res.trajectory = {res.objective};
    return res;
}

// i.i.d. Bernoulli(1/2) entries, redrawn until rank >= n_streams.
template <typename Rng>
AnalogCombiner random_combiner(Rng &rng, int n_rx, int n_rf, int n_streams)
{
    std::bernoulli_distribution coin(0.5);
    for (int attempt = 0; attempt < 1000; ++attempt)
    {
        AnalogCombiner w(n_rx, n_rf);
        for (int c = 0; c < n_rf; ++c)
            for (int r = 0; r < n_rx; ++r)
                w.set(r, c, coin(rng));
        if (w.feasible(n_streams))
            return w;
    }
    throw InvalidInputError("random_combiner: 1000 consecutive draws violated rank >= n_streams");
}

// Phase-shifter reference: top n_rf left singular vectors of the centre-subcarrier channel, every entry
// projected to unit modulus.
inline ComplexMatrix ps_baseline_combiner(std::span<const ComplexMatrix> channels, int n_rf)
{
    if (channels.empty())
        throw InvalidInputError("ps_baseline_combiner: no channels");
    const std::size_t K = channels.size();
    const ComplexMatrix &Hc = channels[(K + 1) / 2 - 1];
    if (n_rf > Hc.rows())
        throw InvalidInputError("ps_baseline_combiner: n_rf exceeds antenna count");

    ComplexMatrix U;
    if (Hc.cols() >= n_rf)
    {
        U = svd(Hc).U.leftCols(n_rf);
    }
    else
    {
        Eigen::JacobiSVD<ComplexMatrix> full(Hc, Eigen::ComputeFullU);
        U = full.matrixU().leftCols(n_rf);
    }
    ComplexMatrix W(U.rows(), U.cols());
    for (Eigen::Index c = 0; c < U.cols(); ++c)
        for (Eigen::Index r = 0; r < U.rows(); ++r)
            W(r, c) = std::polar(1.0, std::arg(U(r, c)));
    return W;
}

} // namespace swhbf

#endif
