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

#ifndef SWHBF_RXBEAM_HPP
#define SWHBF_RXBEAM_HPP

#include "numkernel.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace swhbf
{

// Binary n_rx x n_rf switch matrix. Entries are stored column-major, so bit i is entry (i % rows, i / rows);
// this is the vectorisation used by the search algorithms.
class AnalogCombiner
{
  public:
    AnalogCombiner() = default;
    AnalogCombiner(int rows, int cols) : rows_(rows), cols_(cols), bits_(static_cast<std::size_t>(rows * cols), 0)
    {
        if (rows < 1 || cols < 1)
            throw InvalidInputError("AnalogCombiner: dimensions must be >= 1");
    }

    static AnalogCombiner from_bits(int rows, int cols, std::vector<std::uint8_t> bits)
    {
        AnalogCombiner w(rows, cols);
        if (bits.size() != w.bits_.size())
            throw InvalidInputError("AnalogCombiner: bit vector length mismatch");
        for (auto b : bits)
            if (b > 1)
                throw InvalidInputError("AnalogCombiner: entries must be 0 or 1");
        w.bits_ = std::move(bits);
        return w;
    }

    // Bit i of `mask` becomes vectorised entry i.
    static AnalogCombiner from_mask(int rows, int cols, std::uint64_t mask)
    {
        AnalogCombiner w(rows, cols);
        if (w.size() > 64)
            throw InvalidInputError("AnalogCombiner: mask form limited to 64 entries");
        for (int i = 0; i < w.size(); ++i)
            w.bits_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((mask >> i) & 1U);
        return w;
    }

    static AnalogCombiner from_matrix(const RealMatrix &m)
    {
        AnalogCombiner w(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            for (Eigen::Index r = 0; r < m.rows(); ++r)
            {
                const double v = m(r, c);
                if (v != 0.0 && v != 1.0)
                    throw InvalidInputError("AnalogCombiner: entries must be 0 or 1");
                w.set(static_cast<int>(r), static_cast<int>(c), v == 1.0);
            }
        return w;
    }

    static AnalogCombiner all_ones(int rows, int cols)
    {
        AnalogCombiner w(rows, cols);
        std::fill(w.bits_.begin(), w.bits_.end(), std::uint8_t{1});
        return w;
    }

    // First `n_unit` columns are the distinct unit vectors e_0, e_1, ...; remaining columns are zero.
    static AnalogCombiner identity_pattern(int rows, int cols, int n_unit)
    {
        AnalogCombiner w(rows, cols);
        for (int j = 0; j < std::min({n_unit, cols, rows}); ++j)
            w.set(j, j, true);
        return w;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int size() const { return rows_ * cols_; }

    bool operator()(int r, int c) const { return bits_[index(r, c)] != 0; }
    void set(int r, int c, bool v) { bits_[index(r, c)] = v ? 1 : 0; }

    bool bit(int i) const { return bits_[static_cast<std::size_t>(i)] != 0; }
    void flip(int i) { bits_[static_cast<std::size_t>(i)] ^= 1U; }
    std::span<const std::uint8_t> bits() const { return bits_; }

    // Hashable identity of the vectorised matrix.
    std::string key() const { return std::string(bits_.begin(), bits_.end()); }

    RealMatrix to_real() const
    {
        RealMatrix m(rows_, cols_);
        for (int c = 0; c < cols_; ++c)
            for (int r = 0; r < rows_; ++r)
                m(r, c) = (*this)(r, c) ? 1.0 : 0.0;
        return m;
    }
    ComplexMatrix to_complex() const { return to_real().cast<cdouble>(); }

    int rank() const { return numerical_rank(to_real()); }
    bool feasible(int n_streams) const { return rank() >= n_streams; }

    friend bool operator==(const AnalogCombiner &, const AnalogCombiner &) = default;

  private:
    std::size_t index(int r, int c) const { return static_cast<std::size_t>(c * rows_ + r); }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::uint8_t> bits_;
};

// The K receive-side covariances Ftilde_k = H_k F_k F_k^H H_k^H, held in factored form Ftilde_k = G_k G_k^H.
class EffectiveCovarianceSet
{
  public:
    EffectiveCovarianceSet() = default;

    static EffectiveCovarianceSet from_factors(std::vector<ComplexMatrix> factors)
    {
        EffectiveCovarianceSet s;
        if (factors.empty())
            throw InvalidInputError("EffectiveCovarianceSet: no subcarriers");
        const Eigen::Index n = factors.front().rows();
        Eigen::Index total = 0;
        for (const auto &g : factors)
        {
            if (g.rows() != n)
                throw InvalidInputError("EffectiveCovarianceSet: inconsistent antenna count");
            s.offsets_.push_back(total);
            total += g.cols();
        }
        s.offsets_.push_back(total);
        s.stacked_.resize(n, total);
        for (std::size_t k = 0; k < factors.size(); ++k)
            s.stacked_.middleCols(s.offsets_[k], factors[k].cols()) = factors[k];
        s.factors_ = std::move(factors);
        return s;
    }

    // Ftilde_k = (H_k F_k)(H_k F_k)^H.
    static EffectiveCovarianceSet from_channels(std::span<const ComplexMatrix> channels,
                                                std::span<const ComplexMatrix> precoders)
    {
        if (channels.size() != precoders.size())
            throw InvalidInputError("effective_covariances: channel/precoder count mismatch");
        std::vector<ComplexMatrix> g;
        g.reserve(channels.size());
        for (std::size_t k = 0; k < channels.size(); ++k)
        {
            if (channels[k].cols() != precoders[k].rows())
                throw InvalidInputError("effective_covariances: H_k F_k dimension mismatch");
            g.push_back(channels[k] * precoders[k]);
        }
        return from_factors(std::move(g));
    }

    // Hermitian PSD matrices given directly; factored through their eigendecomposition.
    static EffectiveCovarianceSet from_matrices(std::span<const ComplexMatrix> mats)
    {
        std::vector<ComplexMatrix> g;
        for (const auto &M : mats)
        {
            if (M.rows() != M.cols())
                throw InvalidInputError("EffectiveCovarianceSet: matrices must be square");
            const double norm = M.norm();
            if ((M - M.adjoint()).norm() > 1e-9 * std::max(1.0, norm))
                throw NotPsdError("EffectiveCovarianceSet: matrix is not Hermitian");
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (M + M.adjoint()));
            const RealVector &lambda = eig.eigenvalues();
            std::vector<Eigen::Index> keep;
            for (Eigen::Index i = lambda.size() - 1; i >= 0; --i)
            {
                if (lambda(i) < -1e-8 * norm)
                    throw NotPsdError("EffectiveCovarianceSet: matrix is not PSD");
                if (lambda(i) > 1e-14 * norm)
                    keep.push_back(i);
            }
            ComplexMatrix G(M.rows(), static_cast<Eigen::Index>(keep.size()));
            for (std::size_t j = 0; j < keep.size(); ++j)
                G.col(static_cast<Eigen::Index>(j)) = eig.eigenvectors().col(keep[j]) * std::sqrt(lambda(keep[j]));
            g.push_back(std::move(G));
        }
        return from_factors(std::move(g));
    }

    int subcarriers() const { return static_cast<int>(factors_.size()); }
    int antennas() const { return static_cast<int>(stacked_.rows()); }
    const ComplexMatrix &factor(int k) const { return factors_[static_cast<std::size_t>(k)]; }
    const ComplexMatrix &stacked_factors() const { return stacked_; }
    Eigen::Index offset(int k) const { return offsets_[static_cast<std::size_t>(k)]; }

    ComplexMatrix matrix(int k) const
    {
        const auto &g = factor(k);
        return g * g.adjoint();
    }
    std::vector<ComplexMatrix> matrices() const
    {
        std::vector<ComplexMatrix> out;
        for (int k = 0; k < subcarriers(); ++k)
            out.push_back(matrix(k));
        return out;
    }

  private:
    std::vector<ComplexMatrix> factors_;
    ComplexMatrix stacked_;              // [G_1, ..., G_K]
    std::vector<Eigen::Index> offsets_;  // column offsets into stacked_, K + 1 entries
};

inline EffectiveCovarianceSet effective_covariances(std::span<const ComplexMatrix> channels,
                                                    std::span<const ComplexMatrix> precoders)
{
    return EffectiveCovarianceSet::from_channels(channels, precoders);
}

// (1/K) sum_k log2 det(I + W^+ Ftilde_k W / noise).
// Evaluated as log2 det(I + Q^H Ftilde_k Q / noise) with Q an orthonormal basis of range(W): W W^+ is the
// orthogonal projector Q Q^H, and det(I + W^+ A W) = det(I + A W W^+).
inline double analog_objective(const ComplexMatrix &w, const EffectiveCovarianceSet &cov, double noise)
{
    if (w.rows() != cov.antennas())
        throw InvalidInputError("analog_objective: combiner rows do not match antenna count");
    const ComplexMatrix Q = column_space_basis(w);
    if (Q.cols() == 0)
        return 0.0;
    const ComplexMatrix X = Q.adjoint() * cov.stacked_factors();
    const double scale = 1.0 / noise;
    double acc = 0.0;
    for (int k = 0; k < cov.subcarriers(); ++k)
    {
        const Eigen::Index m = cov.offset(k + 1) - cov.offset(k);
        acc += detail::logdet2_eye_plus_gram(X.middleCols(cov.offset(k), m), scale);
    }
    return acc / cov.subcarriers();
}

inline double analog_objective(const RealMatrix &w, const EffectiveCovarianceSet &cov, double noise)
{
    return analog_objective(ComplexMatrix(w.cast<cdouble>()), cov, noise);
}

inline double analog_objective(const AnalogCombiner &w, const EffectiveCovarianceSet &cov, double noise)
{
    return analog_objective(w.to_complex(), cov, noise);
}

struct DigitalCombiner
{
    ComplexMatrix matrix;    // n_rf x n_streams
    bool used_pinv = false;  // W_RF^H W_RF was singular
};

// W_BB = (J J^H + noise W^H W)^{-1} J with J = W^H H F.
inline DigitalCombiner mmse_digital_combiner(const ComplexMatrix &w_rf, const ComplexMatrix &h, const ComplexMatrix &f,
                                             double noise)
{
    if (w_rf.rows() != h.rows() || h.cols() != f.rows())
        throw InvalidInputError("mmse_digital_combiner: dimension mismatch");
    const ComplexMatrix J = w_rf.adjoint() * h * f;
    ComplexMatrix A = J * J.adjoint();
    A.noalias() += noise * (w_rf.adjoint() * w_rf);

    DigitalCombiner out;
    if (numerical_rank(w_rf) < w_rf.cols())
    {
        out.matrix = pinv(A) * J;
        out.used_pinv = true;
    }
    else
    {
        out.matrix = A.ldlt().solve(J);
    }
    return out;
}

inline DigitalCombiner mmse_digital_combiner(const AnalogCombiner &w_rf, const ComplexMatrix &h, const ComplexMatrix &f,
                                             double noise)
{
    return mmse_digital_combiner(w_rf.to_complex(), h, f, noise);
}

// (1/K) sum_k log2 det(I + W_k^+ Ftilde_k W_k / noise) with W_k = W_RF W_BB[k], evaluated literally.
inline double system_spectral_efficiency(const ComplexMatrix &w_rf, std::span<const ComplexMatrix> w_bb,
                                         std::span<const ComplexMatrix> channels,
                                         std::span<const ComplexMatrix> precoders, double noise)
{
    const std::size_t K = channels.size();
    if (w_bb.size() != K || precoders.size() != K)
        throw InvalidInputError("system_spectral_efficiency: list length mismatch");
    if (K == 0)
        return 0.0;
    double acc = 0.0;
    for (std::size_t k = 0; k < K; ++k)
    {
        const ComplexMatrix Wk = w_rf * w_bb[k];
        const ComplexMatrix G = channels[k] * precoders[k];
        const ComplexMatrix M = pinv(Wk) * G * (G.adjoint() * Wk);
        const ComplexMatrix A = ComplexMatrix::Identity(M.rows(), M.cols()) + M / noise;
        acc += detail::log2_abs_det(A);
    }
    return std::max(0.0, acc / static_cast<double>(K));
}

// End-to-end SE of an analog combiner followed by the per-subcarrier MMSE digital stage.
inline double hybrid_spectral_efficiency(const ComplexMatrix &w_rf, std::span<const ComplexMatrix> channels,
                                         std::span<const ComplexMatrix> precoders, double noise)
{
    std::vector<ComplexMatrix> w_bb;
    w_bb.reserve(channels.size());
    for (std::size_t k = 0; k < channels.size(); ++k)
        w_bb.push_back(mmse_digital_combiner(w_rf, channels[k], precoders[k], noise).matrix);
    return system_spectral_efficiency(w_rf, w_bb, channels, precoders, noise);
}

} // namespace swhbf

#endif
