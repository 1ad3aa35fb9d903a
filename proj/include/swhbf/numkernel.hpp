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

#ifndef SWHBF_NUMKERNEL_HPP
#define SWHBF_NUMKERNEL_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace swhbf
{

using cdouble = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// ---------- Errors ----------

struct InvalidInputError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

struct NotPsdError : std::domain_error
{
    using std::domain_error::domain_error;
};

// Relative tolerance used for rank decisions and pseudo-inverses throughout the library.
inline constexpr double default_rank_tol = 1e-8;

struct SvdResult
{
    ComplexMatrix U; // rows(A) x min(rows, cols), orthonormal columns
    RealVector s;    // descending
    ComplexMatrix V; // cols(A) x min(rows, cols), orthonormal columns
};

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived> &A)
{
    return A.allFinite();
}

// Thin SVD, A = U * diag(s) * V^H.
inline SvdResult svd(const ComplexMatrix &A)
{
    if (A.size() == 0)
        throw InvalidInputError("svd: empty matrix");
    if (!all_finite(A))
        throw InvalidInputError("svd: matrix contains non-finite entries");

    Eigen::JacobiSVD<ComplexMatrix> solver(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    // Eigen already returns singular values in decreasing order.
    return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

inline RealVector singular_values(const ComplexMatrix &A)
{
    if (A.size() == 0)
        return RealVector();
    if (!all_finite(A))
        throw InvalidInputError("singular_values: matrix contains non-finite entries");
    return Eigen::JacobiSVD<ComplexMatrix>(A).singularValues();
}

// Number of singular values above tol * max(s). The zero matrix has rank 0.
inline int numerical_rank(const ComplexMatrix &A, double tol = default_rank_tol)
{
    if (!(tol > 0.0))
        throw InvalidInputError("numerical_rank: tol must be positive");
    const RealVector s = singular_values(A);
    if (s.size() == 0 || s(0) == 0.0)
        return 0;
    const double cut = tol * s(0);
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut)
            ++r;
    return r;
}

inline int numerical_rank(const RealMatrix &A, double tol = default_rank_tol)
{
    return numerical_rank(ComplexMatrix(A.cast<cdouble>()), tol);
}

// Moore-Penrose pseudo-inverse. Singular values <= tol * max(s) are treated as zero.
inline ComplexMatrix pinv(const ComplexMatrix &A, double tol = default_rank_tol)
{
    if (tol < 0.0)
        throw InvalidInputError("pinv: tol must be non-negative");
    ComplexMatrix out = ComplexMatrix::Zero(A.cols(), A.rows());
    if (A.size() == 0)
        return out;
    const SvdResult d = svd(A);
    if (d.s.size() == 0 || d.s(0) == 0.0)
        return out;
    const double cut = tol * d.s(0);
    for (Eigen::Index i = 0; i < d.s.size(); ++i)
    {
        if (d.s(i) > cut)
            out.noalias() += d.V.col(i) * (1.0 / d.s(i)) * d.U.col(i).adjoint();
    }
    return out;
}

// Orthonormal basis of the column space of A (columns of U with s > tol * max(s)).
// Returns a rows(A) x 0 matrix for the zero matrix.
inline ComplexMatrix column_space_basis(const ComplexMatrix &A, double tol = default_rank_tol)
{
    const SvdResult d = svd(A);
    if (d.s.size() == 0 || d.s(0) == 0.0)
        return ComplexMatrix(A.rows(), 0);
    const double cut = tol * d.s(0);
    Eigen::Index r = 0;
    while (r < d.s.size() && d.s(r) > cut)
        ++r;
    return d.U.leftCols(r);
}

// log2 det(I + scale * M) for Hermitian PSD M, computed from the eigenvalues of M.
inline double logdet2_eye_plus(const ComplexMatrix &M, double scale)
{
    if (M.rows() != M.cols())
        throw InvalidInputError("logdet2_eye_plus: matrix must be square");
    if (!(scale > 0.0))
        throw InvalidInputError("logdet2_eye_plus: scale must be positive");
    if (M.size() == 0)
        return 0.0;
    if (!all_finite(M))
        throw InvalidInputError("logdet2_eye_plus: matrix contains non-finite entries");

    const double norm = M.norm();
    const double asym = (M - M.adjoint()).norm();
    if (asym > 1e-9 * std::max(1.0, norm))
        throw NotPsdError("logdet2_eye_plus: matrix is not Hermitian (asymmetry " + std::to_string(asym) + ")");

    const ComplexMatrix H = 0.5 * (M + M.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(H, Eigen::EigenvaluesOnly);
    const RealVector &lambda = eig.eigenvalues();

    double acc = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
    {
        const double l = lambda(i);
        if (l < -1e-8 * norm)
            throw NotPsdError("logdet2_eye_plus: negative eigenvalue " + std::to_string(l));
        acc += std::log1p(scale * std::max(l, 0.0));
    }
    return acc / std::numbers::ln2;
}

namespace detail
{
// Cholesky-based log2 det(I + scale * G^H G) for the hot loops. No input checks.
inline double logdet2_eye_plus_gram(const ComplexMatrix &G, double scale)
{
    const Eigen::Index n = G.cols();
    if (n == 0)
        return 0.0;
    ComplexMatrix A = ComplexMatrix::Identity(n, n);
    A.noalias() += scale * (G.adjoint() * G);
    Eigen::LLT<ComplexMatrix> llt(A);
    const auto &L = llt.matrixLLT();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        acc += std::log(L(i, i).real());
    return 2.0 * acc / std::numbers::ln2;
}

// log2 |det(A)| via partial-pivot LU, for general square A.
inline double log2_abs_det(const ComplexMatrix &A)
{
    if (A.size() == 0)
        return 0.0;
    Eigen::PartialPivLU<ComplexMatrix> lu(A);
    const auto &LU = lu.matrixLU();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < LU.rows(); ++i)
        acc += std::log(std::abs(LU(i, i)));
    return acc / std::numbers::ln2;
}
} // namespace detail

} // namespace swhbf

#endif
