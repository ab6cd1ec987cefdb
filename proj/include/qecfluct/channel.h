// Copyright 2026 The qecfluct Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QECFLUCT_CHANNEL_H
#define QECFLUCT_CHANNEL_H

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qecfluct/error.h"

namespace qecfluct {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Tolerances shared by the channel checks.
inline constexpr double kCompletenessTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kUnitaryTol = 1e-10;

/// One-qubit channel in the normalized Pauli basis (I, X, Y, Z) / sqrt(2).
///
/// Entry (mu, nu) is Tr[sigma_mu^dag E(sigma_nu)]. Row 0 is (1, 0, 0, 0) for
/// trace-preserving maps; column 0 below the corner carries the non-unital
/// shift and the lower-right 3x3 block is the Bloch-vector map.
class PauliTransferMatrix {
   public:
    PauliTransferMatrix() : m_(Eigen::Matrix4d::Identity()) {
    }
    explicit PauliTransferMatrix(const Eigen::Matrix4d &m) : m_(m) {
    }

    static PauliTransferMatrix identity() {
        return PauliTransferMatrix();
    }
    static PauliTransferMatrix diagonal(double d0, double d1, double d2, double d3);

    const Eigen::Matrix4d &matrix() const {
        return m_;
    }
    double operator()(int row, int col) const {
        return m_(row, col);
    }
    double &operator()(int row, int col) {
        return m_(row, col);
    }

    /// Largest deviation of row 0 from (1, 0, 0, 0).
    double trace_preservation_residual() const;

    bool operator==(const PauliTransferMatrix &other) const = default;

   private:
    Eigen::Matrix4d m_;
};

/// Kraus representation of a CPTP map on d x d matrices.
class KrausSet {
   public:
    /// Throws kDimension when operators are not square or disagree in size.
    explicit KrausSet(std::vector<CMatrix> ops);

    const std::vector<CMatrix> &ops() const {
        return ops_;
    }
    int dim() const {
        return dim_;
    }
    size_t size() const {
        return ops_.size();
    }

    /// Frobenius norm of sum_m E_m^dag E_m - I.
    double completeness_residual() const;

    /// Applies rho -> sum_m E_m rho E_m^dag.
    CMatrix apply(const CMatrix &rho) const;

   private:
    std::vector<CMatrix> ops_;
    int dim_;
};

/// Choi matrix, normalized so that Tr chi = d.
class ChoiMatrix {
   public:
    explicit ChoiMatrix(CMatrix m);
    const CMatrix &matrix() const {
        return m_;
    }
    int dim() const {
        return dim_;
    }

   private:
    CMatrix m_;
    int dim_;
};

/// Natural (Liouville) superoperator acting on row-major vectorized operators.
class NaturalSuperOp {
   public:
    explicit NaturalSuperOp(CMatrix m);
    static NaturalSuperOp identity(int dim);

    const CMatrix &matrix() const {
        return m_;
    }
    int dim() const {
        return dim_;
    }
    CMatrix apply(const CMatrix &rho) const;

   private:
    CMatrix m_;
    int dim_;
};

/// Dense operator on q qubits. Tensor factor 0 is the most significant index.
class MultiQubitOperator {
   public:
    explicit MultiQubitOperator(CMatrix m);

    const CMatrix &matrix() const {
        return m_;
    }
    CMatrix &matrix() {
        return m_;
    }
    int num_qubits() const {
        return qubits_;
    }

   private:
    CMatrix m_;
    int qubits_;
};

/// Normalized Pauli matrix sigma_mu = P_mu / sqrt(2), mu in 0..3 for I, X, Y, Z.
const CMatrix &normalized_pauli(int mu);
/// Unnormalized Pauli matrix P_mu.
const CMatrix &pauli_matrix(int mu);

/// Row-major vectorization: component i*d + j is A(i, j).
CVector vectorize(const CMatrix &a);
CMatrix unvectorize(const CVector &v);

NaturalSuperOp kraus_to_natural(const KrausSet &k);
ChoiMatrix kraus_to_choi(const KrausSet &k);

/// Index permutation chi_{ab;cd} = lambda_{ac;bd}; an involution.
CMatrix reshuffle(const CMatrix &m);
NaturalSuperOp reshuffle(const ChoiMatrix &c);
ChoiMatrix reshuffle(const NaturalSuperOp &l);

/// Spectral decomposition; eigenvalues in [-kPsdTol, kPsdTol] are dropped and
/// anything below -kPsdTol raises kNotCptp.
KrausSet choi_to_kraus(const ChoiMatrix &c);

PauliTransferMatrix natural_to_ptm(const NaturalSuperOp &l);
NaturalSuperOp ptm_to_natural(const PauliTransferMatrix &p);

PauliTransferMatrix kraus_to_ptm(const KrausSet &k);
ChoiMatrix ptm_to_choi(const PauliTransferMatrix &p);

/// Smallest eigenvalue of the Hermitian part of the Choi matrix.
double min_choi_eigenvalue(const ChoiMatrix &c);
double min_choi_eigenvalue(const PauliTransferMatrix &p);
bool is_cptp(const PauliTransferMatrix &p, double tol = kPsdTol);

/// F = Tr[eta] / 4.
double channel_fidelity(const PauliTransferMatrix &p);

/// Affine combination; weights must be non-negative and sum to 1 within 1e-12.
PauliTransferMatrix convex_combine(std::span<const double> weights,
                                   std::span<const PauliTransferMatrix> ptms);

/// Channel composition: apply `first`, then `second`.
PauliTransferMatrix compose(const PauliTransferMatrix &second, const PauliTransferMatrix &first);

/// Returns U op U^dag. Throws on dimension mismatch or non-unitary U.
MultiQubitOperator apply_unitary(const MultiQubitOperator &op, const CMatrix &u);

/// Applies a one-qubit natural superoperator to tensor factor `qubit`.
MultiQubitOperator apply_channel_to_qubit(const MultiQubitOperator &op, int qubit,
                                          const NaturalSuperOp &channel);

/// Traces out the first q-1 factors and returns the 2x2 block of the last one.
CMatrix partial_trace_keep_last(const MultiQubitOperator &op);

}  // namespace qecfluct

#endif
