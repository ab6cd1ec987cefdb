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

#include "qecfluct/channel.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace qecfluct {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::kDimension:
            return "dimension error";
        case ErrorKind::kUnsupportedDimension:
            return "unsupported dimension";
        case ErrorKind::kInvalidArgument:
            return "invalid argument";
        case ErrorKind::kNotCptp:
            return "not CPTP";
        case ErrorKind::kNotCorrectable:
            return "error set not correctable";
        case ErrorKind::kInvalidCode:
            return "invalid code";
        case ErrorKind::kDomain:
            return "domain error";
        case ErrorKind::kGeneration:
            return "generation error";
        case ErrorKind::kNoThreshold:
            return "no threshold found";
        case ErrorKind::kIo:
            return "io error";
    }
    return "error";
}

namespace {

int checked_sqrt(Eigen::Index n, const char *what) {
    auto r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (static_cast<Eigen::Index>(r) * r != n) {
        throw Error(ErrorKind::kDimension, std::string(what) + " size " + std::to_string(n) + " is not a perfect square");
    }
    return r;
}

void require_square(const CMatrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorKind::kDimension, std::string(what) + " must be a non-empty square matrix, got " +
                                               std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

int qubit_count(Eigen::Index dim) {
    int q = 0;
    while ((Eigen::Index{1} << q) < dim) {
        ++q;
    }
    if ((Eigen::Index{1} << q) != dim) {
        throw Error(ErrorKind::kDimension, "dimension " + std::to_string(dim) + " is not a power of two");
    }
    return q;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

std::array<CMatrix, 4> make_paulis(double scale) {
    const Complex i{0.0, 1.0};
    std::array<CMatrix, 4> p;
    for (auto &m : p) {
        m = CMatrix::Zero(2, 2);
    }
    p[0](0, 0) = p[0](1, 1) = scale;
    p[1](0, 1) = p[1](1, 0) = scale;
    p[2](0, 1) = -i * scale;
    p[2](1, 0) = i * scale;
    p[3](0, 0) = scale;
    p[3](1, 1) = -scale;
    return p;
}

}  // namespace

PauliTransferMatrix PauliTransferMatrix::diagonal(double d0, double d1, double d2, double d3) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m.diagonal() << d0, d1, d2, d3;
    return PauliTransferMatrix(m);
}

double PauliTransferMatrix::trace_preservation_residual() const {
    return std::max({std::abs(m_(0, 0) - 1.0), std::abs(m_(0, 1)), std::abs(m_(0, 2)), std::abs(m_(0, 3))});
}

KrausSet::KrausSet(std::vector<CMatrix> ops) : ops_(std::move(ops)), dim_(0) {
    if (ops_.empty()) {
        throw Error(ErrorKind::kDimension, "Kraus set is empty");
    }
    for (const auto &e : ops_) {
        require_square(e, "Kraus operator");
        if (dim_ == 0) {
            dim_ = static_cast<int>(e.rows());
        } else if (e.rows() != dim_) {
            throw Error(ErrorKind::kDimension, "mismatched Kraus operator dimensions");
        }
    }
}

double KrausSet::completeness_residual() const {
    CMatrix s = CMatrix::Zero(dim_, dim_);
    for (const auto &e : ops_) {
        s += e.adjoint() * e;
    }
    return (s - CMatrix::Identity(dim_, dim_)).norm();
}

CMatrix KrausSet::apply(const CMatrix &rho) const {
    if (rho.rows() != dim_ || rho.cols() != dim_) {
        throw Error(ErrorKind::kDimension, "operator does not match Kraus dimension");
    }
    CMatrix out = CMatrix::Zero(dim_, dim_);
    for (const auto &e : ops_) {
        out += e * rho * e.adjoint();
    }
    return out;
}

ChoiMatrix::ChoiMatrix(CMatrix m) : m_(std::move(m)) {
    require_square(m_, "Choi matrix");
    dim_ = checked_sqrt(m_.rows(), "Choi matrix");
}

NaturalSuperOp::NaturalSuperOp(CMatrix m) : m_(std::move(m)) {
    require_square(m_, "natural superoperator");
    dim_ = checked_sqrt(m_.rows(), "natural superoperator");
}

NaturalSuperOp NaturalSuperOp::identity(int dim) {
    return NaturalSuperOp(CMatrix::Identity(dim * dim, dim * dim));
}

CMatrix NaturalSuperOp::apply(const CMatrix &rho) const {
    if (rho.rows() != dim_ || rho.cols() != dim_) {
        throw Error(ErrorKind::kDimension, "operator does not match superoperator dimension");
    }
    return unvectorize(m_ * vectorize(rho));
}

MultiQubitOperator::MultiQubitOperator(CMatrix m) : m_(std::move(m)) {
    require_square(m_, "multi-qubit operator");
    qubits_ = qubit_count(m_.rows());
}

const CMatrix &normalized_pauli(int mu) {
    if (mu < 0 || mu > 3) {
        throw Error(ErrorKind::kInvalidArgument, "Pauli index must be 0..3");
    }
    static const std::array<CMatrix, 4> paulis = make_paulis(1.0 / std::sqrt(2.0));
    return paulis.at(static_cast<size_t>(mu));
}

const CMatrix &pauli_matrix(int mu) {
    if (mu < 0 || mu > 3) {
        throw Error(ErrorKind::kInvalidArgument, "Pauli index must be 0..3");
    }
    static const std::array<CMatrix, 4> paulis = make_paulis(1.0);
    return paulis.at(static_cast<size_t>(mu));
}

CVector vectorize(const CMatrix &a) {
    require_square(a, "vectorize input");
    const auto d = a.rows();
    CVector v(d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            v(i * d + j) = a(i, j);
        }
    }
    return v;
}

CMatrix unvectorize(const CVector &v) {
    const int d = checked_sqrt(v.size(), "vector");
    CMatrix a(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            a(i, j) = v(i * d + j);
        }
    }
    return a;
}

NaturalSuperOp kraus_to_natural(const KrausSet &k) {
    const int d = k.dim();
    CMatrix l = CMatrix::Zero(d * d, d * d);
    for (const auto &e : k.ops()) {
        l += kron(e, e.conjugate());
    }
    return NaturalSuperOp(std::move(l));
}

ChoiMatrix kraus_to_choi(const KrausSet &k) {
    const int d = k.dim();
    CMatrix c = CMatrix::Zero(d * d, d * d);
    for (const auto &e : k.ops()) {
        CVector v = vectorize(e);
        c += v * v.adjoint();
    }
    return ChoiMatrix(std::move(c));
}

CMatrix reshuffle(const CMatrix &m) {
    require_square(m, "reshuffle input");
    const int d = checked_sqrt(m.rows(), "reshuffle input");
    CMatrix out(m.rows(), m.cols());
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            for (int c = 0; c < d; ++c) {
                for (int e = 0; e < d; ++e) {
                    out(a * d + b, c * d + e) = m(a * d + c, b * d + e);
                }
            }
        }
    }
    return out;
}

NaturalSuperOp reshuffle(const ChoiMatrix &c) {
    return NaturalSuperOp(reshuffle(c.matrix()));
}

ChoiMatrix reshuffle(const NaturalSuperOp &l) {
    return ChoiMatrix(reshuffle(l.matrix()));
}

KrausSet choi_to_kraus(const ChoiMatrix &c) {
    const CMatrix &m = c.matrix();
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kCompletenessTol) {
        throw Error(ErrorKind::kNotCptp, "Choi matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (m + m.adjoint()));
    const auto &w = solver.eigenvalues();
    const auto &vecs = solver.eigenvectors();
    std::vector<CMatrix> ops;
    for (Eigen::Index i = w.size() - 1; i >= 0; --i) {
        if (w(i) < -kPsdTol) {
            throw Error(ErrorKind::kNotCptp, "Choi eigenvalue " + std::to_string(w(i)) + " below tolerance");
        }
        if (w(i) > kPsdTol) {
            ops.push_back(std::sqrt(w(i)) * unvectorize(vecs.col(i)));
        }
    }
    if (ops.empty()) {
        throw Error(ErrorKind::kNotCptp, "Choi matrix has no positive eigenvalue");
    }
    return KrausSet(std::move(ops));
}

PauliTransferMatrix natural_to_ptm(const NaturalSuperOp &l) {
    if (l.dim() != 2) {
        throw Error(ErrorKind::kUnsupportedDimension, "Pauli transfer matrices are one-qubit only");
    }
    Eigen::Matrix4d p;
    for (int mu = 0; mu < 4; ++mu) {
        const CVector vmu = vectorize(normalized_pauli(mu));
        for (int nu = 0; nu < 4; ++nu) {
            p(mu, nu) = vmu.dot(l.matrix() * vectorize(normalized_pauli(nu))).real();
        }
    }
    return PauliTransferMatrix(p);
}

NaturalSuperOp ptm_to_natural(const PauliTransferMatrix &p) {
    CMatrix l = CMatrix::Zero(4, 4);
    for (int mu = 0; mu < 4; ++mu) {
        const CVector vmu = vectorize(normalized_pauli(mu));
        for (int nu = 0; nu < 4; ++nu) {
            if (p(mu, nu) != 0.0) {
                l += p(mu, nu) * vmu * vectorize(normalized_pauli(nu)).adjoint();
            }
        }
    }
    return NaturalSuperOp(std::move(l));
}

PauliTransferMatrix kraus_to_ptm(const KrausSet &k) {
    return natural_to_ptm(kraus_to_natural(k));
}

ChoiMatrix ptm_to_choi(const PauliTransferMatrix &p) {
    return reshuffle(ptm_to_natural(p));
}

double min_choi_eigenvalue(const ChoiMatrix &c) {
    const CMatrix &m = c.matrix();
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double min_choi_eigenvalue(const PauliTransferMatrix &p) {
    return min_choi_eigenvalue(ptm_to_choi(p));
}

bool is_cptp(const PauliTransferMatrix &p, double tol) {
    return p.trace_preservation_residual() <= tol && min_choi_eigenvalue(p) >= -tol;
}

double channel_fidelity(const PauliTransferMatrix &p) {
    return 0.25 * p.matrix().trace();
}

PauliTransferMatrix convex_combine(std::span<const double> weights, std::span<const PauliTransferMatrix> ptms) {
    if (weights.size() != ptms.size() || weights.empty()) {
        throw Error(ErrorKind::kInvalidArgument, "weights and channels must be non-empty and of equal length");
    }
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) {
            throw Error(ErrorKind::kInvalidArgument, "negative convex weight " + std::to_string(w));
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw Error(ErrorKind::kInvalidArgument, "convex weights sum to " + std::to_string(total));
    }
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    for (size_t i = 0; i < weights.size(); ++i) {
        m += weights[i] * ptms[i].matrix();
    }
    // Row 0 is exact for trace-preserving inputs; rounding in the weights must not leak into it.
    if (std::all_of(ptms.begin(), ptms.end(), [](const auto &p) { return p.trace_preservation_residual() == 0.0; })) {
        m.row(0) << 1.0, 0.0, 0.0, 0.0;
    }
    return PauliTransferMatrix(m);
}

PauliTransferMatrix compose(const PauliTransferMatrix &second, const PauliTransferMatrix &first) {
    return PauliTransferMatrix(second.matrix() * first.matrix());
}

MultiQubitOperator apply_unitary(const MultiQubitOperator &op, const CMatrix &u) {
    if (u.rows() != op.matrix().rows() || u.cols() != op.matrix().cols()) {
        throw Error(ErrorKind::kDimension, "unitary does not match operator dimension");
    }
    const auto d = u.rows();
    if ((u.adjoint() * u - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > kUnitaryTol) {
        throw Error(ErrorKind::kInvalidArgument, "matrix is not unitary");
    }
    return MultiQubitOperator(u * op.matrix() * u.adjoint());
}

MultiQubitOperator apply_channel_to_qubit(const MultiQubitOperator &op, int qubit, const NaturalSuperOp &channel) {
    const int q = op.num_qubits();
    if (qubit < 0 || qubit >= q) {
        throw Error(ErrorKind::kInvalidArgument, "qubit index " + std::to_string(qubit) + " out of range");
    }
    if (channel.dim() != 2) {
        throw Error(ErrorKind::kUnsupportedDimension, "per-qubit channel must act on one qubit");
    }
    const CMatrix &x = op.matrix();
    const CMatrix &l = channel.matrix();
    const Eigen::Index bit = Eigen::Index{1} << (q - 1 - qubit);
    const Eigen::Index d = x.rows();
    CMatrix out(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        if (c & bit) {
            continue;
        }
        for (Eigen::Index r = 0; r < d; ++r) {
            if (r & bit) {
                continue;
            }
            const Complex in[4] = {x(r, c), x(r, c | bit), x(r | bit, c), x(r | bit, c | bit)};
            Complex res[4];
            for (int i = 0; i < 4; ++i) {
                res[i] = l(i, 0) * in[0] + l(i, 1) * in[1] + l(i, 2) * in[2] + l(i, 3) * in[3];
            }
            out(r, c) = res[0];
            out(r, c | bit) = res[1];
            out(r | bit, c) = res[2];
            out(r | bit, c | bit) = res[3];
        }
    }
    return MultiQubitOperator(std::move(out));
}

CMatrix partial_trace_keep_last(const MultiQubitOperator &op) {
    if (op.num_qubits() < 1) {
        throw Error(ErrorKind::kDimension, "partial trace needs at least one qubit");
    }
    const CMatrix &x = op.matrix();
    CMatrix out = CMatrix::Zero(2, 2);
    for (Eigen::Index m = 0; m < x.rows() / 2; ++m) {
        out += x.block(2 * m, 2 * m, 2, 2);
    }
    return out;
}

}  // namespace qecfluct
