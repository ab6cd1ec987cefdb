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

#include <gtest/gtest.h>

#include <random>

#include "qecfluct/noise.h"

using namespace qecfluct;

namespace {

CMatrix random_matrix(int rows, int cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = Complex(g(rng), g(rng));
        }
    }
    return m;
}

// Kraus operators from a random isometry, built without library helpers.
KrausSet random_kraus(int d, int count, std::mt19937_64 &rng) {
    CMatrix g = random_matrix(d * count, d, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix v = qr.householderQ() * CMatrix::Identity(d * count, d);
    std::vector<CMatrix> ops;
    for (int m = 0; m < count; ++m) {
        ops.push_back(v.block(m * d, 0, d, d));
    }
    return KrausSet(ops);
}

Eigen::Matrix4d direct_ptm(const KrausSet &k) {
    const CMatrix p[4] = {CMatrix::Identity(2, 2), pauli_matrix(1), pauli_matrix(2), pauli_matrix(3)};
    Eigen::Matrix4d eta;
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            CMatrix out = CMatrix::Zero(2, 2);
            for (const auto &e : k.ops()) {
                out += e * p[nu] * e.adjoint();
            }
            eta(mu, nu) = 0.5 * (p[mu] * out).trace().real();
        }
    }
    return eta;
}

double max_abs(const CMatrix &m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

TEST(channel_core, paulis_are_normalized) {
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            const Complex ip = (normalized_pauli(mu).adjoint() * normalized_pauli(nu)).trace();
            EXPECT_NEAR(std::abs(ip - Complex(mu == nu ? 1.0 : 0.0)), 0.0, 1e-15);
        }
    }
    EXPECT_THROW(normalized_pauli(4), Error);
}

TEST(channel_core, vectorize_is_row_major) {
    CMatrix a(2, 2);
    a << 1.0, 2.0, 3.0, 4.0;
    const CVector v = vectorize(a);
    EXPECT_EQ(v(1), Complex(2.0));
    EXPECT_EQ(v(2), Complex(3.0));
    EXPECT_EQ(unvectorize(v), a);
}

TEST(channel_core, ptm_matches_direct_trace) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const KrausSet k = random_kraus(2, 1 + trial % 4, rng);
        EXPECT_LT(k.completeness_residual(), 1e-12);
        const PauliTransferMatrix p = kraus_to_ptm(k);
        EXPECT_LT((p.matrix() - direct_ptm(k)).cwiseAbs().maxCoeff(), 1e-13);
        EXPECT_LT(p.trace_preservation_residual(), 1e-13);
    }
}

TEST(channel_core, natural_entries_are_matrix_elements) {
    std::mt19937_64 rng(12);
    const KrausSet k = random_kraus(3, 2, rng);
    const CMatrix lambda = kraus_to_natural(k).matrix();
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            for (int c = 0; c < 3; ++c) {
                for (int d = 0; d < 3; ++d) {
                    CMatrix in = CMatrix::Zero(3, 3);
                    in(c, d) = 1.0;
                    const CMatrix out = k.apply(in);
                    EXPECT_NEAR(std::abs(lambda(a * 3 + b, c * 3 + d) - out(a, b)), 0.0, 1e-14);
                }
            }
        }
    }
}

TEST(channel_core, choi_is_psd_with_trace_d) {
    std::mt19937_64 rng(13);
    const KrausSet k = random_kraus(2, 3, rng);
    const ChoiMatrix c = kraus_to_choi(k);
    EXPECT_NEAR(c.matrix().trace().real(), 2.0, 1e-13);
    EXPECT_GT(min_choi_eigenvalue(c), -1e-13);
    EXPECT_LT(max_abs(reshuffle(reshuffle(c)).matrix() - c.matrix()), 1e-15);
    EXPECT_LT(max_abs(reshuffle(kraus_to_natural(k)).matrix() - c.matrix()), 1e-14);
}

TEST(channel_core, choi_to_kraus_round_trip) {
    std::mt19937_64 rng(14);
    for (int count = 1; count <= 4; ++count) {
        const KrausSet k = random_kraus(2, count, rng);
        const KrausSet back = choi_to_kraus(kraus_to_choi(k));
        EXPECT_LE(back.size(), static_cast<size_t>(count));
        EXPECT_LT(back.completeness_residual(), 1e-12);
        EXPECT_LT((kraus_to_ptm(back).matrix() - kraus_to_ptm(k).matrix()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(channel_core, choi_to_kraus_rejects_non_cp) {
    // Transpose map.
    const PauliTransferMatrix t = PauliTransferMatrix::diagonal(1, 1, -1, 1);
    EXPECT_LT(min_choi_eigenvalue(t), -0.5);
    EXPECT_FALSE(is_cptp(t));
    try {
        choi_to_kraus(ptm_to_choi(t));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kNotCptp);
    }
}

TEST(channel_core, ptm_natural_round_trip) {
    std::mt19937_64 rng(15);
    const PauliTransferMatrix p = kraus_to_ptm(random_kraus(2, 2, rng));
    EXPECT_LT((natural_to_ptm(ptm_to_natural(p)).matrix() - p.matrix()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(channel_core, fidelity_and_depolarizing) {
    EXPECT_DOUBLE_EQ(channel_fidelity(PauliTransferMatrix::identity()), 1.0);
    EXPECT_NEAR(channel_fidelity(depolarizing_ptm(0.9)), 0.9, 1e-15);
    // F = |Tr U / 2|^2 for a unitary channel.
    const double t = 0.3;
    CMatrix u = std::cos(t) * CMatrix::Identity(2, 2) + Complex(0, std::sin(t)) * pauli_matrix(3);
    EXPECT_NEAR(channel_fidelity(kraus_to_ptm(KrausSet({u}))), std::cos(t) * std::cos(t), 1e-14);
}

TEST(channel_core, compose_matches_kraus_product) {
    std::mt19937_64 rng(16);
    const KrausSet a = random_kraus(2, 2, rng);
    const KrausSet b = random_kraus(2, 2, rng);
    std::vector<CMatrix> prod;
    for (const auto &eb : b.ops()) {
        for (const auto &ea : a.ops()) {
            prod.push_back(eb * ea);
        }
    }
    const auto c = compose(kraus_to_ptm(b), kraus_to_ptm(a));
    EXPECT_LT((c.matrix() - kraus_to_ptm(KrausSet(prod)).matrix()).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(channel_core, convex_combine_checks_weights) {
    const std::vector<PauliTransferMatrix> ps = {PauliTransferMatrix::identity(), depolarizing_ptm(0.5)};
    const std::vector<double> w = {0.25, 0.75};
    const auto mix = convex_combine(w, ps);
    EXPECT_NEAR(mix(1, 1), 0.25 + 0.75 * (1.0 / 3.0), 1e-15);
    EXPECT_THROW(convex_combine(std::vector<double>{0.5, 0.6}, ps), Error);
    EXPECT_THROW(convex_combine(std::vector<double>{-0.1, 1.1}, ps), Error);
    EXPECT_THROW(convex_combine(std::vector<double>{1.0}, ps), Error);
}

TEST(channel_core, apply_channel_to_qubit_matches_embedded_kraus) {
    std::mt19937_64 rng(17);
    const KrausSet k = random_kraus(2, 3, rng);
    const NaturalSuperOp lambda = kraus_to_natural(k);
    const CMatrix rho = random_matrix(8, 8, rng);
    for (int q = 0; q < 3; ++q) {
        CMatrix expected = CMatrix::Zero(8, 8);
        for (const auto &e : k.ops()) {
            CMatrix full = CMatrix::Ones(1, 1);
            for (int i = 0; i < 3; ++i) {
                const CMatrix f = i == q ? e : CMatrix::Identity(2, 2);
                CMatrix next(full.rows() * 2, full.cols() * 2);
                for (int r = 0; r < full.rows(); ++r) {
                    for (int c = 0; c < full.cols(); ++c) {
                        next.block(2 * r, 2 * c, 2, 2) = full(r, c) * f;
                    }
                }
                full = next;
            }
            expected += full * rho * full.adjoint();
        }
        const auto out = apply_channel_to_qubit(MultiQubitOperator(rho), q, lambda);
        EXPECT_LT(max_abs(out.matrix() - expected), 1e-13) << "qubit " << q;
    }
    EXPECT_THROW(apply_channel_to_qubit(MultiQubitOperator(rho), 3, lambda), Error);
}

TEST(channel_core, apply_unitary_and_partial_trace) {
    std::mt19937_64 rng(18);
    const CMatrix rho = random_matrix(4, 4, rng);
    Eigen::HouseholderQR<CMatrix> qr(random_matrix(4, 4, rng));
    const CMatrix u = qr.householderQ();
    const auto out = apply_unitary(MultiQubitOperator(rho), u);
    EXPECT_LT(max_abs(out.matrix() - u * rho * u.adjoint()), 1e-13);
    EXPECT_THROW(apply_unitary(MultiQubitOperator(rho), 2.0 * u), Error);

    const CMatrix pt = partial_trace_keep_last(MultiQubitOperator(rho));
    EXPECT_EQ(pt(0, 1), rho(0, 1) + rho(2, 3));
    EXPECT_EQ(pt(1, 0), rho(1, 0) + rho(3, 2));
    // Linear on traceless input, no renormalization.
    const CMatrix z = CMatrix::Zero(4, 4);
    EXPECT_EQ(max_abs(partial_trace_keep_last(MultiQubitOperator(z))), 0.0);
}

TEST(channel_core, kraus_set_validates_shapes) {
    EXPECT_THROW(KrausSet({CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)}), Error);
    EXPECT_THROW(KrausSet({CMatrix::Identity(2, 3)}), Error);
    EXPECT_THROW(MultiQubitOperator(CMatrix::Identity(3, 3)), Error);
}
