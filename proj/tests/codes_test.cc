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

#include "qecfluct/codes.h"

#include <gtest/gtest.h>

#include <set>

using namespace qecfluct;

namespace {

CMatrix kron_paulis(const std::string &s) {
    CMatrix full = CMatrix::Ones(1, 1);
    for (char c : s) {
        const CMatrix &p = pauli_matrix(std::string("IXYZ").find(c));
        CMatrix next(full.rows() * 2, full.cols() * 2);
        for (Eigen::Index r = 0; r < full.rows(); ++r) {
            for (Eigen::Index col = 0; col < full.cols(); ++col) {
                next.block(2 * r, 2 * col, 2, 2) = full(r, col) * p;
            }
        }
        full = next;
    }
    return full;
}

int binomial(int n, int k) {
    int r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

// <i_L| A^dag B |j_L> = c_AB delta_ij over all pairs of weight <= 1 errors.
double knill_laflamme_residual(const CodeSpec &code) {
    std::vector<PauliString> errs = {PauliString::identity(code.n)};
    for (auto &p : paulis_of_weight(code.n, 1)) {
        errs.push_back(p);
    }
    const CVector *logical[2] = {&code.logical_zero, &code.logical_one};
    double worst = 0;
    for (const auto &a : errs) {
        for (const auto &b : errs) {
            Complex m[2][2];
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    m[i][j] = a.apply(*logical[i]).dot(b.apply(*logical[j]));
                }
            }
            worst = std::max({worst, std::abs(m[0][1]), std::abs(m[1][0]), std::abs(m[0][0] - m[1][1])});
        }
    }
    return worst;
}

}  // namespace

TEST(codes, pauli_string_basics) {
    PauliString p("X_YZ");
    EXPECT_EQ(p.str(), "XIYZ");
    EXPECT_EQ(p.weight(), 3);
    EXPECT_EQ(p.x_mask(), 0b0101u);
    EXPECT_EQ(p.z_mask(), 0b1100u);
    EXPECT_THROW(PauliString("XA"), Error);
    EXPECT_FALSE(PauliString("X").commutes_with(PauliString("Z")));
    EXPECT_FALSE(PauliString("Y").commutes_with(PauliString("Z")));
    EXPECT_TRUE(PauliString("XX").commutes_with(PauliString("ZZ")));
    EXPECT_TRUE(PauliString("XI").commutes_with(PauliString("IZ")));
    EXPECT_EQ(PauliString::single(3, 1, 'Y').str(), "IYI");
}

TEST(codes, pauli_apply_matches_kronecker_product) {
    for (const char *s : {"XYZ", "YYI", "ZIX", "IIY", "XXX"}) {
        const PauliString p(s);
        EXPECT_LT((p.matrix() - kron_paulis(s)).cwiseAbs().maxCoeff(), 1e-15) << s;
    }
}

TEST(codes, paulis_of_weight_order_and_count) {
    for (int n : {3, 5, 7}) {
        for (int w = 0; w <= 3; ++w) {
            const auto ps = paulis_of_weight(n, w);
            ASSERT_EQ(static_cast<int>(ps.size()), binomial(n, w) * static_cast<int>(std::pow(3, w)));
            std::set<std::string> distinct;
            for (const auto &p : ps) {
                EXPECT_EQ(p.weight(), w);
                distinct.insert(p.str());
            }
            EXPECT_EQ(distinct.size(), ps.size());
        }
    }
    const auto w1 = paulis_of_weight(5, 1);
    EXPECT_EQ(w1[0].str(), "XIIII");
    EXPECT_EQ(w1[2].str(), "ZIIII");
    EXPECT_EQ(w1[3].str(), "IXIII");
    const auto w2 = paulis_of_weight(4, 2);
    EXPECT_EQ(w2[0].str(), "XXII");
    EXPECT_EQ(w2[1].str(), "XYII");
    EXPECT_EQ(w2[3].str(), "YXII");
    EXPECT_EQ(w2[9].str(), "XIXI");
}

TEST(codes, five_qubit_code) {
    const CodeSpec c = five_qubit_code();
    ASSERT_EQ(c.errors.size(), 16u);
    EXPECT_EQ(c.errors[0].str(), "IIIII");
    // Error m = 3 (i - 1) + j for qubit i and Pauli j.
    EXPECT_EQ(c.errors[1].str(), "XIIII");
    EXPECT_EQ(c.errors[6].str(), "IZIII");
    EXPECT_EQ(c.errors[15].str(), "IIIIZ");
    EXPECT_EQ(c.stabilizers.size(), 4u);
    // Every cyclic shift of XZZXI fixes both codewords.
    const std::string g = "XZZXI";
    for (int s = 0; s < 5; ++s) {
        const PauliString p(g.substr(s) + g.substr(0, s));
        EXPECT_LT((p.apply(c.logical_zero) - c.logical_zero).cwiseAbs().maxCoeff(), 1e-14) << p.str();
        EXPECT_LT((p.apply(c.logical_one) - c.logical_one).cwiseAbs().maxCoeff(), 1e-14) << p.str();
    }
    EXPECT_NEAR(std::abs(c.logical_one.dot(PauliString("XXXXX").apply(c.logical_zero))), 1.0, 1e-14);
    EXPECT_LT(knill_laflamme_residual(c), 1e-14);
    const CodeReport r = validate_code(c);
    EXPECT_TRUE(r.ok());
    EXPECT_FALSE(r.degenerate);
}

TEST(codes, steane_code) {
    const CodeSpec c = steane_code();
    ASSERT_EQ(c.errors.size(), 64u);
    EXPECT_EQ(c.errors[21].str(), "IIIIIIZ");
    EXPECT_EQ(c.errors[22].str(), "XZIIIII");
    EXPECT_EQ(c.errors[23].str(), "XIZIIII");
    EXPECT_EQ(c.errors[63].str(), "IIIIIZX");
    EXPECT_EQ(c.stabilizers.size(), 6u);
    EXPECT_LT(knill_laflamme_residual(c), 1e-14);
    const auto found = find_stabilizer_generators(7, c.logical_zero, c.logical_one);
    EXPECT_EQ(found.size(), 6u);
    for (const auto &g : c.stabilizers) {
        for (const auto &h : c.stabilizers) {
            EXPECT_TRUE(g.commutes_with(h));
        }
    }
    // Eight computational strings of even weight in the Hamming dual code.
    int support = 0;
    for (Eigen::Index i = 0; i < c.logical_zero.size(); ++i) {
        support += std::abs(c.logical_zero(i)) > 1e-12;
    }
    EXPECT_EQ(support, 8);
    EXPECT_TRUE(validate_code(c).ok());
}

TEST(codes, shor_code) {
    const CodeSpec c = shor_code();
    ASSERT_EQ(c.errors.size(), 256u);
    EXPECT_EQ(c.errors[0].weight(), 0);
    int max_weight = 0;
    for (const auto &e : c.errors) {
        max_weight = std::max(max_weight, e.weight());
    }
    EXPECT_LE(max_weight, 3);
    EXPECT_LT(knill_laflamme_residual(c), 1e-14);
    const CodeReport r = validate_code(c);
    EXPECT_TRUE(r.ok());
    EXPECT_TRUE(r.syndromes_distinct);
    EXPECT_TRUE(r.degenerate);
    // Z1 and Z2 share a syndrome; only the first is a table entry.
    EXPECT_EQ(syndrome_bits(PauliString("ZIIIIIIII"), c.stabilizers),
              syndrome_bits(PauliString("IZIIIIIII"), c.stabilizers));
}

TEST(codes, syndrome_bits_follow_generator_order) {
    const std::vector<PauliString> gens = {PauliString("ZZI"), PauliString("IZZ")};
    EXPECT_EQ(syndrome_bits(PauliString("XII"), gens), "10");
    EXPECT_EQ(syndrome_bits(PauliString("IXI"), gens), "11");
    EXPECT_EQ(syndrome_bits(PauliString("IIZ"), gens), "00");
}

TEST(codes, duplicated_error_is_not_correctable) {
    CodeSpec c = five_qubit_code();
    c.errors[2] = c.errors[1];
    try {
        build_encoding_unitary(c.n, c.logical_zero, c.logical_one, c.errors);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kNotCorrectable);
    }
    const CodeReport r = validate_code(c);
    EXPECT_FALSE(r.ok());
    EXPECT_GT(r.unitarity_residual, 0.5);
    EXPECT_FALSE(r.syndromes_distinct);
}

TEST(codes, lookup_by_name) {
    EXPECT_EQ(code_by_name("steane").n, 7);
    EXPECT_THROW(code_by_name("golay"), Error);
    EXPECT_EQ(code_names().size(), 3u);
}
