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

#include "qecfluct/effective.h"

#include <gtest/gtest.h>

#include "qecfluct/noise.h"

using namespace qecfluct;

namespace {

const CodeSpec &five() {
    static const CodeSpec c = five_qubit_code();
    return c;
}
const CodeSpec &steane() {
    static const CodeSpec c = steane_code();
    return c;
}
const CodeSpec &shor() {
    static const CodeSpec c = shor_code();
    return c;
}

double gap(const PauliTransferMatrix &a, const PauliTransferMatrix &b) {
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

PauliTransferMatrix random_channel(RandomStream &rng) {
    const double f = 0.3 + 0.69 * rng.uniform();
    return kraus_to_ptm(random_cptp_with_fidelity(f, rng));
}

std::vector<PauliTransferMatrix> random_layer(int n, RandomStream &rng) {
    std::vector<PauliTransferMatrix> layer;
    for (int i = 0; i < n; ++i) {
        layer.push_back(random_channel(rng));
    }
    return layer;
}

PauliTransferMatrix dep_mixture() {
    PerturbedModelSpec s;
    s.base = {BaseKind::kDepolarizing, 0.98, {}, 0};
    s.k = 0.02;
    return average_perturbed(s);
}

}  // namespace

TEST(effective_channel, pauli_coefficients_match_traces) {
    RandomStream rng(1, 0);
    CMatrix a(8, 8);
    for (Eigen::Index i = 0; i < 8; ++i) {
        for (Eigen::Index j = 0; j < 8; ++j) {
            a(i, j) = Complex(rng.normal(), rng.normal());
        }
    }
    const auto coeffs = pauli_coefficients(a);
    ASSERT_EQ(coeffs.size(), 64u);
    for (int p = 0; p < 64; ++p) {
        std::string s;
        for (int i = 0; i < 3; ++i) {
            s.push_back("IXYZ"[(p >> (2 * (2 - i))) & 3]);
        }
        const Complex expected = (PauliString(s).matrix() * a).trace() / std::sqrt(8.0);
        EXPECT_LT(std::abs(coeffs[p] - expected), 1e-13) << s;
    }
}

TEST(effective_channel, identity_layer_gives_identity) {
    for (const CodeSpec *c : {&five(), &steane()}) {
        const auto layer = NoiseLayer::uniform(c->n, PauliTransferMatrix::identity());
        EXPECT_LT(gap(effective_ptm(*c, layer), PauliTransferMatrix::identity()), 1e-12) << c->name;
        EXPECT_LT(gap(EffectiveChannelEngine(*c).evaluate(layer), PauliTransferMatrix::identity()), 1e-12);
    }
    const auto layer = NoiseLayer::uniform(5, PauliTransferMatrix::identity());
    EXPECT_LT(gap(effective_ptm_dense_oracle(five(), layer), PauliTransferMatrix::identity()), 1e-12);
}

TEST(effective_channel, corrects_any_single_qubit_channel) {
    RandomStream rng(2, 0);
    for (const CodeSpec *c : {&five(), &steane(), &shor()}) {
        const EffectiveChannelEngine engine(*c);
        for (int q = 0; q < c->n; ++q) {
            std::vector<PauliTransferMatrix> layer(c->n, PauliTransferMatrix::identity());
            layer[q] = random_channel(rng);
            EXPECT_LT(gap(engine.evaluate(layer), PauliTransferMatrix::identity()), 1e-10) << c->name << " " << q;
            if (c->n <= 7) {
                EXPECT_LT(gap(effective_ptm(*c, NoiseLayer::from_ptms(layer)), PauliTransferMatrix::identity()),
                          1e-10);
            }
        }
    }
}

TEST(effective_channel, three_routes_agree_on_five_qubit_code) {
    const EffectiveChannelEngine engine(five());
    RandomStream rng(3, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const auto ptms = random_layer(5, rng);
        const NoiseLayer layer = NoiseLayer::from_ptms(ptms);
        const auto stepwise = effective_ptm(five(), layer);
        EXPECT_LT(gap(stepwise, effective_ptm_dense_oracle(five(), layer)), 1e-10);
        EXPECT_LT(gap(stepwise, engine.evaluate(ptms)), 1e-10);
    }
}

TEST(effective_channel, engine_matches_stepwise_on_larger_codes) {
    RandomStream rng(4, 0);
    for (const CodeSpec *c : {&steane(), &shor()}) {
        const auto ptms = random_layer(c->n, rng);
        EXPECT_LT(gap(effective_ptm(*c, NoiseLayer::from_ptms(ptms)), EffectiveChannelEngine(*c).evaluate(ptms)),
                  1e-10)
            << c->name;
    }
}

TEST(effective_channel, oracle_rejects_other_sizes) {
    EXPECT_THROW(effective_ptm_dense_oracle(steane(), NoiseLayer::uniform(7, PauliTransferMatrix::identity())),
                 Error);
    EXPECT_THROW(effective_ptm(five(), NoiseLayer::uniform(4, PauliTransferMatrix::identity())), Error);
    EXPECT_THROW(EffectiveChannelEngine(five()).evaluate(std::vector<PauliTransferMatrix>(6)), Error);
}

TEST(effective_channel, affine_in_each_slot) {
    const EffectiveChannelEngine engine(five());
    RandomStream rng(5, 0);
    for (int trial = 0; trial < 10; ++trial) {
        auto layer = random_layer(5, rng);
        const auto a = random_channel(rng);
        const auto b = random_channel(rng);
        const double alpha = rng.uniform();
        const int slot = trial % 5;
        const double w[2] = {alpha, 1.0 - alpha};
        const PauliTransferMatrix ab[2] = {a, b};
        layer[slot] = convex_combine(w, ab);
        const auto mixed = engine.evaluate(layer);
        layer[slot] = a;
        const auto ea = engine.evaluate(layer);
        layer[slot] = b;
        const auto eb = engine.evaluate(layer);
        const PauliTransferMatrix combo(alpha * ea.matrix() + (1.0 - alpha) * eb.matrix());
        EXPECT_LT(gap(mixed, combo), 1e-12);
    }
}

TEST(effective_channel, average_over_assignments_equals_averaged_layer) {
    RandomStream rng(6, 0);
    const auto a = random_channel(rng);
    const auto b = random_channel(rng);
    Eigen::Matrix4d sum = Eigen::Matrix4d::Zero();
    for (int mask = 0; mask < 32; ++mask) {
        std::vector<PauliTransferMatrix> layer;
        for (int i = 0; i < 5; ++i) {
            layer.push_back((mask >> i) & 1 ? b : a);
        }
        sum += effective_ptm(five(), NoiseLayer::from_ptms(layer)).matrix() / 32.0;
    }
    const PauliTransferMatrix avg(0.5 * (a.matrix() + b.matrix()));
    EXPECT_LT((sum - effective_ptm(five(), NoiseLayer::uniform(5, avg)).matrix()).cwiseAbs().maxCoeff(), 1e-11);
}

TEST(effective_channel, trace_preserving_and_cptp) {
    RandomStream rng(7, 0);
    for (const CodeSpec *c : {&five(), &steane(), &shor()}) {
        const EffectiveChannelEngine engine(*c);
        for (int trial = 0; trial < 5; ++trial) {
            const auto out = engine.evaluate(random_layer(c->n, rng));
            EXPECT_LT(out.trace_preservation_residual(), 1e-12) << c->name;
            EXPECT_GT(min_choi_eigenvalue(out), -1e-9) << c->name;
        }
    }
}

TEST(effective_channel, unital_inputs_give_unital_output) {
    RandomStream rng(8, 0);
    std::vector<PauliTransferMatrix> layer;
    for (int i = 0; i < 5; ++i) {
        layer.push_back(PauliTransferMatrix::diagonal(1, 0.9 + 0.1 * rng.uniform(), 0.9 + 0.1 * rng.uniform(),
                                                      0.9 + 0.1 * rng.uniform()));
    }
    const auto out = EffectiveChannelEngine(five()).evaluate(layer);
    for (int mu = 1; mu < 4; ++mu) {
        EXPECT_LT(std::abs(out(mu, 0)), 1e-12);
    }
}

TEST(effective_channel, non_cptp_slots_are_reported) {
    NoiseLayer layer = NoiseLayer::uniform(5, PauliTransferMatrix::identity());
    layer.channels[3] = ptm_to_natural(PauliTransferMatrix::diagonal(1, 1, -1, 1));
    EXPECT_EQ(non_cptp_slots(layer), std::vector<int>{3});
    // Still evaluated linearly.
    EXPECT_NO_THROW(effective_ptm(five(), layer));
}

TEST(effective_channel, five_qubit_depolarizing_recursion) {
    const auto r = average_recursion(five(), dep_mixture(), 3);
    const double fidelity[] = {0.9704, 0.991801, 0.99934, 0.999996};
    const double diagonal[] = {0.960533, 0.989068, 0.99912, 0.999994};
    for (int l = 0; l <= 3; ++l) {
        EXPECT_NEAR(r.fidelities[l], fidelity[l], 1e-6);
        for (int mu = 1; mu < 4; ++mu) {
            EXPECT_NEAR(r.ptms[l](mu, mu), diagonal[l], 1e-6);
        }
    }
}

TEST(effective_channel, five_qubit_fixture_recursion) {
    struct Case {
        const char *name;
        double e11, e22, e33;
    };
    for (const Case &c : {Case{"an_0.9704", 0.9891, 0.989115, 0.988988}, Case{"an_0.948", 0.967925, 0.967929, 0.967972},
                          Case{"an_0.918", 0.92581, 0.925841, 0.925252}}) {
        const auto &info = fixture_info(c.name);
        PerturbedModelSpec s;
        s.base = {BaseKind::kFixture, info.f, c.name, 0};
        s.k = info.k;
        const auto r = average_recursion(five(), average_perturbed(s), 1);
        EXPECT_NEAR(r.ptms[1](1, 1), c.e11, 1e-5) << c.name;
        EXPECT_NEAR(r.ptms[1](2, 2), c.e22, 1e-5) << c.name;
        EXPECT_NEAR(r.ptms[1](3, 3), c.e33, 1e-5) << c.name;
    }
}

TEST(effective_channel, identity_recursion_stays_identity) {
    const auto r = average_recursion(steane(), PauliTransferMatrix::identity(), 2);
    for (const auto &p : r.ptms) {
        EXPECT_LT(gap(p, PauliTransferMatrix::identity()), 1e-12);
    }
    EXPECT_THROW(average_recursion(five(), PauliTransferMatrix::diagonal(1, 1, 1, -1), 1), Error);
}
