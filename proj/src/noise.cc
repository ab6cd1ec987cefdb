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

#include "qecfluct/noise.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace qecfluct {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_fidelity(double f) {
    if (!(f > 0.25 && f <= 1.0)) {
        throw Error(ErrorKind::kDomain, "channel fidelity " + std::to_string(f) + " outside (0.25, 1]");
    }
}

PauliTransferMatrix snap_trace_row(PauliTransferMatrix p) {
    p(0, 0) = 1.0;
    p(0, 1) = p(0, 2) = p(0, 3) = 0.0;
    return p;
}

struct FixtureData {
    FixtureInfo info;
    std::array<std::array<Complex, 4>, 4> ops;  // row-major 2x2 per operator
};

const std::vector<FixtureData> &fixture_table() {
    using C = Complex;
    static const std::vector<FixtureData> table = {
        {{"an_0.9704", 0.98, 0.02, 0.9704},
         {{{C{0.756784, 0}, C{-0.0493575, 0.0480098}, C{-0.0493575, -0.0480098}, C{0.78349, 0}},
           {C{0.0267779, -0.0260467}, C{-0.00125374, 0.0452789}, C{0.0308079, 0}, C{-0.0267779, 0.0260467}},
           {C{0.0349194, 0.0339659}, C{0.0401748, 0}, C{-0.00163493, -0.0590456}, C{-0.0349194, -0.0339659}},
           {C{0.638225, 0}, C{0.0599647, -0.0583273}, C{0.0599647, 0.0583273}, C{0.605781, 0}}}}},
        {{"an_0.948", 0.98, 1.0 / 15.0, 0.948},
         {{{C{-0.524991, 0}, C{0.0326596, 0.0688087}, C{0.0326596, -0.0688087}, C{-0.41504, 0}},
           {C{-0.0197012, -0.0415073}, C{0.0567946, -0.0695926}, C{0.0235008, 0}, C{0.0197012, 0.0415073}},
           {C{0.0120814, -0.0254537}, C{-0.0144115, 0}, C{-0.0348284, -0.0426766}, C{-0.0120814, 0.0254537}},
           {C{0.842943, 0}, C{0.0168194, 0.0354358}, C{0.0168194, -0.0354358}, C{0.899567, 0}}}}},
        {{"an_0.918", 0.94, 0.05, 0.918},
         {{{C{0.55782, 0}, C{0.0184139, -0.0299884}, C{0.0184139, 0.0299884}, C{0.264979, 0}},
           {C{0.0135882, -0.0221294}, C{0.0991524, 0.195463}, C{0.00307679, 0}, C{-0.0135882, 0.0221294}},
           {C{0.00812856, 0.0132379}, C{0.00184055, 0}, C{0.0593135, -0.116927}, C{-0.00812856, -0.0132379}},
           {C{0.818093, 0}, C{-0.00752438, 0.012254}, C{-0.00752438, -0.012254}, C{0.937755, 0}}}}},
    };
    return table;
}

const FixtureData &find_fixture(std::string_view name) {
    for (const auto &f : fixture_table()) {
        if (f.info.name == name) {
            return f;
        }
    }
    throw Error(ErrorKind::kInvalidArgument, "unknown fixture \"" + std::string(name) + "\"");
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

double RandomStream::normal() {
    // Box-Muller; 1 - uniform() lies in (0, 1].
    const double r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
    return r * std::cos(kTwoPi * uniform());
}

Eigen::Vector3d NoiseSample::axis() const {
    return {std::sin(phi) * std::cos(gamma), std::sin(phi) * std::sin(gamma), std::cos(phi)};
}

std::string_view base_kind_name(BaseKind kind) {
    switch (kind) {
        case BaseKind::kDepolarizing:
            return "depolarizing";
        case BaseKind::kAmplitudeDamping:
            return "amplitude_damping";
        case BaseKind::kFixture:
            return "fixture";
        case BaseKind::kRandomCptp:
            return "random_cptp";
    }
    return "unknown";
}

BaseKind parse_base_kind(std::string_view name) {
    if (name == "depolarizing" || name == "dep") {
        return BaseKind::kDepolarizing;
    }
    if (name == "amplitude_damping" || name == "ad") {
        return BaseKind::kAmplitudeDamping;
    }
    if (name == "fixture") {
        return BaseKind::kFixture;
    }
    if (name == "random_cptp" || name == "random") {
        return BaseKind::kRandomCptp;
    }
    throw Error(ErrorKind::kInvalidArgument, "unknown base model \"" + std::string(name) + "\"");
}

PauliTransferMatrix depolarizing_ptm(double f) {
    require_fidelity(f);
    const double p = (4.0 * f - 1.0) / 3.0;
    return PauliTransferMatrix::diagonal(1.0, p, p, p);
}

double amplitude_damping_rate(double f) {
    require_fidelity(f);
    const double s = 2.0 * std::sqrt(f) - 1.0;
    return 1.0 - s * s;
}

KrausSet amplitude_damping_kraus(double f) {
    const double g = amplitude_damping_rate(f);
    CMatrix e0 = CMatrix::Zero(2, 2);
    CMatrix e1 = CMatrix::Zero(2, 2);
    e0(0, 0) = 1.0;
    e0(1, 1) = std::sqrt(1.0 - g);
    e1(0, 1) = std::sqrt(g);
    return KrausSet({e0, e1});
}

NoiseSample sample_unitary(RandomStream &rng) {
    NoiseSample s;
    s.theta = kTwoPi * rng.uniform();
    s.gamma = kTwoPi * rng.uniform();
    // Density sin(phi) / 2 on [0, pi]: cos(phi) is uniform on [-1, 1].
    s.phi = std::acos(std::clamp(1.0 - 2.0 * rng.uniform(), -1.0, 1.0));
    return s;
}

CMatrix unitary_matrix(const NoiseSample &s) {
    const Eigen::Vector3d n = s.axis();
    const Complex i{0.0, 1.0};
    CMatrix u = std::cos(s.theta) * pauli_matrix(0);
    for (int a = 0; a < 3; ++a) {
        u += i * std::sin(s.theta) * n(a) * pauli_matrix(a + 1);
    }
    return u;
}

PauliTransferMatrix unitary_channel_ptm(const NoiseSample &s) {
    // U = exp(i theta n.sigma) rotates Bloch vectors by -2 theta about n.
    const Eigen::Vector3d n = s.axis();
    const double angle = -2.0 * s.theta;
    const double c = std::cos(angle);
    const double sn = std::sin(angle);
    Eigen::Matrix3d cross;
    cross << 0.0, -n(2), n(1), n(2), 0.0, -n(0), -n(1), n(0), 0.0;
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = 1.0;
    m.block<3, 3>(1, 1) = c * Eigen::Matrix3d::Identity() + (1.0 - c) * n * n.transpose() + sn * cross;
    return PauliTransferMatrix(m);
}

PauliTransferMatrix average_unitary_ptm() {
    return PauliTransferMatrix::diagonal(1.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
}

PauliTransferMatrix base_ptm(const BaseModelSpec &spec) {
    switch (spec.kind) {
        case BaseKind::kDepolarizing:
            return depolarizing_ptm(spec.f);
        case BaseKind::kAmplitudeDamping: {
            const double g = amplitude_damping_rate(spec.f);
            Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
            m(0, 0) = 1.0;
            m(1, 1) = m(2, 2) = std::sqrt(1.0 - g);
            m(3, 3) = 1.0 - g;
            m(3, 0) = g;
            return PauliTransferMatrix(m);
        }
        case BaseKind::kFixture:
            return snap_trace_row(kraus_to_ptm(appendix_fixture(spec.fixture)));
        case BaseKind::kRandomCptp: {
            RandomStream rng(spec.seed, 0);
            return snap_trace_row(kraus_to_ptm(random_cptp_with_fidelity(spec.f, rng)));
        }
    }
    throw Error(ErrorKind::kInvalidArgument, "unknown base model kind");
}

void validate(const PerturbedModelSpec &spec) {
    const double k_max = spec.allow_large_k ? 1.0 : kMaxMixingWeight;
    if (!(spec.k >= 0.0 && spec.k <= k_max)) {
        throw Error(ErrorKind::kInvalidArgument,
                    "mixing weight k = " + std::to_string(spec.k) + " outside [0, " + std::to_string(k_max) + "]");
    }
    if (spec.base.kind == BaseKind::kFixture) {
        find_fixture(spec.base.fixture);
    } else {
        require_fidelity(spec.base.f);
    }
}

PauliTransferMatrix perturbed_channel(const PauliTransferMatrix &base, double k, const NoiseSample &s) {
    const double w[2] = {1.0 - k, k};
    const PauliTransferMatrix p[2] = {base, unitary_channel_ptm(s)};
    return convex_combine(w, p);
}

PauliTransferMatrix perturbed_channel(const PerturbedModelSpec &spec, const NoiseSample &s) {
    validate(spec);
    return perturbed_channel(base_ptm(spec.base), spec.k, s);
}

PauliTransferMatrix average_perturbed(const PerturbedModelSpec &spec) {
    validate(spec);
    const double w[2] = {1.0 - spec.k, spec.k};
    const PauliTransferMatrix p[2] = {base_ptm(spec.base), average_unitary_ptm()};
    return convex_combine(w, p);
}

KrausSet random_cptp_with_fidelity(double f, RandomStream &rng) {
    require_fidelity(f);
    if (f == 1.0) {
        return KrausSet({CMatrix::Identity(2, 2)});
    }
    constexpr int kMaxDraws = 100;
    for (int draw = 0; draw < kMaxDraws; ++draw) {
        CMatrix g(8, 2);
        for (Eigen::Index r = 0; r < g.rows(); ++r) {
            for (Eigen::Index c = 0; c < g.cols(); ++c) {
                g(r, c) = Complex{rng.normal(), rng.normal()} / std::sqrt(2.0);
            }
        }
        Eigen::HouseholderQR<CMatrix> qr(g);
        CMatrix q = qr.householderQ() * CMatrix::Identity(8, 2);
        const CMatrix r = qr.matrixQR().topLeftCorner(2, 2);
        for (int c = 0; c < 2; ++c) {
            const double mag = std::abs(r(c, c));
            if (mag > 0.0) {
                q.col(c) *= r(c, c) / mag;
            }
        }
        std::vector<CMatrix> ops;
        for (int m = 0; m < 4; ++m) {
            ops.push_back(q.block(2 * m, 0, 2, 2));
        }
        const KrausSet random_map(ops);
        const PauliTransferMatrix random_ptm = kraus_to_ptm(random_map);
        if (channel_fidelity(random_ptm) >= f) {
            continue;
        }
        // Fidelity of t * random + (1 - t) * identity is linear in t.
        const double t = (1.0 - f) / (1.0 - channel_fidelity(random_ptm));
        std::vector<CMatrix> mixed;
        mixed.push_back(std::sqrt(1.0 - t) * CMatrix::Identity(2, 2));
        for (const auto &e : ops) {
            mixed.push_back(std::sqrt(t) * e);
        }
        return KrausSet(std::move(mixed));
    }
    throw Error(ErrorKind::kGeneration, "no random channel below the requested fidelity");
}

const std::vector<FixtureInfo> &fixture_catalog() {
    static const std::vector<FixtureInfo> infos = [] {
        std::vector<FixtureInfo> out;
        for (const auto &f : fixture_table()) {
            out.push_back(f.info);
        }
        return out;
    }();
    return infos;
}

const FixtureInfo &fixture_info(std::string_view name) {
    return find_fixture(name).info;
}

KrausSet appendix_fixture(std::string_view name) {
    const auto &data = find_fixture(name);
    std::vector<CMatrix> ops;
    for (const auto &entries : data.ops) {
        CMatrix m(2, 2);
        m << entries[0], entries[1], entries[2], entries[3];
        ops.push_back(std::move(m));
    }
    return KrausSet(std::move(ops));
}

}  // namespace qecfluct
