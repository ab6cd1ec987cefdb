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

#ifndef QECFLUCT_NOISE_H
#define QECFLUCT_NOISE_H

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qecfluct/channel.h"

namespace qecfluct {

/// Deterministic random stream keyed by (seed, stream id).
///
/// Every stream is an independent mt19937_64 seeded through std::seed_seq, so
/// draws depend only on the key and never on which worker consumes them.
class RandomStream {
   public:
    RandomStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64() {
        return engine_();
    }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }
    double normal();

   private:
    std::mt19937_64 engine_;
};

/// Parameters of the random unitary U = cos(theta) I + i sin(theta) n.sigma.
struct NoiseSample {
    double theta = 0.0;
    double gamma = 0.0;
    double phi = 0.0;

    /// Rotation axis (sin phi cos gamma, sin phi sin gamma, cos phi).
    Eigen::Vector3d axis() const;
};

enum class BaseKind { kDepolarizing, kAmplitudeDamping, kFixture, kRandomCptp };

std::string_view base_kind_name(BaseKind kind);
BaseKind parse_base_kind(std::string_view name);

struct BaseModelSpec {
    BaseKind kind = BaseKind::kDepolarizing;
    /// Target channel fidelity; read back from the fixture for kFixture.
    double f = 1.0;
    std::string fixture;
    std::uint64_t seed = 0;
};

struct PerturbedModelSpec {
    BaseModelSpec base;
    double k = 0.0;
    /// Lifts the k <= 0.1 limit for exploratory runs.
    bool allow_large_k = false;
};

inline constexpr double kMaxMixingWeight = 0.1;

/// diag(1, p, p, p) with p = (4f - 1) / 3.
PauliTransferMatrix depolarizing_ptm(double f);

/// Damping rate 1 - (2 sqrt(f) - 1)^2 that yields channel fidelity f.
double amplitude_damping_rate(double f);
KrausSet amplitude_damping_kraus(double f);

NoiseSample sample_unitary(RandomStream &rng);
CMatrix unitary_matrix(const NoiseSample &s);
PauliTransferMatrix unitary_channel_ptm(const NoiseSample &s);
/// The Haar average of unitary_channel_ptm: diag(1, 1/3, 1/3, 1/3).
PauliTransferMatrix average_unitary_ptm();

/// PTM of the base model. Fixture PTMs get row 0 snapped to (1, 0, 0, 0),
/// which removes the 1e-6 trace defect of the printed Kraus entries.
PauliTransferMatrix base_ptm(const BaseModelSpec &spec);

/// Throws kInvalidArgument / kDomain on an invalid spec.
void validate(const PerturbedModelSpec &spec);

/// (1 - k) base + k u(s).
PauliTransferMatrix perturbed_channel(const PerturbedModelSpec &spec, const NoiseSample &s);
PauliTransferMatrix perturbed_channel(const PauliTransferMatrix &base, double k, const NoiseSample &s);

/// (1 - k) base + k diag(1, 1/3, 1/3, 1/3).
PauliTransferMatrix average_perturbed(const PerturbedModelSpec &spec);

/// Random CPTP map with channel fidelity f: a Haar-random 4-Kraus isometry
/// mixed with the identity channel at the weight that hits f exactly.
KrausSet random_cptp_with_fidelity(double f, RandomStream &rng);

struct FixtureInfo {
    std::string name;
    /// The (f, k) pair the fixture was printed with.
    double f;
    double k;
    double average_fidelity;
};

const std::vector<FixtureInfo> &fixture_catalog();
const FixtureInfo &fixture_info(std::string_view name);
/// Literal Kraus quadruple as printed, six significant digits.
KrausSet appendix_fixture(std::string_view name);

}  // namespace qecfluct

#endif
