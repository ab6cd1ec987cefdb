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

#ifndef QECFLUCT_EFFECTIVE_H
#define QECFLUCT_EFFECTIVE_H

#include <span>
#include <vector>

#include "qecfluct/channel.h"
#include "qecfluct/codes.h"

namespace qecfluct {

/// One one-qubit channel per physical qubit, natural-superoperator form.
struct NoiseLayer {
    std::vector<NaturalSuperOp> channels;

    static NoiseLayer uniform(int n, const PauliTransferMatrix &p);
    static NoiseLayer from_ptms(std::span<const PauliTransferMatrix> ptms);
    int size() const {
        return static_cast<int>(channels.size());
    }
};

/// Slots whose channel fails the CPTP check; inputs are still used linearly.
std::vector<int> non_cptp_slots(const NoiseLayer &layer, double tol = kPsdTol);

/// Encode, apply the layer qubit by qubit, decode, trace out the ancillas and
/// project on the Pauli basis. Dense 2^n x 2^n evolution of the four sigma_nu.
PauliTransferMatrix effective_ptm(const CodeSpec &code, const NoiseLayer &layer);

/// Same map through the full 4^n x 4^n natural superoperator. n = 5 only.
PauliTransferMatrix effective_ptm_dense_oracle(const CodeSpec &code, const NoiseLayer &layer);

/// Effective channel evaluated in the n-qubit Pauli basis.
///
/// With X_nu = L sigma_nu L^dag (L the logical isometry) and
/// M_mu = sum_m E_m X_mu E_m^dag, the output is Tr[M_mu Lambda(X_nu)]. Pauli
/// conjugation only flips signs, so M_mu lives on the support of X_mu, and the
/// product channel acts digit-wise on Pauli coefficients. Everything is real.
class EffectiveChannelEngine {
   public:
    explicit EffectiveChannelEngine(const CodeSpec &code);

    int num_qubits() const {
        return n_;
    }
    PauliTransferMatrix evaluate(std::span<const PauliTransferMatrix> layer) const;
    PauliTransferMatrix evaluate(const NoiseLayer &layer) const;

    /// Number of nonzero Pauli coefficients in the decoder and input supports.
    size_t decoder_terms() const {
        return out_index_.size();
    }
    size_t input_terms() const {
        return in_index_.size();
    }

   private:
    int n_ = 0;
    // Distinct Pauli strings Q on which some M_mu is nonzero, as digit rows.
    std::vector<std::uint8_t> out_digits_;
    std::vector<std::uint32_t> out_index_;
    // weights_[mu * out_size + j] = m_mu[Q_j].
    std::vector<double> out_weights_;
    // Union of the X_nu supports, as digit rows, with x_nu coefficients.
    std::vector<std::uint8_t> in_digits_;
    std::vector<std::uint32_t> in_index_;
    std::vector<double> in_weights_;
};

/// Pauli coefficients Tr[P a] of an n-qubit operator in the normalized basis,
/// indexed by P = sum_i p_i 4^(n-1-i).
std::vector<Complex> pauli_coefficients(const CMatrix &a);

struct AverageRecursionResult {
    std::vector<PauliTransferMatrix> ptms;
    std::vector<double> fidelities;
};

/// eta_avg(l) = eff(n copies of eta_avg(l-1)) for l = 1..levels.
AverageRecursionResult average_recursion(const EffectiveChannelEngine &engine, const PauliTransferMatrix &avg0,
                                         int levels);
AverageRecursionResult average_recursion(const CodeSpec &code, const PauliTransferMatrix &avg0, int levels);

}  // namespace qecfluct

#endif
