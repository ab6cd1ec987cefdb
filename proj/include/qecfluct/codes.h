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

#ifndef QECFLUCT_CODES_H
#define QECFLUCT_CODES_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qecfluct/channel.h"

namespace qecfluct {

/// Tensor product of single-qubit Paulis, letters I/X/Y/Z; qubit 0 is leftmost.
class PauliString {
   public:
    PauliString() = default;
    /// Accepts "IXYZ" letters; '_' is read as I.
    explicit PauliString(std::string_view letters);
    static PauliString identity(int n);
    static PauliString single(int n, int qubit, char letter);

    int size() const {
        return static_cast<int>(letters_.size());
    }
    const std::string &str() const {
        return letters_;
    }
    char operator[](int qubit) const {
        return letters_[static_cast<size_t>(qubit)];
    }
    int weight() const;

    /// Bit q set when qubit q carries an X (or Y) / Z (or Y) component.
    std::uint32_t x_mask() const;
    std::uint32_t z_mask() const;

    bool commutes_with(const PauliString &other) const;

    /// Applies the operator to a 2^n state vector.
    CVector apply(const CVector &state) const;
    CMatrix matrix() const;

    bool operator==(const PauliString &other) const = default;

   private:
    std::string letters_;
};

/// Anticommutation pattern with each generator, in generator order.
std::vector<std::uint8_t> syndrome(const PauliString &error, const std::vector<PauliString> &generators);
std::string syndrome_bits(const PauliString &error, const std::vector<PauliString> &generators);

struct CodeSpec {
    std::string name;
    int n = 0;
    CVector logical_zero;
    CVector logical_one;
    /// E_0 = identity, then the correctable errors in table order (2^(n-1) total).
    std::vector<PauliString> errors;
    /// Stabilizer generators, used for syndrome reporting.
    std::vector<PauliString> stabilizers;
    /// Column 2m + b is E_m |b_L>.
    CMatrix encoding_unitary;
};

/// Builds the column-per-error encoding unitary and certifies it.
/// Throws kNotCorrectable when the Gram matrix deviates from I by more than 1e-10.
CMatrix build_encoding_unitary(int n, const CVector &logical_zero, const CVector &logical_one,
                               const std::vector<PauliString> &errors);

CodeSpec five_qubit_code();
CodeSpec steane_code();
CodeSpec shor_code();

/// "five" | "steane" | "shor".
CodeSpec code_by_name(std::string_view name);
const std::vector<std::string> &code_names();

/// Every Pauli string that fixes both logical states with eigenvalue +1,
/// reduced to an independent generating set. Exhaustive over 4^n strings.
std::vector<PauliString> find_stabilizer_generators(int n, const CVector &logical_zero, const CVector &logical_one);

/// Weight-w Pauli strings in table order: supports in lexicographic order of
/// the sorted qubit tuple, X < Y < Z per position with the last position fastest.
std::vector<PauliString> paulis_of_weight(int n, int w);

struct CodeReport {
    double unitarity_residual = 0.0;
    double logical_orthogonality_residual = 0.0;
    double stabilizer_residual = 0.0;
    bool error_count_ok = false;
    bool syndromes_distinct = false;
    /// Some pair of distinct weight-one errors shares a syndrome.
    bool degenerate = false;
    /// Max deviation of U^dag P |b_L> from a |a_m> (x) |b> image, over weight <= 1 P.
    double single_qubit_correction_residual = 0.0;

    bool ok(double tol = 1e-10) const {
        return error_count_ok && syndromes_distinct && unitarity_residual < tol &&
               logical_orthogonality_residual < tol && stabilizer_residual < tol &&
               single_qubit_correction_residual < tol;
    }
};

CodeReport validate_code(const CodeSpec &code);

}  // namespace qecfluct

#endif
