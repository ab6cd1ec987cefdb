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

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>

namespace qecfluct {

namespace {

CVector basis_superposition(int n, const std::vector<std::pair<const char *, double>> &terms, double scale) {
    CVector v = CVector::Zero(Eigen::Index{1} << n);
    for (const auto &[bits, sign] : terms) {
        Eigen::Index index = 0;
        for (int q = 0; q < n; ++q) {
            index = (index << 1) | (bits[q] == '1' ? 1 : 0);
        }
        v(index) += sign * scale;
    }
    return v;
}

/// Columns E_m |b_L> without any certification.
CMatrix encoding_columns(int n, const CVector &logical_zero, const CVector &logical_one,
                         const std::vector<PauliString> &errors) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    CMatrix u = CMatrix::Zero(dim, static_cast<Eigen::Index>(2 * errors.size()));
    for (size_t m = 0; m < errors.size(); ++m) {
        u.col(static_cast<Eigen::Index>(2 * m)) = errors[m].apply(logical_zero);
        u.col(static_cast<Eigen::Index>(2 * m + 1)) = errors[m].apply(logical_one);
    }
    return u;
}

double gram_residual(const CMatrix &u) {
    return (u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

int syndrome_index(const PauliString &error, const std::vector<PauliString> &generators) {
    int index = 0;
    for (const auto &g : generators) {
        index = (index << 1) | (error.commutes_with(g) ? 0 : 1);
    }
    return index;
}

void require_code_size(int n, const CVector &v, const char *what) {
    if (v.size() != (Eigen::Index{1} << n)) {
        throw Error(ErrorKind::kDimension, std::string(what) + " has the wrong dimension");
    }
}

}  // namespace

PauliString::PauliString(std::string_view letters) {
    letters_.reserve(letters.size());
    for (char c : letters) {
        switch (c) {
            case 'I':
            case '_':
                letters_.push_back('I');
                break;
            case 'X':
            case 'Y':
            case 'Z':
                letters_.push_back(c);
                break;
            default:
                throw Error(ErrorKind::kInvalidArgument, std::string("bad Pauli letter '") + c + "'");
        }
    }
}

PauliString PauliString::identity(int n) {
    return PauliString(std::string(static_cast<size_t>(n), 'I'));
}

PauliString PauliString::single(int n, int qubit, char letter) {
    std::string s(static_cast<size_t>(n), 'I');
    s.at(static_cast<size_t>(qubit)) = letter;
    return PauliString(s);
}

int PauliString::weight() const {
    return static_cast<int>(std::count_if(letters_.begin(), letters_.end(), [](char c) { return c != 'I'; }));
}

std::uint32_t PauliString::x_mask() const {
    std::uint32_t m = 0;
    for (int q = 0; q < size(); ++q) {
        if (letters_[q] == 'X' || letters_[q] == 'Y') {
            m |= 1u << q;
        }
    }
    return m;
}

std::uint32_t PauliString::z_mask() const {
    std::uint32_t m = 0;
    for (int q = 0; q < size(); ++q) {
        if (letters_[q] == 'Z' || letters_[q] == 'Y') {
            m |= 1u << q;
        }
    }
    return m;
}

bool PauliString::commutes_with(const PauliString &other) const {
    const auto overlap = (x_mask() & other.z_mask()) ^ (z_mask() & other.x_mask());
    return std::popcount(overlap) % 2 == 0;
}

CVector PauliString::apply(const CVector &state) const {
    const int n = size();
    if (state.size() != (Eigen::Index{1} << n)) {
        throw Error(ErrorKind::kDimension, "state does not match Pauli string length");
    }
    const Complex i{0.0, 1.0};
    Eigen::Index flip = 0;
    for (int q = 0; q < n; ++q) {
        if (letters_[q] == 'X' || letters_[q] == 'Y') {
            flip |= Eigen::Index{1} << (n - 1 - q);
        }
    }
    CVector out = CVector::Zero(state.size());
    for (Eigen::Index b = 0; b < state.size(); ++b) {
        Complex phase = 1.0;
        for (int q = 0; q < n; ++q) {
            const bool bit = (b >> (n - 1 - q)) & 1;
            if (letters_[q] == 'Z' && bit) {
                phase = -phase;
            } else if (letters_[q] == 'Y') {
                phase *= bit ? -i : i;
            }
        }
        out(b ^ flip) += phase * state(b);
    }
    return out;
}

CMatrix PauliString::matrix() const {
    const Eigen::Index dim = Eigen::Index{1} << size();
    CMatrix m(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        m.col(b) = apply(CVector::Unit(dim, b));
    }
    return m;
}

std::vector<std::uint8_t> syndrome(const PauliString &error, const std::vector<PauliString> &generators) {
    std::vector<std::uint8_t> s;
    s.reserve(generators.size());
    for (const auto &g : generators) {
        s.push_back(error.commutes_with(g) ? 0 : 1);
    }
    return s;
}

std::string syndrome_bits(const PauliString &error, const std::vector<PauliString> &generators) {
    std::string s;
    for (auto bit : syndrome(error, generators)) {
        s.push_back(bit ? '1' : '0');
    }
    return s;
}

CMatrix build_encoding_unitary(int n, const CVector &logical_zero, const CVector &logical_one,
                               const std::vector<PauliString> &errors) {
    require_code_size(n, logical_zero, "logical zero");
    require_code_size(n, logical_one, "logical one");
    if (errors.size() != (size_t{1} << (n - 1))) {
        throw Error(ErrorKind::kInvalidCode, "expected " + std::to_string(1 << (n - 1)) + " errors, got " +
                                                 std::to_string(errors.size()));
    }
    for (const auto &e : errors) {
        if (e.size() != n) {
            throw Error(ErrorKind::kInvalidCode, "error " + e.str() + " has the wrong length");
        }
    }
    CMatrix u = encoding_columns(n, logical_zero, logical_one, errors);
    const double residual = gram_residual(u);
    if (residual > 1e-10) {
        throw Error(ErrorKind::kNotCorrectable, "Gram matrix deviates from identity by " + std::to_string(residual));
    }
    return u;
}

std::vector<PauliString> paulis_of_weight(int n, int w) {
    std::vector<PauliString> out;
    if (w < 0 || w > n) {
        return out;
    }
    std::vector<int> support(static_cast<size_t>(w));
    for (int i = 0; i < w; ++i) {
        support[i] = i;
    }
    static constexpr char kLetters[3] = {'X', 'Y', 'Z'};
    while (true) {
        int combos = 1;
        for (int i = 0; i < w; ++i) {
            combos *= 3;
        }
        for (int c = 0; c < combos; ++c) {
            std::string s(static_cast<size_t>(n), 'I');
            int rest = c;
            for (int i = w - 1; i >= 0; --i) {
                s[support[i]] = kLetters[rest % 3];
                rest /= 3;
            }
            out.emplace_back(s);
        }
        // Next combination in lexicographic order.
        int i = w - 1;
        while (i >= 0 && support[i] == n - w + i) {
            --i;
        }
        if (i < 0) {
            break;
        }
        ++support[i];
        for (int j = i + 1; j < w; ++j) {
            support[j] = support[j - 1] + 1;
        }
    }
    return out;
}

std::vector<PauliString> find_stabilizer_generators(int n, const CVector &logical_zero, const CVector &logical_one) {
    std::vector<PauliString> generators;
    // Row-reduced (x | z) vectors of the generators found so far.
    std::vector<std::uint64_t> basis;
    auto reduce = [&basis](std::uint64_t v) {
        for (auto b : basis) {
            v = std::min(v, v ^ b);
        }
        return v;
    };
    const std::uint64_t total = std::uint64_t{1} << (2 * n);
    for (std::uint64_t code = 1; code < total; ++code) {
        std::string s(static_cast<size_t>(n), 'I');
        for (int q = 0; q < n; ++q) {
            s[q] = "IXYZ"[(code >> (2 * (n - 1 - q))) & 3];
        }
        PauliString p(s);
        const std::uint64_t v = (std::uint64_t{p.x_mask()} << n) | p.z_mask();
        if (reduce(v) == 0) {
            continue;
        }
        if ((p.apply(logical_zero) - logical_zero).cwiseAbs().maxCoeff() > 1e-10 ||
            (p.apply(logical_one) - logical_one).cwiseAbs().maxCoeff() > 1e-10) {
            continue;
        }
        generators.push_back(p);
        basis.push_back(reduce(v));
        std::sort(basis.begin(), basis.end(), std::greater<>());
        if (static_cast<int>(generators.size()) == n - 1) {
            break;
        }
    }
    return generators;
}

CodeSpec five_qubit_code() {
    CodeSpec code;
    code.name = "five";
    code.n = 5;
    code.logical_zero = basis_superposition(
        5,
        {{"00000", +1}, {"10010", +1}, {"01001", +1}, {"10100", +1}, {"01010", +1}, {"11011", -1},
         {"00110", -1}, {"11000", -1}, {"11101", -1}, {"00011", -1}, {"11110", -1}, {"01111", -1},
         {"10001", -1}, {"01100", -1}, {"10111", -1}, {"00101", +1}},
        0.25);
    code.logical_one = basis_superposition(
        5,
        {{"11111", +1}, {"01101", +1}, {"10110", +1}, {"01011", +1}, {"10101", +1}, {"00100", -1},
         {"11001", -1}, {"00111", -1}, {"00010", -1}, {"11100", -1}, {"00001", -1}, {"10000", -1},
         {"01110", -1}, {"10011", -1}, {"01000", -1}, {"11010", +1}},
        0.25);
    code.errors.push_back(PauliString::identity(5));
    for (auto &p : paulis_of_weight(5, 1)) {
        code.errors.push_back(p);
    }
    code.stabilizers = find_stabilizer_generators(5, code.logical_zero, code.logical_one);
    code.encoding_unitary = build_encoding_unitary(5, code.logical_zero, code.logical_one, code.errors);
    return code;
}

CodeSpec steane_code() {
    CodeSpec code;
    code.name = "steane";
    code.n = 7;
    // Hamming [7,4] parity rows, 1-based supports {4,5,6,7}, {2,3,6,7}, {1,3,5,7}.
    const std::vector<std::string> rows = {"IIIXXXX", "IXXIIXX", "XIXIXIX"};
    std::vector<std::uint32_t> x_checks;
    for (const auto &r : rows) {
        PauliString x(r);
        code.stabilizers.push_back(x);
        x_checks.push_back(x.x_mask());
    }
    for (const auto &r : rows) {
        std::string z = r;
        std::replace(z.begin(), z.end(), 'X', 'Z');
        code.stabilizers.emplace_back(z);
    }
    // Orbit of |0000000> under the X-type stabilizer group.
    code.logical_zero = CVector::Zero(128);
    for (int subset = 0; subset < 8; ++subset) {
        std::uint32_t mask = 0;
        for (int g = 0; g < 3; ++g) {
            if (subset & (1 << g)) {
                mask ^= x_checks[g];
            }
        }
        Eigen::Index index = 0;
        for (int q = 0; q < 7; ++q) {
            index = (index << 1) | ((mask >> q) & 1);
        }
        code.logical_zero(index) += 1.0;
    }
    code.logical_zero /= code.logical_zero.norm();
    code.logical_one = PauliString("XXXXXXX").apply(code.logical_zero);

    code.errors.push_back(PauliString::identity(7));
    for (auto &p : paulis_of_weight(7, 1)) {
        code.errors.push_back(p);
    }
    for (int i = 0; i < 7; ++i) {
        for (int j = 0; j < 7; ++j) {
            if (i != j) {
                std::string s(7, 'I');
                s[i] = 'X';
                s[j] = 'Z';
                code.errors.emplace_back(s);
            }
        }
    }
    code.encoding_unitary = build_encoding_unitary(7, code.logical_zero, code.logical_one, code.errors);
    return code;
}

CodeSpec shor_code() {
    CodeSpec code;
    code.name = "shor";
    code.n = 9;
    code.stabilizers = {PauliString("ZZIIIIIII"), PauliString("IZZIIIIII"), PauliString("IIIZZIIII"),
                        PauliString("IIIIZZIII"), PauliString("IIIIIIZZI"), PauliString("IIIIIIIZZ"),
                        PauliString("XXXXXXIII"), PauliString("IIIXXXXXX")};
    CVector block_plus = CVector::Zero(8);
    CVector block_minus = CVector::Zero(8);
    block_plus(0) = block_plus(7) = 1.0 / std::sqrt(2.0);
    block_minus(0) = 1.0 / std::sqrt(2.0);
    block_minus(7) = -1.0 / std::sqrt(2.0);
    auto triple = [](const CVector &b) {
        CVector out(512);
        for (Eigen::Index i = 0; i < 512; ++i) {
            out(i) = b(i >> 6) * b((i >> 3) & 7) * b(i & 7);
        }
        return out;
    };
    code.logical_zero = triple(block_plus);
    code.logical_one = triple(block_minus);

    std::set<int> seen;
    for (int w = 0; w <= 9 && code.errors.size() < 256; ++w) {
        for (auto &p : paulis_of_weight(9, w)) {
            if (seen.insert(syndrome_index(p, code.stabilizers)).second) {
                code.errors.push_back(p);
                if (code.errors.size() == 256) {
                    break;
                }
            }
        }
    }
    if (code.errors.size() != 256) {
        throw Error(ErrorKind::kInvalidCode, "syndrome table incomplete");
    }
    for (const auto &e : code.errors) {
        if (e.weight() > 3) {
            throw Error(ErrorKind::kInvalidCode, "syndrome representative " + e.str() + " exceeds weight 3");
        }
    }
    code.encoding_unitary = build_encoding_unitary(9, code.logical_zero, code.logical_one, code.errors);
    return code;
}

CodeSpec code_by_name(std::string_view name) {
    if (name == "five" || name == "5") {
        return five_qubit_code();
    }
    if (name == "steane" || name == "7") {
        return steane_code();
    }
    if (name == "shor" || name == "9") {
        return shor_code();
    }
    throw Error(ErrorKind::kInvalidArgument, "unknown code \"" + std::string(name) + "\"");
}

const std::vector<std::string> &code_names() {
    static const std::vector<std::string> names = {"five", "steane", "shor"};
    return names;
}

CodeReport validate_code(const CodeSpec &code) {
    CodeReport report;
    const int n = code.n;
    report.error_count_ok = code.errors.size() == (size_t{1} << (n - 1)) && !code.errors.empty() &&
                            code.errors.front() == PauliString::identity(n);

    const Complex overlap = code.logical_zero.dot(code.logical_one);
    report.logical_orthogonality_residual =
        std::max({std::abs(overlap), std::abs(code.logical_zero.norm() - 1.0), std::abs(code.logical_one.norm() - 1.0)});

    const CMatrix u = encoding_columns(n, code.logical_zero, code.logical_one, code.errors);
    report.unitarity_residual = gram_residual(u);
    if (code.encoding_unitary.size() == u.size()) {
        report.unitarity_residual =
            std::max(report.unitarity_residual, (code.encoding_unitary - u).cwiseAbs().maxCoeff());
    } else {
        report.unitarity_residual = std::max(report.unitarity_residual, 1.0);
    }

    for (const auto &g : code.stabilizers) {
        report.stabilizer_residual =
            std::max({report.stabilizer_residual, (g.apply(code.logical_zero) - code.logical_zero).cwiseAbs().maxCoeff(),
                      (g.apply(code.logical_one) - code.logical_one).cwiseAbs().maxCoeff()});
    }

    std::set<int> syndromes;
    for (const auto &e : code.errors) {
        syndromes.insert(syndrome_index(e, code.stabilizers));
    }
    report.syndromes_distinct = syndromes.size() == code.errors.size();

    std::map<int, int> weight_one_classes;
    for (const auto &p : paulis_of_weight(n, 1)) {
        if (++weight_one_classes[syndrome_index(p, code.stabilizers)] > 1) {
            report.degenerate = true;
        }
    }

    if (report.unitarity_residual < 1e-6) {
        std::vector<PauliString> probes = {PauliString::identity(n)};
        for (auto &p : paulis_of_weight(n, 1)) {
            probes.push_back(p);
        }
        for (const auto &p : probes) {
            const CVector v0 = u.adjoint() * p.apply(code.logical_zero);
            const CVector v1 = u.adjoint() * p.apply(code.logical_one);
            Eigen::Index best = 0;
            for (Eigen::Index m = 0; 2 * m < v0.size(); ++m) {
                if (std::abs(v0(2 * m)) > std::abs(v0(2 * best))) {
                    best = m;
                }
            }
            const Complex c = v0(2 * best);
            CVector e0 = CVector::Zero(v0.size());
            CVector e1 = CVector::Zero(v0.size());
            e0(2 * best) = c;
            e1(2 * best + 1) = c;
            report.single_qubit_correction_residual =
                std::max({report.single_qubit_correction_residual, (v0 - e0).cwiseAbs().maxCoeff(),
                          (v1 - e1).cwiseAbs().maxCoeff(), std::abs(std::abs(c) - 1.0)});
        }
    } else {
        report.single_qubit_correction_residual = 1.0;
    }
    return report;
}

}  // namespace qecfluct
