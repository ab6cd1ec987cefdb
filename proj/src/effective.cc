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

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace qecfluct {

namespace {

constexpr double kSupportTol = 1e-13;

CMatrix logical_isometry(const CodeSpec &code) {
    CMatrix l(code.logical_zero.size(), 2);
    l.col(0) = code.logical_zero;
    l.col(1) = code.logical_one;
    return l;
}

void require_layer(const CodeSpec &code, int layer_size) {
    if (layer_size != code.n) {
        throw Error(ErrorKind::kDimension, "layer has " + std::to_string(layer_size) + " channels, code " +
                                               code.name + " needs " + std::to_string(code.n));
    }
}

PauliTransferMatrix project_on_paulis(const std::vector<CMatrix> &outputs) {
    Eigen::Matrix4d eta;
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            eta(mu, nu) = (normalized_pauli(mu).adjoint() * outputs[nu]).trace().real();
        }
    }
    return PauliTransferMatrix(eta);
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

}  // namespace

NoiseLayer NoiseLayer::uniform(int n, const PauliTransferMatrix &p) {
    NoiseLayer layer;
    layer.channels.assign(static_cast<size_t>(n), ptm_to_natural(p));
    return layer;
}

NoiseLayer NoiseLayer::from_ptms(std::span<const PauliTransferMatrix> ptms) {
    NoiseLayer layer;
    for (const auto &p : ptms) {
        layer.channels.push_back(ptm_to_natural(p));
    }
    return layer;
}

std::vector<int> non_cptp_slots(const NoiseLayer &layer, double tol) {
    std::vector<int> bad;
    for (int i = 0; i < layer.size(); ++i) {
        if (min_choi_eigenvalue(reshuffle(layer.channels[i])) < -tol ||
            natural_to_ptm(layer.channels[i]).trace_preservation_residual() > tol) {
            bad.push_back(i);
        }
    }
    return bad;
}

PauliTransferMatrix effective_ptm(const CodeSpec &code, const NoiseLayer &layer) {
    require_layer(code, layer.size());
    const CMatrix &u = code.encoding_unitary;
    const CMatrix u_dag = u.adjoint();
    std::vector<CMatrix> outputs;
    for (int nu = 0; nu < 4; ++nu) {
        CMatrix in = CMatrix::Zero(u.rows(), u.cols());
        in.topLeftCorner(2, 2) = normalized_pauli(nu);
        MultiQubitOperator op = apply_unitary(MultiQubitOperator(std::move(in)), u);
        for (int q = 0; q < code.n; ++q) {
            op = apply_channel_to_qubit(op, q, layer.channels[q]);
        }
        op = apply_unitary(op, u_dag);
        outputs.push_back(partial_trace_keep_last(op));
    }
    return project_on_paulis(outputs);
}

PauliTransferMatrix effective_ptm_dense_oracle(const CodeSpec &code, const NoiseLayer &layer) {
    if (code.n != 5) {
        throw Error(ErrorKind::kUnsupportedDimension, "dense oracle supports n = 5 only");
    }
    require_layer(code, layer.size());
    const int n = code.n;
    const Eigen::Index d = Eigen::Index{1} << n;
    const Eigen::Index dd = d * d;

    // Product superoperator on row-major vec(A), index r * d + c.
    CMatrix lambda(dd, dd);
    for (Eigen::Index a = 0; a < dd; ++a) {
        const Eigen::Index r = a / d, c = a % d;
        for (Eigen::Index b = 0; b < dd; ++b) {
            const Eigen::Index r2 = b / d, c2 = b % d;
            Complex v = 1.0;
            for (int q = 0; q < n && v != 0.0; ++q) {
                const int s = n - 1 - q;
                const Eigen::Index row = ((r >> s) & 1) * 2 + ((c >> s) & 1);
                const Eigen::Index col = ((r2 >> s) & 1) * 2 + ((c2 >> s) & 1);
                v *= layer.channels[q].matrix()(row, col);
            }
            lambda(a, b) = v;
        }
    }
    const CMatrix &u = code.encoding_unitary;
    const CMatrix encode = kron(u, u.conjugate());
    const CMatrix decode = kron(u.adjoint(), u.transpose());

    // Tr over the ancillas: out(b, b') = sum_a in(2a + b, 2a + b').
    CMatrix ptrace = CMatrix::Zero(4, dd);
    for (Eigen::Index a = 0; a < d / 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int b2 = 0; b2 < 2; ++b2) {
                ptrace(b * 2 + b2, (2 * a + b) * d + (2 * a + b2)) = 1.0;
            }
        }
    }

    CMatrix in = CMatrix::Zero(dd, 4);
    for (int nu = 0; nu < 4; ++nu) {
        const CMatrix &s = normalized_pauli(nu);
        for (int b = 0; b < 2; ++b) {
            for (int b2 = 0; b2 < 2; ++b2) {
                in(b * d + b2, nu) = s(b, b2);
            }
        }
    }
    const CMatrix out = ptrace * (decode * (lambda * (encode * in)));

    std::vector<CMatrix> outputs;
    for (int nu = 0; nu < 4; ++nu) {
        outputs.push_back(unvectorize(out.col(nu)));
    }
    return project_on_paulis(outputs);
}

std::vector<Complex> pauli_coefficients(const CMatrix &a) {
    const Eigen::Index d = a.rows();
    if (a.cols() != d || d < 2 || (d & (d - 1)) != 0) {
        throw Error(ErrorKind::kDimension, "expected a 2^n x 2^n operator");
    }
    int n = 0;
    while ((Eigen::Index{1} << n) < d) {
        ++n;
    }
    const size_t size = size_t{1} << (2 * n);
    std::vector<Complex> v(size);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            size_t index = 0;
            for (int i = 0; i < n; ++i) {
                const int s = n - 1 - i;
                index |= static_cast<size_t>(((r >> s) & 1) * 2 + ((c >> s) & 1)) << (2 * s);
            }
            v[index] = a(r, c);
        }
    }
    const double h = 1.0 / std::sqrt(2.0);
    const Complex i_unit{0.0, 1.0};
    for (int i = 0; i < n; ++i) {
        const size_t stride = size_t{1} << (2 * (n - 1 - i));
        for (size_t base = 0; base < size; ++base) {
            if ((base / stride) % 4 != 0) {
                continue;
            }
            const Complex a00 = v[base], a01 = v[base + stride], a10 = v[base + 2 * stride],
                          a11 = v[base + 3 * stride];
            v[base] = h * (a00 + a11);
            v[base + stride] = h * (a01 + a10);
            v[base + 2 * stride] = h * i_unit * (a01 - a10);
            v[base + 3 * stride] = h * (a00 - a11);
        }
    }
    return v;
}

EffectiveChannelEngine::EffectiveChannelEngine(const CodeSpec &code) : n_(code.n) {
    if (n_ < 1 || n_ > 10) {
        throw Error(ErrorKind::kUnsupportedDimension, "engine supports 1..10 qubits");
    }
    const CMatrix l = logical_isometry(code);
    std::vector<std::vector<Complex>> x;
    for (int nu = 0; nu < 4; ++nu) {
        x.push_back(pauli_coefficients(l * normalized_pauli(nu) * l.adjoint()));
    }
    std::vector<std::uint32_t> error_x, error_z;
    for (const auto &e : code.errors) {
        error_x.push_back(e.x_mask());
        error_z.push_back(e.z_mask());
    }

    const size_t size = x[0].size();
    std::vector<std::uint32_t> support;
    for (size_t p = 0; p < size; ++p) {
        for (int nu = 0; nu < 4; ++nu) {
            if (std::abs(x[nu][p]) > kSupportTol) {
                support.push_back(static_cast<std::uint32_t>(p));
                break;
            }
        }
    }
    auto digits_of = [this](std::uint32_t p, std::vector<std::uint8_t> &out) {
        for (int i = 0; i < n_; ++i) {
            out.push_back(static_cast<std::uint8_t>((p >> (2 * (n_ - 1 - i))) & 3));
        }
    };

    const size_t s = support.size();
    out_weights_.assign(4 * s, 0.0);
    in_weights_.assign(4 * s, 0.0);
    for (size_t j = 0; j < s; ++j) {
        const std::uint32_t p = support[j];
        std::uint32_t px = 0, pz = 0;
        for (int i = 0; i < n_; ++i) {
            const auto digit = (p >> (2 * (n_ - 1 - i))) & 3;
            px |= static_cast<std::uint32_t>(digit == 1 || digit == 2) << i;
            pz |= static_cast<std::uint32_t>(digit == 2 || digit == 3) << i;
        }
        double sign_sum = 0.0;
        for (size_t m = 0; m < error_x.size(); ++m) {
            const int parity = std::popcount((error_x[m] & pz) ^ (error_z[m] & px)) & 1;
            sign_sum += parity ? -1.0 : 1.0;
        }
        for (int mu = 0; mu < 4; ++mu) {
            in_weights_[mu * s + j] = x[mu][p].real();
            out_weights_[mu * s + j] = x[mu][p].real() * sign_sum;
        }
    }
    // Decoder terms: keep Q with some nonzero m_mu.
    std::vector<double> kept_out;
    std::vector<std::uint32_t> kept_index;
    std::vector<size_t> kept_j;
    for (size_t j = 0; j < s; ++j) {
        bool any = false;
        for (int mu = 0; mu < 4; ++mu) {
            any = any || std::abs(out_weights_[mu * s + j]) > kSupportTol;
        }
        if (any) {
            kept_j.push_back(j);
            kept_index.push_back(support[j]);
        }
    }
    kept_out.assign(4 * kept_j.size(), 0.0);
    for (size_t t = 0; t < kept_j.size(); ++t) {
        for (int mu = 0; mu < 4; ++mu) {
            kept_out[mu * kept_j.size() + t] = out_weights_[mu * s + kept_j[t]];
        }
    }
    out_weights_ = std::move(kept_out);
    out_index_ = std::move(kept_index);
    in_index_ = support;
    for (auto p : out_index_) {
        digits_of(p, out_digits_);
    }
    for (auto p : in_index_) {
        digits_of(p, in_digits_);
    }
}

PauliTransferMatrix EffectiveChannelEngine::evaluate(std::span<const PauliTransferMatrix> layer) const {
    if (static_cast<int>(layer.size()) != n_) {
        throw Error(ErrorKind::kDimension, "layer has " + std::to_string(layer.size()) + " channels, engine needs " +
                                               std::to_string(n_));
    }
    // table[i * 16 + q * 4 + p] = eta_i(q, p).
    std::vector<double> table(static_cast<size_t>(16 * n_));
    for (int i = 0; i < n_; ++i) {
        for (int q = 0; q < 4; ++q) {
            for (int p = 0; p < 4; ++p) {
                table[i * 16 + q * 4 + p] = layer[i](q, p);
            }
        }
    }
    const size_t s_out = out_index_.size();
    const size_t s_in = in_index_.size();
    Eigen::Matrix4d eta = Eigen::Matrix4d::Zero();
    for (size_t j = 0; j < s_out; ++j) {
        const std::uint8_t *qd = &out_digits_[j * n_];
        double y[4] = {0.0, 0.0, 0.0, 0.0};
        for (size_t k = 0; k < s_in; ++k) {
            const std::uint8_t *pd = &in_digits_[k * n_];
            double t = 1.0;
            for (int i = 0; i < n_ && t != 0.0; ++i) {
                t *= table[i * 16 + qd[i] * 4 + pd[i]];
            }
            if (t == 0.0) {
                continue;
            }
            for (int nu = 0; nu < 4; ++nu) {
                y[nu] += t * in_weights_[nu * s_in + k];
            }
        }
        for (int mu = 0; mu < 4; ++mu) {
            const double w = out_weights_[mu * s_out + j];
            for (int nu = 0; nu < 4; ++nu) {
                eta(mu, nu) += w * y[nu];
            }
        }
    }
    return PauliTransferMatrix(eta);
}

PauliTransferMatrix EffectiveChannelEngine::evaluate(const NoiseLayer &layer) const {
    std::vector<PauliTransferMatrix> ptms;
    for (const auto &c : layer.channels) {
        ptms.push_back(natural_to_ptm(c));
    }
    return evaluate(ptms);
}

AverageRecursionResult average_recursion(const EffectiveChannelEngine &engine, const PauliTransferMatrix &avg0,
                                         int levels) {
    if (levels < 0) {
        throw Error(ErrorKind::kInvalidArgument, "levels must be non-negative");
    }
    if (!is_cptp(avg0)) {
        throw Error(ErrorKind::kNotCptp, "average channel is not CPTP");
    }
    AverageRecursionResult result;
    result.ptms.push_back(avg0);
    result.fidelities.push_back(channel_fidelity(avg0));
    for (int l = 1; l <= levels; ++l) {
        const std::vector<PauliTransferMatrix> layer(static_cast<size_t>(engine.num_qubits()), result.ptms.back());
        result.ptms.push_back(engine.evaluate(layer));
        result.fidelities.push_back(channel_fidelity(result.ptms.back()));
    }
    return result;
}

AverageRecursionResult average_recursion(const CodeSpec &code, const PauliTransferMatrix &avg0, int levels) {
    return average_recursion(EffectiveChannelEngine(code), avg0, levels);
}

}  // namespace qecfluct
