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

#include "qecfluct/channel_io.h"

namespace qecfluct {

using nlohmann::json;

namespace {

json complex_matrix_json(const CMatrix &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Complex complex_from_json(const json &v) {
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (v.is_array() && v.size() == 2) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw Error(ErrorKind::kIo, "expected a real or an [re, im] pair, got " + v.dump());
}

const std::string &form_of(const json &j) {
    if (!j.is_object() || !j.contains("form") || !j["form"].is_string() || !j.contains("data")) {
        throw Error(ErrorKind::kIo, "channel JSON needs \"form\" and \"data\"");
    }
    return j["form"].get_ref<const std::string &>();
}

void check_dim(const json &j, Eigen::Index expected) {
    if (j.contains("dim") && j["dim"].get<Eigen::Index>() != expected) {
        throw Error(ErrorKind::kDimension, "declared dim " + j["dim"].dump() + " disagrees with data");
    }
}

}  // namespace

CMatrix complex_matrix_from_json(const json &rows) {
    if (!rows.is_array() || rows.empty()) {
        throw Error(ErrorKind::kIo, "matrix must be a non-empty list of rows");
    }
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto m = static_cast<Eigen::Index>(rows[0].size());
    CMatrix out(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!rows[i].is_array() || static_cast<Eigen::Index>(rows[i].size()) != m) {
            throw Error(ErrorKind::kIo, "ragged matrix rows");
        }
        for (Eigen::Index k = 0; k < m; ++k) {
            out(i, k) = complex_from_json(rows[i][k]);
        }
    }
    return out;
}

json to_json(const PauliTransferMatrix &p) {
    json rows = json::array();
    for (int i = 0; i < 4; ++i) {
        rows.push_back({p(i, 0), p(i, 1), p(i, 2), p(i, 3)});
    }
    return {{"form", "ptm"}, {"dim", 2}, {"data", rows}};
}

json to_json(const ChoiMatrix &c) {
    return {{"form", "choi"}, {"dim", c.dim()}, {"data", complex_matrix_json(c.matrix())}};
}

json to_json(const KrausSet &k) {
    json ops = json::array();
    for (const auto &e : k.ops()) {
        ops.push_back(complex_matrix_json(e));
    }
    return {{"form", "kraus"}, {"dim", k.dim()}, {"data", ops}};
}

json to_json(const NaturalSuperOp &l) {
    return {{"form", "natural"}, {"dim", l.dim()}, {"data", complex_matrix_json(l.matrix())}};
}

json unitary_to_json(const CMatrix &u) {
    return {{"form", "unitary"}, {"dim", u.rows()}, {"data", complex_matrix_json(u)}};
}

KrausSet kraus_from_json(const json &j) {
    const auto &form = form_of(j);
    if (form == "kraus") {
        std::vector<CMatrix> ops;
        for (const auto &m : j.at("data")) {
            ops.push_back(complex_matrix_from_json(m));
        }
        KrausSet k(std::move(ops));
        check_dim(j, k.dim());
        return k;
    }
    if (form == "unitary") {
        CMatrix u = complex_matrix_from_json(j.at("data"));
        check_dim(j, u.rows());
        return KrausSet({u});
    }
    if (form == "choi") {
        ChoiMatrix c(complex_matrix_from_json(j.at("data")));
        check_dim(j, c.dim());
        return choi_to_kraus(c);
    }
    return choi_to_kraus(reshuffle(natural_from_json(j)));
}

NaturalSuperOp natural_from_json(const json &j) {
    const auto &form = form_of(j);
    if (form == "ptm") {
        const auto &rows = j.at("data");
        if (!rows.is_array() || rows.size() != 4) {
            throw Error(ErrorKind::kUnsupportedDimension, "PTM data must be 4x4");
        }
        Eigen::Matrix4d m;
        for (int r = 0; r < 4; ++r) {
            if (!rows[r].is_array() || rows[r].size() != 4) {
                throw Error(ErrorKind::kUnsupportedDimension, "PTM data must be 4x4");
            }
            for (int c = 0; c < 4; ++c) {
                m(r, c) = rows[r][c].get<double>();
            }
        }
        return ptm_to_natural(PauliTransferMatrix(m));
    }
    if (form == "natural") {
        NaturalSuperOp l(complex_matrix_from_json(j.at("data")));
        check_dim(j, l.dim());
        return l;
    }
    if (form == "choi") {
        ChoiMatrix c(complex_matrix_from_json(j.at("data")));
        check_dim(j, c.dim());
        return reshuffle(c);
    }
    if (form == "kraus" || form == "unitary") {
        return kraus_to_natural(kraus_from_json(j));
    }
    throw Error(ErrorKind::kIo, "unknown channel form \"" + form + "\"");
}

PauliTransferMatrix ptm_from_json(const json &j) {
    return natural_to_ptm(natural_from_json(j));
}

json convert_channel_json(const json &j, const std::string &form) {
    if (form == "ptm") {
        return to_json(ptm_from_json(j));
    }
    if (form == "natural") {
        return to_json(natural_from_json(j));
    }
    if (form == "choi") {
        return to_json(reshuffle(natural_from_json(j)));
    }
    if (form == "kraus") {
        return to_json(kraus_from_json(j));
    }
    throw Error(ErrorKind::kInvalidArgument, "cannot convert to form \"" + form + "\"");
}

}  // namespace qecfluct
