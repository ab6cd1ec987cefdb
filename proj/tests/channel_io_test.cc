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

#include <gtest/gtest.h>

#include "qecfluct/noise.h"

using namespace qecfluct;
using nlohmann::json;

namespace {

double ptm_gap(const PauliTransferMatrix &a, const PauliTransferMatrix &b) {
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(channel_io, every_form_round_trips) {
    const KrausSet k = appendix_fixture("an_0.948");
    const PauliTransferMatrix p = kraus_to_ptm(k);
    EXPECT_LT(ptm_gap(ptm_from_json(to_json(k)), p), 1e-14);
    EXPECT_LT(ptm_gap(ptm_from_json(to_json(p)), p), 1e-15);
    EXPECT_LT(ptm_gap(ptm_from_json(to_json(kraus_to_choi(k))), p), 1e-14);
    EXPECT_LT(ptm_gap(ptm_from_json(to_json(kraus_to_natural(k))), p), 1e-14);
    EXPECT_LT(ptm_gap(ptm_from_json(json::parse(to_json(k).dump())), p), 1e-14);
}

TEST(channel_io, unitary_form) {
    const json j = {{"form", "unitary"}, {"dim", 2}, {"data", {{0, 1}, {1, 0}}}};
    const PauliTransferMatrix p = ptm_from_json(j);
    EXPECT_LT(ptm_gap(p, PauliTransferMatrix::diagonal(1, 1, -1, -1)), 1e-15);
}

TEST(channel_io, complex_entries_as_pairs) {
    const json rows = {{json::array({0, 0}), json::array({0, -1})}, {json::array({0, 1}), 0}};
    const CMatrix y = complex_matrix_from_json(rows);
    EXPECT_EQ(y(0, 1), Complex(0, -1));
    EXPECT_EQ(y(1, 0), Complex(0, 1));
}

TEST(channel_io, rejects_bad_input) {
    EXPECT_THROW(ptm_from_json(json{{"form", "ptm"}}), Error);
    EXPECT_THROW(ptm_from_json(json{{"form", "banana"}, {"data", 1}}), Error);
    EXPECT_THROW(ptm_from_json(json{{"form", "ptm"}, {"data", {{1, 0}, {0, 1}}}}), Error);
    json k = to_json(appendix_fixture("an_0.918"));
    k["dim"] = 3;
    EXPECT_THROW(ptm_from_json(k), Error);
}

TEST(channel_io, convert_reaches_each_form) {
    const json src = to_json(amplitude_damping_kraus(0.9));
    for (const char *form : {"ptm", "natural", "choi", "kraus"}) {
        const json out = convert_channel_json(src, form);
        EXPECT_EQ(out["form"], form);
        EXPECT_LT(ptm_gap(ptm_from_json(out), ptm_from_json(src)), 1e-13);
    }
    EXPECT_THROW(convert_channel_json(src, "unitary"), Error);
}
