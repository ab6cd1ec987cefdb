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

#ifndef QECFLUCT_CHANNEL_IO_H
#define QECFLUCT_CHANNEL_IO_H

#include <string>

#include "json.hpp"
#include "qecfluct/channel.h"

namespace qecfluct {

// Wire format: {"form": "ptm"|"choi"|"kraus"|"natural"|"unitary", "dim": d, "data": ...}.
// Complex entries are [re, im] pairs; PTM entries are plain reals. Kraus data is
// a list of matrices; every matrix is a list of rows.

nlohmann::json to_json(const PauliTransferMatrix &p);
nlohmann::json to_json(const ChoiMatrix &c);
nlohmann::json to_json(const KrausSet &k);
nlohmann::json to_json(const NaturalSuperOp &l);
nlohmann::json unitary_to_json(const CMatrix &u);

/// Decodes any channel form into the natural representation.
NaturalSuperOp natural_from_json(const nlohmann::json &j);
/// Decodes any one-qubit channel form into a PTM.
PauliTransferMatrix ptm_from_json(const nlohmann::json &j);
KrausSet kraus_from_json(const nlohmann::json &j);
CMatrix complex_matrix_from_json(const nlohmann::json &rows);

/// Re-encodes a channel in the requested form.
nlohmann::json convert_channel_json(const nlohmann::json &j, const std::string &form);

}  // namespace qecfluct

#endif
