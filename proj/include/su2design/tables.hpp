// Copyright 2026 The su2design Authors
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

#ifndef SU2DESIGN_TABLES_HPP
#define SU2DESIGN_TABLES_HPP

#include <string>
#include <vector>

#include "su2design/su2core.hpp"

namespace su2design {

/// One row of the design table: which element the three process plates realize.
struct DesignSetting {
    std::string label;
    ProcessAngles angles;
};

/// One row of a probe table: a (Q_in, Q_out) configuration selecting one
/// physical polynomial.
struct ProbeSetting {
    std::string label;
    ProbeAngles angles;
};

/// The four bundled tables: the twelve design-element settings and the probe
/// settings p1..p9 (degree-2), q1..q25 (degree-4), r1..r5 (degree-6).
struct TableSet {
    std::vector<DesignSetting> design;
    std::vector<ProbeSetting> p;
    std::vector<ProbeSetting> q;
    std::vector<ProbeSetting> r;
};

/// Compiled-in copy of the bundled tables. The CSV files under data/ carry the
/// same values; a test keeps the two in sync.
const TableSet& builtin_tables();

/// Reads table1_design.csv, table2_p.csv, table3_q.csv and table4_r.csv from
/// `dir`. Throws std::runtime_error on missing files or malformed rows.
TableSet load_tables(const std::string& dir);

std::vector<DesignSetting> load_design_csv(const std::string& path);
std::vector<ProbeSetting> load_probe_csv(const std::string& path);

/// Looks a probe setting up by label across the p/q/r tables; null if absent.
const ProbeSetting* find_probe(const TableSet& tables, const std::string& label);

}  // namespace su2design

#endif
