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

#include "su2design/tables.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace su2design {

const TableSet& builtin_tables() {
    static const TableSet tables = [] {
        TableSet t;
        t.design = {
            {"I", {0, 90, 0}},
            {"iX", {0, -45, 0}},
            {"-iY", {45, 90, -45}},
            {"iZ", {-45, 90, -45}},
            {"(I+iX-iY+iZ)/2", {0, 90, -45}},
            {"(I+iX+iY+iZ)/2", {-45, 90, 0}},
            {"(I-iX-iY+iZ)/2", {45, 90, 0}},
            {"(I-iX+iY+iZ)/2", {0, 90, 45}},
            {"(I+iX-iY-iZ)/2", {45, -45, 0}},
            {"(I+iX+iY-iZ)/2", {0, -45, 45}},
            {"(I-iX-iY-iZ)/2", {0, 45, -45}},
            {"(I-iX+iY-iZ)/2", {-45, 45, 0}},
        };
        t.p = {
            {"p1", {0, 0, 0, 0}},       {"p2", {0, 0, 0, 22.5}}, {"p3", {0, 0, 0, 45}},
            {"p4", {0, 0, 22.5, 0}},    {"p5", {0, 22.5, 0, 0}}, {"p6", {0, 22.5, 0, 22.5}},
            {"p7", {0, 22.5, 22.5, 0}}, {"p8", {0, 45, 0, 0}},   {"p9", {0, 45, 0, 22.5}},
        };
        t.q = {
            {"q1", {0, 0, 0, 0}},          {"q2", {0, 0, 0, 22.5}},
            {"q3", {0, 0, 0, 60}},         {"q4", {0, 0, 22.5, 0}},
            {"q5", {0, 0, 22.5, 22.5}},    {"q6", {0, 0, 45, 22.5}},
            {"q7", {0, 22.5, 0, 0}},       {"q8", {0, 22.5, 0, 22.5}},
            {"q9", {0, 22.5, 0, 60}},      {"q10", {0, 22.5, 22.5, 0}},
            {"q11", {0, 22.5, 22.5, 22.5}}, {"q12", {0, 45, 0, 0}},
            {"q13", {0, 45, 0, 22.5}},     {"q14", {0, 45, 0, 60}},
            {"q15", {0, 45, 22.5, 0}},     {"q16", {0, 45, 22.5, 22.5}},
            {"q17", {0, 60, 0, 0}},        {"q18", {0, 60, 0, 22.5}},
            {"q19", {0, 60, 0, 60}},       {"q20", {0, 60, 22.5, 0}},
            {"q21", {0, 60, 22.5, 22.5}},  {"q22", {0, 120, 0, 0}},
            {"q23", {0, 120, 0, 22.5}},    {"q24", {0, 120, 0, 60}},
            {"q25", {0, 120, 22.5, 0}},
        };
        t.r = {
            {"r1", {94.0, 117.3, 64.9, 24.5}},  {"r2", {129.5, 67.1, 118.3, 6.8}},
            {"r3", {112.8, 67.9, 159.2, 3.6}},  {"r4", {179.7, 11.36, 24.6, 108.1}},
            {"r5", {1.9, 114.0, 162.5, 160.7}},
        };
        return t;
    }();
    return tables;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    return out;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path, std::size_t columns) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open table file: " + path);
    }
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        auto fields = split_csv_line(line);
        if (first) {
            first = false;
            continue;  // header
        }
        if (fields.size() != columns) {
            throw std::runtime_error("malformed row in " + path + ": '" + line + "'");
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

double parse_angle(const std::string& s, const std::string& path) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("bad angle '" + s + "' in " + path);
    }
}

}  // namespace

std::vector<DesignSetting> load_design_csv(const std::string& path) {
    std::vector<DesignSetting> out;
    for (const auto& row : read_csv(path, 4)) {
        out.push_back({row[0],
                       {parse_angle(row[1], path), parse_angle(row[2], path),
                        parse_angle(row[3], path)}});
    }
    return out;
}

std::vector<ProbeSetting> load_probe_csv(const std::string& path) {
    std::vector<ProbeSetting> out;
    for (const auto& row : read_csv(path, 5)) {
        out.push_back({row[0],
                       {parse_angle(row[1], path), parse_angle(row[2], path),
                        parse_angle(row[3], path), parse_angle(row[4], path)}});
    }
    return out;
}

TableSet load_tables(const std::string& dir) {
    TableSet t;
    t.design = load_design_csv(dir + "/table1_design.csv");
    t.p = load_probe_csv(dir + "/table2_p.csv");
    t.q = load_probe_csv(dir + "/table3_q.csv");
    t.r = load_probe_csv(dir + "/table4_r.csv");
    return t;
}

const ProbeSetting* find_probe(const TableSet& tables, const std::string& label) {
    for (const auto* group : {&tables.p, &tables.q, &tables.r}) {
        for (const auto& s : *group) {
            if (s.label == label) {
                return &s;
            }
        }
    }
    return nullptr;
}

}  // namespace su2design
