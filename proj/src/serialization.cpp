// Copyright 2026 The gausscount Authors
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

#include "gausscount/serialization.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "gausscount/error.hpp"

namespace gausscount {

namespace {

[[noreturn]] void schema_error(const std::string &path, const std::string &what) {
    throw Error(ErrorCode::Schema, fmt::format("{}: {}", path, what));
}

std::string at(const std::string &path, std::size_t i) {
    return fmt::format("{}[{}]", path, i);
}

std::string dot(const std::string &path, const char *key) {
    return fmt::format("{}.{}", path, key);
}

const Json &array_at(const Json &j, const std::string &path, std::size_t size) {
    if (!j.is_array()) {
        schema_error(path, "expected an array");
    }
    if (j.size() != size) {
        schema_error(path, fmt::format("expected {} entries, found {}", size, j.size()));
    }
    return j;
}

std::string string_at(const Json &j, const std::string &path) {
    if (!j.is_string()) {
        schema_error(path, "expected a string");
    }
    return j.get<std::string>();
}

std::size_t optional_index(const Json &obj, const char *key, const std::string &path, std::size_t fallback) {
    return obj.contains(key) ? index_at(obj[key], dot(path, key)) : fallback;
}

double optional_number(const Json &obj, const char *key, const std::string &path, double fallback) {
    return obj.contains(key) ? number_at(obj[key], dot(path, key)) : fallback;
}

void require_object(const Json &j, const std::string &path) {
    if (!j.is_object()) {
        schema_error(path, "expected an object");
    }
}

}  // namespace

double number_at(const Json &j, const std::string &path) {
    if (!j.is_number()) {
        schema_error(path, "expected a number");
    }
    double v = j.get<double>();
    if (!std::isfinite(v)) {
        schema_error(path, "expected a finite number");
    }
    return v;
}

std::size_t index_at(const Json &j, const std::string &path) {
    if (j.is_number_unsigned()) {
        return j.get<std::size_t>();
    }
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
        return static_cast<std::size_t>(j.get<std::int64_t>());
    }
    if (j.is_number_float()) {
        double v = j.get<double>();
        if (v >= 0 && v == std::floor(v) && v < 9.0e15) {
            return static_cast<std::size_t>(v);
        }
    }
    schema_error(path, "expected a non-negative integer");
}

const Json &field(const Json &obj, const char *key, const std::string &path) {
    require_object(obj, path);
    auto it = obj.find(key);
    if (it == obj.end()) {
        schema_error(dot(path, key), "missing required field");
    }
    return *it;
}

Json vector_to_json(const Vector &v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i));
    }
    return out;
}

Vector vector_from_json(const Json &j, std::size_t size, const std::string &path) {
    array_at(j, path, size);
    Vector v(static_cast<Eigen::Index>(size));
    for (std::size_t i = 0; i < size; ++i) {
        v(static_cast<Eigen::Index>(i)) = number_at(j[i], at(path, i));
    }
    return v;
}

Json matrix_to_json(const Matrix &m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out.push_back(vector_to_json(m.row(r).transpose()));
    }
    return out;
}

Matrix matrix_from_json(const Json &j, std::size_t rows, std::size_t cols, const std::string &path) {
    array_at(j, path, rows);
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        m.row(static_cast<Eigen::Index>(r)) = vector_from_json(j[r], cols, at(path, r)).transpose();
    }
    return m;
}

Json state_to_json(const GaussianState &rho) {
    return Json{{"n", rho.modes()},
                {"l", vector_to_json(rho.l())},
                {"m", vector_to_json(rho.m())},
                {"S", matrix_to_json(rho.covariance())},
                {"ordering", "pq-blocks"}};
}

GaussianState state_from_json(const Json &j, const std::string &path) {
    std::size_t n = index_at(field(j, "n", path), dot(path, "n"));
    if (n == 0) {
        schema_error(dot(path, "n"), "expected at least one mode");
    }
    if (j.contains("ordering") && string_at(j["ordering"], dot(path, "ordering")) != "pq-blocks") {
        schema_error(dot(path, "ordering"), "only \"pq-blocks\" is supported");
    }
    Vector l = vector_from_json(field(j, "l", path), n, dot(path, "l"));
    Vector m = vector_from_json(field(j, "m", path), n, dot(path, "m"));
    Matrix s = matrix_from_json(field(j, "S", path), 2 * n, 2 * n, dot(path, "S"));
    if (max_abs(s - s.transpose()) > 1e-9 * std::max(1.0, max_abs(s))) {
        schema_error(dot(path, "S"), "covariance must be symmetric");
    }
    return GaussianState(std::move(l), std::move(m), std::move(s));
}

Json channel_to_json(const GaussianChannel &k) {
    return Json{{"n", k.modes()}, {"A", matrix_to_json(k.a())}, {"B", matrix_to_json(k.b())}};
}

GaussianChannel channel_from_json(const Json &j, const std::string &path) {
    std::size_t n = index_at(field(j, "n", path), dot(path, "n"));
    if (n == 0) {
        schema_error(dot(path, "n"), "expected at least one mode");
    }
    Matrix a = matrix_from_json(field(j, "A", path), 2 * n, 2 * n, dot(path, "A"));
    Matrix b = matrix_from_json(field(j, "B", path), 2 * n, 2 * n, dot(path, "B"));
    return GaussianChannel(std::move(a), std::move(b));
}

Json descriptor_to_json(const GateDescriptor &d) {
    Json out{{"kind", gate_kind_name(d.kind)}, {"modes", d.modes}};
    if (d.kind == GateKind::Gsp1) {
        out["x"] = d.x;
        out["alpha"] = d.alpha;
    } else if (d.kind == GateKind::Gsp2) {
        out["U"] = d.unitary == UnitaryLabel::H ? "H" : "K";
        out["x1"] = d.x1;
        out["x2"] = d.x2;
    }
    return out;
}

GateDescriptor descriptor_from_json(const Json &j, const std::string &path) {
    std::string kind = string_at(field(j, "kind", path), dot(path, "kind"));
    std::vector<std::size_t> modes;
    if (j.contains("modes")) {
        const Json &jm = j["modes"];
        if (!jm.is_array()) {
            schema_error(dot(path, "modes"), "expected an array");
        }
        for (std::size_t i = 0; i < jm.size(); ++i) {
            modes.push_back(index_at(jm[i], at(dot(path, "modes"), i)));
        }
    }
    auto need_modes = [&](std::size_t count) {
        if (modes.size() != count) {
            schema_error(dot(path, "modes"), fmt::format("{} takes {} mode index(es)", kind, count));
        }
    };
    if (kind == "identity") {
        need_modes(0);
        return GateDescriptor::identity();
    }
    if (kind == "Gp") {
        need_modes(1);
        return GateDescriptor::gp(modes[0]);
    }
    if (kind == "Gq") {
        need_modes(1);
        return GateDescriptor::gq(modes[0]);
    }
    if (kind == "Gsp1") {
        need_modes(1);
        return GateDescriptor::gsp1(modes[0], number_at(field(j, "x", path), dot(path, "x")),
                                    number_at(field(j, "alpha", path), dot(path, "alpha")));
    }
    if (kind == "Gsp2") {
        need_modes(2);
        std::string u = string_at(field(j, "U", path), dot(path, "U"));
        if (u != "H" && u != "K") {
            schema_error(dot(path, "U"), "expected \"H\" or \"K\"");
        }
        return GateDescriptor::gsp2(modes[0], modes[1], u == "H" ? UnitaryLabel::H : UnitaryLabel::K,
                                    number_at(field(j, "x1", path), dot(path, "x1")),
                                    number_at(field(j, "x2", path), dot(path, "x2")));
    }
    schema_error(dot(path, "kind"), fmt::format("unknown gate kind \"{}\"", kind));
}

Json record_to_json(const MeasurementRecord &r, std::optional<std::size_t> probe) {
    Json out{{"schema", kSchemaVersion},
             {"descriptor", descriptor_to_json(r.descriptor)},
             {"value", r.value},
             {"ensemble_size", nullptr}};
    if (r.ensemble_size) {
        out["ensemble_size"] = *r.ensemble_size;
    }
    if (probe) {
        out["probe"] = *probe;
    }
    return out;
}

MeasurementRecord record_from_json(const Json &j, const std::string &path) {
    std::string schema = string_at(field(j, "schema", path), dot(path, "schema"));
    if (schema != kSchemaVersion) {
        schema_error(dot(path, "schema"), fmt::format("unsupported schema \"{}\"", schema));
    }
    MeasurementRecord r;
    r.descriptor = descriptor_from_json(field(j, "descriptor", path), dot(path, "descriptor"));
    r.value = number_at(field(j, "value", path), dot(path, "value"));
    if (j.contains("ensemble_size") && !j["ensemble_size"].is_null()) {
        std::size_t m = index_at(j["ensemble_size"], dot(path, "ensemble_size"));
        if (m == 0) {
            schema_error(dot(path, "ensemble_size"), "expected a positive integer or null");
        }
        r.ensemble_size = m;
    }
    return r;
}

fock::GateScript script_from_json(const Json &j, const std::string &path) {
    fock::GateScript s;
    s.modes = index_at(field(j, "modes", path), dot(path, "modes"));
    s.dim = optional_index(j, "dim", path, s.modes == 1 ? 64 : 32);
    if (j.contains("input")) {
        const Json &in = j["input"];
        std::string ip = dot(path, "input");
        std::string kind = string_at(field(in, "kind", ip), dot(ip, "kind"));
        if (kind == "thermal") {
            const Json &t = field(in, "t", ip);
            array_at(t, dot(ip, "t"), s.modes);
            for (std::size_t i = 0; i < s.modes; ++i) {
                double ti = number_at(t[i], at(dot(ip, "t"), i));
                if (ti <= 0) {
                    schema_error(at(dot(ip, "t"), i), "thermal parameter must be positive");
                }
                s.thermal_t.push_back(ti);
            }
        } else if (kind != "vacuum") {
            schema_error(dot(ip, "kind"), "expected \"vacuum\" or \"thermal\"");
        }
    }
    const Json &gates = field(j, "gates", path);
    if (!gates.is_array()) {
        schema_error(dot(path, "gates"), "expected an array");
    }
    for (std::size_t g = 0; g < gates.size(); ++g) {
        std::string gp = at(dot(path, "gates"), g);
        const Json &gj = gates[g];
        std::string op = string_at(field(gj, "op", gp), dot(gp, "op"));
        if (op == "displace") {
            s.gates.push_back(fock::DisplaceGate{
                index_at(field(gj, "mode", gp), dot(gp, "mode")),
                Complex(optional_number(gj, "re", gp, 0.0), optional_number(gj, "im", gp, 0.0))});
        } else if (op == "squeeze") {
            s.gates.push_back(fock::SqueezeGate{index_at(field(gj, "mode", gp), dot(gp, "mode")),
                                                number_at(field(gj, "r", gp), dot(gp, "r")),
                                                optional_number(gj, "phi", gp, 0.0)});
        } else if (op == "rotate") {
            s.gates.push_back(fock::RotateGate{index_at(field(gj, "mode", gp), dot(gp, "mode")),
                                               number_at(field(gj, "theta", gp), dot(gp, "theta"))});
        } else if (op == "beamsplitter") {
            const Json &modes = field(gj, "modes", gp);
            array_at(modes, dot(gp, "modes"), 2);
            s.gates.push_back(fock::BeamsplitterGate{index_at(modes[0], at(dot(gp, "modes"), 0)),
                                                     index_at(modes[1], at(dot(gp, "modes"), 1)),
                                                     number_at(field(gj, "theta", gp), dot(gp, "theta")),
                                                     optional_number(gj, "phi", gp, 0.0)});
        } else {
            schema_error(dot(gp, "op"), fmt::format("unknown gate \"{}\"", op));
        }
    }
    s.validate();
    return s;
}

Json script_to_json(const fock::GateScript &s) {
    Json out{{"modes", s.modes}, {"dim", s.dim}};
    if (s.thermal_t.empty()) {
        out["input"] = Json{{"kind", "vacuum"}};
    } else {
        out["input"] = Json{{"kind", "thermal"}, {"t", s.thermal_t}};
    }
    Json gates = Json::array();
    for (const auto &g : s.gates) {
        std::visit(
            [&](const auto &gate) {
                using T = std::decay_t<decltype(gate)>;
                if constexpr (std::is_same_v<T, fock::DisplaceGate>) {
                    gates.push_back({{"op", "displace"}, {"mode", gate.mode}, {"re", gate.u.real()}, {"im", gate.u.imag()}});
                } else if constexpr (std::is_same_v<T, fock::SqueezeGate>) {
                    gates.push_back({{"op", "squeeze"}, {"mode", gate.mode}, {"r", gate.r}, {"phi", gate.phi}});
                } else if constexpr (std::is_same_v<T, fock::RotateGate>) {
                    gates.push_back({{"op", "rotate"}, {"mode", gate.mode}, {"theta", gate.theta}});
                } else {
                    gates.push_back({{"op", "beamsplitter"},
                                     {"modes", {gate.mode_a, gate.mode_b}},
                                     {"theta", gate.theta},
                                     {"phi", gate.phi}});
                }
            },
            g);
    }
    out["gates"] = std::move(gates);
    return out;
}

Json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, fmt::format("cannot open {}", path.string()));
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw Error(ErrorCode::Schema, fmt::format("{}: malformed JSON ({})", path.string(), e.what()));
    }
}

std::vector<Json> read_jsonl_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, fmt::format("cannot open {}", path.string()));
    }
    std::vector<Json> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            out.push_back(Json::parse(line));
        } catch (const Json::parse_error &e) {
            throw Error(ErrorCode::Schema,
                        fmt::format("{}:{}: malformed JSON ({})", path.string(), lineno, e.what()));
        }
    }
    return out;
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, fmt::format("cannot write {}", path.string()));
    }
    out << text;
    if (!out) {
        throw Error(ErrorCode::Io, fmt::format("write failed for {}", path.string()));
    }
}

std::string fnv1a_hex(const std::string &text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", h);
}

}  // namespace gausscount
