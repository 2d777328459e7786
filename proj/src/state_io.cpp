#include "entkit/state_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace entkit {

namespace {

// 17 significant digits round-trip IEEE doubles exactly.
void append_double(std::string& out, double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    out += buffer;
}

void append_complex(std::string& out, const Complex& z) {
    out += '[';
    append_double(out, z.real());
    out += ',';
    append_double(out, z.imag());
    out += ']';
}

std::string dims_prefix(const std::vector<int>& dims, const char* kind) {
    std::string out = "{\"dims\":[";
    for (size_t i = 0; i < dims.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(dims[i]);
    }
    out += "],\"kind\":\"";
    out += kind;
    out += "\",";
    return out;
}

std::string pure_body(const PureState& psi) {
    std::string out = dims_prefix(psi.dims, "pure");
    out += "\"data\":[";
    for (long i = 0; i < psi.amplitudes.size(); ++i) {
        if (i) out += ',';
        append_complex(out, psi.amplitudes(i));
    }
    out += "]}";
    return out;
}

std::string mixed_body(const DensityOperator& rho) {
    std::string out = dims_prefix(rho.dims, "mixed");
    out += "\"data\":[";
    for (long i = 0; i < rho.matrix.rows(); ++i) {
        if (i) out += ',';
        out += '[';
        for (long j = 0; j < rho.matrix.cols(); ++j) {
            if (j) out += ',';
            append_complex(out, rho.matrix(i, j));
        }
        out += ']';
    }
    out += "]}";
    return out;
}

std::vector<int> read_dims(const nlohmann::json& j) {
    if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty())
        throw std::invalid_argument("state file is missing a dims array");
    std::vector<int> dims;
    for (const auto& d : j["dims"]) {
        if (!d.is_number_integer())
            throw std::invalid_argument("dims entries must be integers");
        dims.push_back(d.get<int>());
    }
    return dims;
}

Complex read_complex(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument("complex entries must be [re, im] pairs");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

PureState read_pure(const nlohmann::json& j, const std::vector<int>& dims) {
    const long d = total_dimension(dims);
    const auto& data = j.at("data");
    if (!data.is_array() || static_cast<long>(data.size()) != d)
        throw std::invalid_argument("pure data length does not match dims");
    Vector v(d);
    for (long i = 0; i < d; ++i) v(i) = read_complex(data[i]);
    return make_pure(dims, std::move(v));
}

DensityOperator read_mixed(const nlohmann::json& j, const std::vector<int>& dims) {
    const long d = total_dimension(dims);
    const auto& data = j.at("data");
    if (!data.is_array() || static_cast<long>(data.size()) != d)
        throw std::invalid_argument("mixed data row count does not match dims");
    Matrix m(d, d);
    for (long i = 0; i < d; ++i) {
        const auto& row = data[i];
        if (!row.is_array() || static_cast<long>(row.size()) != d)
            throw std::invalid_argument("mixed data rows must have dims-product length");
        for (long k = 0; k < d; ++k) m(i, k) = read_complex(row[k]);
    }
    return make_density(dims, std::move(m));
}

StateFile parse_state_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("state file must be a JSON object");
    const auto dims = read_dims(j);
    const std::string kind = j.value("kind", "");
    if (kind == "pure") return read_pure(j, dims);
    if (kind == "mixed") return read_mixed(j, dims);
    throw std::invalid_argument("state kind must be \"pure\" or \"mixed\"");
}

}  // namespace

void write_state(std::ostream& out, const PureState& psi) { out << pure_body(psi); }

void write_state(std::ostream& out, const DensityOperator& rho) {
    out << mixed_body(rho);
}

void write_ensemble(std::ostream& out, const Ensemble& ensemble) {
    out << "{\"kind\":\"ensemble\",\"members\":[";
    for (size_t i = 0; i < ensemble.members.size(); ++i) {
        if (i) out << ',';
        std::string member = dims_prefix(ensemble.members[i].state.dims, "pure");
        member += "\"probability\":";
        append_double(member, ensemble.members[i].probability);
        member += ",\"data\":[";
        const auto& amps = ensemble.members[i].state.amplitudes;
        for (long k = 0; k < amps.size(); ++k) {
            if (k) member += ',';
            append_complex(member, amps(k));
        }
        member += "]}";
        out << member;
    }
    out << "]}";
}

namespace {

template <typename Writer>
void save_to_path(const std::string& path, Writer&& writer) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    writer(out);
    out << '\n';
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

void save_state(const std::string& path, const StateFile& state) {
    save_to_path(path, [&](std::ostream& out) {
        std::visit([&](const auto& s) { write_state(out, s); }, state);
    });
}

void save_ensemble(const std::string& path, const Ensemble& ensemble) {
    save_to_path(path, [&](std::ostream& out) { write_ensemble(out, ensemble); });
}

StateFile load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open state file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_state(buffer.str());
}

StateFile parse_state(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
    return parse_state_json(j);
}

Ensemble parse_ensemble(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || j.value("kind", "") != "ensemble" ||
        !j.contains("members") || !j["members"].is_array())
        throw std::invalid_argument("ensemble file must hold a members array");
    Ensemble ensemble;
    double total = 0.0;
    for (const auto& item : j["members"]) {
        if (!item.contains("probability") || !item["probability"].is_number())
            throw std::invalid_argument("ensemble member lacks a probability");
        const double p = item["probability"].get<double>();
        if (p <= 0.0 || p > 1.0 + 1e-12)
            throw std::invalid_argument("ensemble probability out of (0, 1]");
        total += p;
        const auto dims = read_dims(item);
        ensemble.members.push_back(WeightedState{p, read_pure(item, dims)});
    }
    if (!ensemble.members.empty() && std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("ensemble probabilities do not sum to 1");
    return ensemble;
}

const std::vector<int>& state_dims(const StateFile& state) {
    return std::visit([](const auto& s) -> const std::vector<int>& { return s.dims; },
                      state);
}

}  // namespace entkit
