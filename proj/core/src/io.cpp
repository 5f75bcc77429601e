#include "pschur/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pschur {

namespace {

using Json = nlohmann::ordered_json;

Json parse_json(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    return j;
}

std::string kind_name(InstanceKind k) {
    switch (k) {
        case InstanceKind::Coeffs: return "coeffs";
        case InstanceKind::Moments: return "moments";
        case InstanceKind::Matrix: return "matrix";
        case InstanceKind::Interpolation: return "interpolation";
        case InstanceKind::KernelSample: return "kernel_sample";
    }
    return "?";
}

InstanceKind kind_from(const std::string& s) {
    if (s == "coeffs") return InstanceKind::Coeffs;
    if (s == "moments") return InstanceKind::Moments;
    if (s == "matrix") return InstanceKind::Matrix;
    if (s == "interpolation") return InstanceKind::Interpolation;
    if (s == "kernel_sample") return InstanceKind::KernelSample;
    throw ParseError("unknown instance kind '" + s + "'");
}

std::string require_string(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw ParseError(std::string("expected string field '") + key + "'");
    return j[key].get<std::string>();
}

const Json& require_array(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        throw ParseError(std::string("expected array field '") + key + "'");
    return j[key];
}

template <class S, class ParseFn>
std::vector<S> parse_number_array(const Json& arr, ParseFn parse) {
    std::vector<S> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_string()) throw ParseError("numbers must be encoded as strings");
        out.push_back(parse(v.get<std::string>()));
    }
    return out;
}

template <class S, class ParseFn>
Matrix<S> parse_matrix(const Json& rows, ParseFn parse) {
    if (rows.empty()) throw ParseError("matrix needs at least one row");
    const std::size_t n = rows.size();
    Matrix<S> m(n, rows[0].size());
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != m.cols())
            throw ParseError("matrix rows must be arrays of equal length");
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!rows[i][j].is_string()) throw ParseError("numbers must be encoded as strings");
            m(i, j) = parse(rows[i][j].get<std::string>());
        }
    }
    return m;
}

} // namespace

InstanceFile parse_instance(const std::string& json_text) {
    const Json j = parse_json(json_text);
    if (!j.is_object()) throw ParseError("instance must be a JSON object");

    InstanceFile file;
    file.kind = kind_from(require_string(j, "kind"));
    const std::string backend = require_string(j, "backend");
    if (backend == "exact")
        file.backend = Backend::Exact;
    else if (backend == "float")
        file.backend = Backend::Float;
    else
        throw ParseError("backend must be 'exact' or 'float'");

    const bool exact = file.backend == Backend::Exact;
    switch (file.kind) {
        case InstanceKind::Coeffs:
        case InstanceKind::Moments: {
            const char* key = file.kind == InstanceKind::Coeffs ? "coeffs" : "moments";
            if (exact)
                file.exact_seq = parse_number_array<GaussianRational>(require_array(j, key),
                                                                      parse_gaussian_rational);
            else
                file.float_seq = parse_number_array<cdouble>(require_array(j, key), parse_cdouble);
            break;
        }
        case InstanceKind::Matrix: {
            if (exact)
                file.exact_matrix =
                    parse_matrix<GaussianRational>(require_array(j, "entries"), parse_gaussian_rational);
            else
                file.float_matrix = parse_matrix<cdouble>(require_array(j, "entries"), parse_cdouble);
            break;
        }
        case InstanceKind::Interpolation: {
            if (exact)
                throw ParseError("interpolation instances use the float backend");
            file.interpolation.points =
                parse_number_array<cdouble>(require_array(j, "points"), parse_cdouble);
            file.interpolation.A_values =
                parse_number_array<cdouble>(require_array(j, "A"), parse_cdouble);
            file.interpolation.B_values =
                parse_number_array<cdouble>(require_array(j, "B"), parse_cdouble);
            const cdouble w0 = parse_cdouble(require_string(j, "base_point"));
            bool found = false;
            for (std::size_t i = 0; i < file.interpolation.points.size(); ++i)
                if (file.interpolation.points[i] == w0) {
                    file.interpolation.base_index = i;
                    found = true;
                    break;
                }
            if (!found) throw ParseError("base_point must be one of the points");
            file.interpolation.validate();
            break;
        }
        case InstanceKind::KernelSample: {
            if (exact) {
                file.exact_points = parse_number_array<GaussianRational>(require_array(j, "points"),
                                                                         parse_gaussian_rational);
                file.exact_values = parse_number_array<GaussianRational>(require_array(j, "values"),
                                                                         parse_gaussian_rational);
            } else {
                file.float_points = parse_number_array<cdouble>(require_array(j, "points"), parse_cdouble);
                file.float_values = parse_number_array<cdouble>(require_array(j, "values"), parse_cdouble);
            }
            break;
        }
    }
    return file;
}

std::string serialize_instance(const InstanceFile& file) {
    Json j;
    j["kind"] = kind_name(file.kind);
    j["backend"] = file.backend == Backend::Exact ? "exact" : "float";
    const bool exact = file.backend == Backend::Exact;

    auto exact_array = [](const std::vector<GaussianRational>& v) {
        Json a = Json::array();
        for (const auto& x : v) a.push_back(x.str());
        return a;
    };
    auto float_array = [](const std::vector<cdouble>& v) {
        Json a = Json::array();
        for (const auto& x : v) a.push_back(format_cdouble(x));
        return a;
    };

    switch (file.kind) {
        case InstanceKind::Coeffs:
        case InstanceKind::Moments: {
            const char* key = file.kind == InstanceKind::Coeffs ? "coeffs" : "moments";
            j[key] = exact ? exact_array(file.exact_seq) : float_array(file.float_seq);
            break;
        }
        case InstanceKind::Matrix: {
            Json rows = Json::array();
            if (exact) {
                for (std::size_t i = 0; i < file.exact_matrix.rows(); ++i) {
                    Json row = Json::array();
                    for (std::size_t k = 0; k < file.exact_matrix.cols(); ++k)
                        row.push_back(file.exact_matrix(i, k).str());
                    rows.push_back(row);
                }
            } else {
                for (std::size_t i = 0; i < file.float_matrix.rows(); ++i) {
                    Json row = Json::array();
                    for (std::size_t k = 0; k < file.float_matrix.cols(); ++k)
                        row.push_back(format_cdouble(file.float_matrix(i, k)));
                    rows.push_back(row);
                }
            }
            j["entries"] = rows;
            break;
        }
        case InstanceKind::Interpolation: {
            j["points"] = float_array(file.interpolation.points);
            j["A"] = float_array(file.interpolation.A_values);
            j["B"] = float_array(file.interpolation.B_values);
            j["base_point"] = format_cdouble(file.interpolation.w0());
            break;
        }
        case InstanceKind::KernelSample: {
            j["points"] = exact ? exact_array(file.exact_points) : float_array(file.float_points);
            j["values"] = exact ? exact_array(file.exact_values) : float_array(file.float_values);
            break;
        }
    }
    return j.dump(2) + "\n";
}

InstanceFile load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string serialize_run_record(const RunRecord& record) {
    Json j;
    j["command"] = record.command;
    j["input_digest"] = record.input_digest;
    j["version"] = record.version;
    j["seed"] = record.seed;
    j["outputs"] = record.outputs;
    j["timing_ms"] = record.timing_ms;
    return j.dump(2) + "\n";
}

RunRecord parse_run_record(const std::string& json_text) {
    const Json j = parse_json(json_text);
    RunRecord record;
    record.command = require_string(j, "command");
    record.input_digest = require_string(j, "input_digest");
    record.version = require_string(j, "version");
    if (!j.contains("seed") || !j["seed"].is_number_unsigned())
        throw ParseError("run record needs an unsigned 'seed'");
    record.seed = j["seed"].get<std::uint64_t>();
    record.outputs = require_string(j, "outputs");
    record.timing_ms = j.value("timing_ms", 0.0);
    return record;
}

std::string digest_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace pschur
