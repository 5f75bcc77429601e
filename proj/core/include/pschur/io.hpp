#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pschur/interpolation.hpp"
#include "pschur/matrix.hpp"
#include "pschur/toeplitz.hpp"

namespace pschur {

inline constexpr const char* kVersion = "0.1.0";

enum class Backend { Exact, Float };
enum class InstanceKind { Coeffs, Moments, Matrix, Interpolation, KernelSample };

/// JSON instance payload. Numbers are encoded as strings: "p/q" or
/// "p/q+r/si" Gaussian rationals on the exact backend, decimal literals on
/// the float one. Exact payloads never pass through floating conversion.
struct InstanceFile {
    InstanceKind kind = InstanceKind::Coeffs;
    Backend backend = Backend::Exact;

    std::vector<GaussianRational> exact_seq; // coeffs or moments
    std::vector<cdouble> float_seq;

    ExactMatrix exact_matrix;
    FloatMatrix float_matrix;

    InterpolationInstance interpolation; // float backend only

    std::vector<GaussianRational> exact_points, exact_values; // kernel_sample
    std::vector<cdouble> float_points, float_values;
};

InstanceFile parse_instance(const std::string& json_text);

/// Canonical serialization; parse-then-serialize is the identity on its output.
std::string serialize_instance(const InstanceFile& file);

InstanceFile load_instance(const std::string& path);

/// Everything needed to reproduce a CLI run byte for byte. Timing is
/// informational and excluded from replay comparison.
struct RunRecord {
    std::string command;
    std::string input_digest;
    std::string version;
    std::uint64_t seed = 0;
    std::string outputs;
    double timing_ms = 0.0;
};

std::string serialize_run_record(const RunRecord& record);
RunRecord parse_run_record(const std::string& json_text);

/// FNV-1a 64-bit content digest, hex encoded.
std::string digest_hex(const std::string& bytes);

} // namespace pschur
