#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ebvp/types.hpp"

namespace ebvp {

// Minimal JSON value tree with deterministic serialization: object keys are
// kept sorted (std::map) and doubles print as %.17g, so identical reports are
// byte-identical. Parsing/validation of foreign JSON uses nlohmann; this type
// exists because its writer cannot pin the float format.
struct JsonValue;
using JsonArray = std::vector<JsonValue>;
using JsonObject = std::map<std::string, JsonValue>;

struct JsonValue {
  std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, JsonArray,
               JsonObject>
      v = nullptr;

  JsonValue() = default;
  JsonValue(std::nullptr_t) {}
  JsonValue(bool b) : v(b) {}
  JsonValue(int i) : v(static_cast<std::int64_t>(i)) {}
  JsonValue(long i) : v(static_cast<std::int64_t>(i)) {}
  JsonValue(long long i) : v(static_cast<std::int64_t>(i)) {}
  JsonValue(double d) : v(d) {}
  JsonValue(const char* s) : v(std::string(s)) {}
  JsonValue(std::string s) : v(std::move(s)) {}
  JsonValue(JsonArray a) : v(std::move(a)) {}
  JsonValue(JsonObject o) : v(std::move(o)) {}
};

std::string dump_json(const JsonValue& value);

JsonValue json_complex(const Complex& z);          // [re, im]
JsonValue json_matrix(const Matrix& m);            // row-major nested [re, im]
JsonValue json_real_vector(const RealVector& v);

struct Verdict {
  std::string name;
  bool pass = false;
  JsonObject witness;  // at least one numeric entry
};

struct RunReport {
  std::string kind;
  std::vector<Verdict> verdicts;
  JsonObject evidence;
  std::string config_hash;
  JsonObject tolerances;
  double wall_time_ms = 0;

  bool all_pass() const;
};

enum class ReportFormat { text, json };

// text includes the wall time; json omits it so identical configs serialize to
// identical bytes.
std::string emit_report(const RunReport& report, ReportFormat format);

// FNV-1a 64-bit over raw bytes, hex-encoded; identifies the producing config.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace ebvp
