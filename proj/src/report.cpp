#include "ebvp/report.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ebvp {

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

void append_double(std::string& out, double d) {
  // non-finite values are not representable in JSON; keep them as strings
  if (std::isnan(d)) {
    out += "\"nan\"";
    return;
  }
  if (std::isinf(d)) {
    out += d > 0 ? "\"inf\"" : "\"-inf\"";
    return;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", d);
  out += buf;
}

void append_value(std::string& out, const JsonValue& value) {
  struct Visitor {
    std::string& out;
    void operator()(std::nullptr_t) const { out += "null"; }
    void operator()(bool b) const { out += b ? "true" : "false"; }
    void operator()(std::int64_t i) const {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%" PRId64, i);
      out += buf;
    }
    void operator()(double d) const { append_double(out, d); }
    void operator()(const std::string& s) const { append_escaped(out, s); }
    void operator()(const JsonArray& a) const {
      out.push_back('[');
      bool first = true;
      for (const JsonValue& item : a) {
        if (!first) out.push_back(',');
        first = false;
        append_value(out, item);
      }
      out.push_back(']');
    }
    void operator()(const JsonObject& o) const {
      out.push_back('{');
      bool first = true;
      for (const auto& [key, item] : o) {
        if (!first) out.push_back(',');
        first = false;
        append_escaped(out, key);
        out.push_back(':');
        append_value(out, item);
      }
      out.push_back('}');
    }
  };
  std::visit(Visitor{out}, value.v);
}

std::string format_double(double d) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", d);
  return buf;
}

std::string witness_inline(const JsonObject& witness) {
  std::string out;
  bool first = true;
  for (const auto& [key, value] : witness) {
    if (!first) out += ", ";
    first = false;
    out += key;
    out += "=";
    std::string rendered;
    append_value(rendered, value);
    out += rendered;
  }
  return out;
}

}  // namespace

std::string dump_json(const JsonValue& value) {
  std::string out;
  append_value(out, value);
  return out;
}

JsonValue json_complex(const Complex& z) {
  return JsonValue(JsonArray{JsonValue(z.real()), JsonValue(z.imag())});
}

JsonValue json_matrix(const Matrix& m) {
  JsonArray rows;
  rows.reserve(static_cast<size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    JsonArray row;
    row.reserve(static_cast<size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(json_complex(m(i, j)));
    rows.push_back(JsonValue(std::move(row)));
  }
  return JsonValue(std::move(rows));
}

JsonValue json_real_vector(const RealVector& v) {
  JsonArray out;
  out.reserve(static_cast<size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(JsonValue(v(i)));
  return JsonValue(std::move(out));
}

bool RunReport::all_pass() const {
  for (const Verdict& verdict : verdicts)
    if (!verdict.pass) return false;
  return true;
}

std::string emit_report(const RunReport& report, ReportFormat format) {
  if (format == ReportFormat::json) {
    JsonObject root;
    root["kind"] = JsonValue(report.kind);
    root["config_hash"] = JsonValue(report.config_hash);
    root["tolerances"] = JsonValue(report.tolerances);
    root["evidence"] = JsonValue(report.evidence);
    JsonArray verdicts;
    for (const Verdict& verdict : report.verdicts) {
      JsonObject entry;
      entry["name"] = JsonValue(verdict.name);
      entry["pass"] = JsonValue(verdict.pass);
      entry["witness"] = JsonValue(verdict.witness);
      verdicts.push_back(JsonValue(std::move(entry)));
    }
    root["verdicts"] = JsonValue(std::move(verdicts));
    std::string out = dump_json(JsonValue(std::move(root)));
    out.push_back('\n');
    return out;
  }

  std::ostringstream out;
  out << "kind: " << report.kind << "\n";
  out << "config: " << report.config_hash << "\n";
  for (const Verdict& verdict : report.verdicts) {
    out << "verdict " << verdict.name << ": " << (verdict.pass ? "PASS" : "FAIL");
    const std::string inline_witness = witness_inline(verdict.witness);
    if (!inline_witness.empty()) out << " (" << inline_witness << ")";
    out << "\n";
  }
  for (const auto& [key, value] : report.evidence) {
    std::string rendered;
    append_value(rendered, value);
    out << "evidence " << key << ": " << rendered << "\n";
  }
  for (const auto& [key, value] : report.tolerances) {
    std::string rendered;
    append_value(rendered, value);
    out << "tolerance " << key << ": " << rendered << "\n";
  }
  out << "wall time: " << format_double(report.wall_time_ms) << " ms\n";
  out << "overall: " << (report.all_pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, hash);
  return buf;
}

}  // namespace ebvp
