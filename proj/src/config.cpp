#include "ebvp/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace ebvp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void require_keys(const json& j, const std::string& path,
                  const std::set<std::string>& allowed) {
  for (const auto& item : j.items()) {
    if (allowed.find(item.key()) == allowed.end())
      fail(path + "/" + item.key(), "unknown key");
  }
}

Real get_real(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<Real>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

Complex get_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(path, "expected a complex number as [re, im]");
  return Complex(j[0].get<Real>(), j[1].get<Real>());
}

Matrix get_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const size_t rows = j.size();
  size_t cols = 0;
  Matrix m;
  for (size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    const std::string row_path = path + "/" + std::to_string(i);
    if (!row.is_array() || row.empty()) fail(row_path, "expected a non-empty row");
    if (i == 0) {
      cols = row.size();
      m = Matrix(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (row.size() != cols) {
      fail(row_path, "ragged row: expected " + std::to_string(cols) + " entries");
    }
    for (size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          get_complex(row[c], row_path + "/" + std::to_string(c));
  }
  return m;
}

RealMatrix get_real_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const size_t rows = j.size();
  size_t cols = 0;
  RealMatrix m;
  for (size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    const std::string row_path = path + "/" + std::to_string(i);
    if (!row.is_array() || row.empty()) fail(row_path, "expected a non-empty row");
    if (i == 0) {
      cols = row.size();
      m = RealMatrix(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (row.size() != cols) {
      fail(row_path, "ragged row: expected " + std::to_string(cols) + " entries");
    }
    for (size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          get_real(row[c], row_path + "/" + std::to_string(c));
  }
  return m;
}

Vector get_vector(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = get_complex(j[i], path + "/" + std::to_string(i));
  return v;
}

LinearSymbol get_symbol(const json& j, const std::string& path) {
  require_object(j, path);
  require_keys(j, path, {"coefficients"});
  if (!j.contains("coefficients")) fail(path, "missing coefficients");
  const json& coeffs = j["coefficients"];
  const std::string cpath = path + "/coefficients";
  if (!coeffs.is_array() || coeffs.empty())
    fail(cpath, "expected at least 1 coefficient matrix");
  LinearSymbol s;
  for (size_t i = 0; i < coeffs.size(); ++i)
    s.coeffs.push_back(get_matrix(coeffs[i], cpath + "/" + std::to_string(i)));
  try {
    s.validate();
  } catch (const ConfigError& e) {
    fail(cpath, e.what());
  }
  return s;
}

int get_mode_key(const std::string& key, const std::string& path) {
  try {
    size_t used = 0;
    const int k = std::stoi(key, &used);
    if (used != key.size()) throw std::invalid_argument(key);
    return k;
  } catch (const std::exception&) {
    fail(path + "/" + key, "expected an integer mode key");
  }
}

EndConfig get_end_config(const json& j, const std::string& path) {
  require_object(j, path);
  if (!j.contains("type")) fail(path, "missing type");
  if (!j["type"].is_string()) fail(path + "/type", "expected a string");
  const std::string type = j["type"].get<std::string>();

  EndConfig end;
  if (type == "aps") {
    require_keys(j, path, {"type"});
    end.type = EndConfig::Type::aps;
  } else if (type == "graph") {
    require_keys(j, path, {"type", "g", "w_plus", "w_minus"});
    end.type = EndConfig::Type::graph;
    if (j.contains("g")) {
      require_object(j["g"], path + "/g");
      for (const auto& item : j["g"].items()) {
        const int k = get_mode_key(item.key(), path + "/g");
        end.g_fiber[k] = get_matrix(item.value(), path + "/g/" + item.key());
      }
    }
    auto read_w = [&](const char* name, std::map<int, std::vector<Vector>>& out) {
      if (!j.contains(name)) return;
      const std::string wpath = path + "/" + name;
      require_object(j[name], wpath);
      for (const auto& item : j[name].items()) {
        const int k = get_mode_key(item.key(), wpath);
        const json& list = item.value();
        const std::string lpath = wpath + "/" + item.key();
        if (!list.is_array()) fail(lpath, "expected an array of vectors");
        std::vector<Vector> vectors;
        for (size_t i = 0; i < list.size(); ++i)
          vectors.push_back(get_vector(list[i], lpath + "/" + std::to_string(i)));
        out[k] = std::move(vectors);
      }
    };
    read_w("w_plus", end.w_plus);
    read_w("w_minus", end.w_minus);
  } else if (type == "local") {
    require_keys(j, path, {"type", "projector"});
    end.type = EndConfig::Type::local;
    if (!j.contains("projector")) fail(path, "missing projector");
    end.local_projector = get_matrix(j["projector"], path + "/projector");
  } else if (type == "pseudolocal") {
    require_keys(j, path, {"type", "blocks"});
    end.type = EndConfig::Type::pseudolocal;
    if (!j.contains("blocks")) fail(path, "missing blocks");
    require_object(j["blocks"], path + "/blocks");
    for (const auto& item : j["blocks"].items()) {
      const int k = get_mode_key(item.key(), path + "/blocks");
      end.pseudo_blocks[k] = get_matrix(item.value(), path + "/blocks/" + item.key());
    }
  } else {
    fail(path + "/type", "unknown end condition type: " + type);
  }
  return end;
}

ExperimentKind get_kind(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  const std::string s = j.get<std::string>();
  if (s == "check-symbol") return ExperimentKind::check_symbol;
  if (s == "rs-verify") return ExperimentKind::rs_verify;
  if (s == "ls-check") return ExperimentKind::ls_check;
  if (s == "index") return ExperimentKind::index;
  if (s == "deform-sweep") return ExperimentKind::deform_sweep;
  if (s == "match-verify") return ExperimentKind::match_verify;
  if (s == "greens-check") return ExperimentKind::greens_check;
  if (s == "semigroup-check") return ExperimentKind::semigroup_check;
  fail(path, "unknown experiment kind: " + s);
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::check_symbol: return "check-symbol";
    case ExperimentKind::rs_verify: return "rs-verify";
    case ExperimentKind::ls_check: return "ls-check";
    case ExperimentKind::index: return "index";
    case ExperimentKind::deform_sweep: return "deform-sweep";
    case ExperimentKind::match_verify: return "match-verify";
    case ExperimentKind::greens_check: return "greens-check";
    case ExperimentKind::semigroup_check: return "semigroup-check";
  }
  return "unknown";
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("/: JSON parse error: ") + e.what());
  }
  require_object(root, "/");
  require_keys(root, "",
               {"kind", "tolerances", "sphere_samples", "covector_samples",
                "operator", "metric", "dimension", "boundary_operator", "model",
                "bc_left", "bc_right", "bc_matching", "ls_projector",
                "adapted_symbol", "adapted_star_symbol", "ls_sigma0",
                "deform_steps", "cut_fractions", "band_limit", "refinements",
                "expect"});

  ExperimentConfig config;
  config.raw_bytes = json_text;
  if (!root.contains("kind")) fail("/kind", "missing experiment kind");
  config.kind = get_kind(root["kind"], "/kind");

  if (root.contains("tolerances")) {
    const json& tol = root["tolerances"];
    require_object(tol, "/tolerances");
    require_keys(tol, "/tolerances",
                 {"sv_rel", "clifford", "realpart", "svd_rank", "rank_gap_min",
                  "subspace", "order_min", "square_function_rel"});
    auto read = [&](const char* name, Real& out) {
      if (tol.contains(name)) {
        out = get_real(tol[name], std::string("/tolerances/") + name);
        if (!(out > 0)) fail(std::string("/tolerances/") + name, "must be positive");
      }
    };
    read("sv_rel", config.tol.sv_rel);
    read("clifford", config.tol.clifford);
    read("realpart", config.tol.realpart);
    read("svd_rank", config.tol.svd_rank);
    read("rank_gap_min", config.tol.rank_gap_min);
    read("subspace", config.tol.subspace);
    read("order_min", config.tol.order_min);
    read("square_function_rel", config.tol.square_function_rel);
  }

  if (root.contains("sphere_samples")) {
    config.sphere_samples = get_int(root["sphere_samples"], "/sphere_samples");
    if (config.sphere_samples < 8) fail("/sphere_samples", "need at least 8 samples");
  }
  if (root.contains("covector_samples")) {
    config.covector_samples = get_int(root["covector_samples"], "/covector_samples");
    if (config.covector_samples < 1) fail("/covector_samples", "need at least 1 sample");
  }

  if (root.contains("operator")) config.op = get_symbol(root["operator"], "/operator");
  if (root.contains("metric")) {
    Metric metric;
    metric.g = get_real_matrix(root["metric"], "/metric");
    try {
      metric.validate();
    } catch (const ConfigError& e) {
      fail("/metric", e.what());
    }
    config.metric = metric;
  }
  if (root.contains("dimension")) {
    config.dimension = get_int(root["dimension"], "/dimension");
    if (*config.dimension < 2) fail("/dimension", "need dimension >= 2");
  }

  if (root.contains("boundary_operator")) {
    const json& bo = root["boundary_operator"];
    require_object(bo, "/boundary_operator");
    require_keys(bo, "/boundary_operator", {"a", "b", "shift"});
    if (!bo.contains("a") || !bo.contains("b"))
      fail("/boundary_operator", "missing coefficient a or b");
    BoundaryOperator1D op;
    op.a = get_matrix(bo["a"], "/boundary_operator/a");
    op.b = get_matrix(bo["b"], "/boundary_operator/b");
    if (bo.contains("shift")) op.shift = get_real(bo["shift"], "/boundary_operator/shift");
    try {
      op.validate();
    } catch (const ConfigError& e) {
      fail("/boundary_operator", e.what());
    }
    config.boundary_operator = op;
  }

  if (root.contains("model")) {
    const json& model = root["model"];
    require_object(model, "/model");
    require_keys(model, "/model", {"L", "K", "N"});
    if (model.contains("L")) {
      config.model.L = get_real(model["L"], "/model/L");
      if (!(config.model.L > 0)) fail("/model/L", "must be positive");
    }
    if (model.contains("K")) {
      config.model.K = get_int(model["K"], "/model/K");
      if (config.model.K < 0) fail("/model/K", "must be non-negative");
    }
    if (model.contains("N")) {
      config.model.N = get_int(model["N"], "/model/N");
      if (config.model.N < 4) fail("/model/N", "need at least 4 nodes");
    }
  }

  if (root.contains("bc_left"))
    config.bc_left = get_end_config(root["bc_left"], "/bc_left");
  if (root.contains("bc_right"))
    config.bc_right = get_end_config(root["bc_right"], "/bc_right");
  if (root.contains("bc_matching"))
    config.bc_matching = get_bool(root["bc_matching"], "/bc_matching");
  if (config.bc_matching && (config.bc_left || config.bc_right))
    fail("/bc_matching", "matching excludes per-end conditions");

  if (root.contains("ls_projector"))
    config.ls_projector = get_matrix(root["ls_projector"], "/ls_projector");
  if (root.contains("adapted_symbol"))
    config.adapted_sym = get_symbol(root["adapted_symbol"], "/adapted_symbol");
  if (root.contains("adapted_star_symbol"))
    config.adapted_star_sym =
        get_symbol(root["adapted_star_symbol"], "/adapted_star_symbol");
  if (root.contains("ls_sigma0"))
    config.ls_sigma0 = get_matrix(root["ls_sigma0"], "/ls_sigma0");

  if (root.contains("deform_steps")) {
    config.deform_steps = get_int(root["deform_steps"], "/deform_steps");
    if (config.deform_steps < 1) fail("/deform_steps", "need at least one step");
  }
  if (root.contains("cut_fractions")) {
    const json& cuts = root["cut_fractions"];
    if (!cuts.is_array() || cuts.empty())
      fail("/cut_fractions", "expected a non-empty array");
    config.cut_fractions.clear();
    for (size_t i = 0; i < cuts.size(); ++i) {
      const std::string cpath = "/cut_fractions/" + std::to_string(i);
      const Real f = get_real(cuts[i], cpath);
      if (!(f > 0 && f < 1)) fail(cpath, "must lie strictly inside (0, 1)");
      config.cut_fractions.push_back(f);
    }
  }
  if (root.contains("band_limit")) {
    config.band_limit = get_int(root["band_limit"], "/band_limit");
    if (config.band_limit < 0) fail("/band_limit", "must be non-negative");
  }
  if (root.contains("refinements")) {
    config.refinements = get_int(root["refinements"], "/refinements");
    if (config.refinements < 2) fail("/refinements", "need at least 2 grids");
  }

  if (root.contains("expect")) {
    const json& expect = root["expect"];
    require_object(expect, "/expect");
    require_keys(expect, "/expect", {"elliptic", "dirac", "pass", "index"});
    if (expect.contains("elliptic"))
      config.expect_elliptic = get_bool(expect["elliptic"], "/expect/elliptic");
    if (expect.contains("dirac"))
      config.expect_dirac = get_bool(expect["dirac"], "/expect/dirac");
    if (expect.contains("pass"))
      config.expect_pass = get_bool(expect["pass"], "/expect/pass");
    if (expect.contains("index"))
      config.expect_index = get_int(expect["index"], "/expect/index");
  }

  // kind-specific requirements
  switch (config.kind) {
    case ExperimentKind::check_symbol:
      if (!config.op) fail("/operator", "check-symbol requires an operator");
      break;
    case ExperimentKind::rs_verify:
      if (!config.op && !config.dimension)
        fail("/dimension", "rs-verify requires a dimension or an operator seed");
      break;
    case ExperimentKind::ls_check:
      if (!config.adapted_sym)
        fail("/adapted_symbol", "ls-check requires the adapted symbol");
      if (!config.ls_projector)
        fail("/ls_projector", "ls-check requires the projector");
      break;
    case ExperimentKind::index:
    case ExperimentKind::deform_sweep:
    case ExperimentKind::match_verify:
    case ExperimentKind::greens_check:
    case ExperimentKind::semigroup_check:
      if (!config.boundary_operator)
        fail("/boundary_operator", to_string(config.kind) +
                                       " requires the boundary operator");
      break;
  }

  // dimension consistency between operator and metric
  if (config.op && config.metric &&
      config.metric->dimension() != config.op->dimension())
    fail("/metric", "metric dimension does not match the operator");

  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace ebvp
