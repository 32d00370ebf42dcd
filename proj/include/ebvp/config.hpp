#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ebvp/adapted.hpp"
#include "ebvp/symbol.hpp"
#include "ebvp/types.hpp"

namespace ebvp {

enum class ExperimentKind {
  check_symbol,
  rs_verify,
  ls_check,
  index,
  deform_sweep,
  match_verify,
  greens_check,
  semigroup_check,
};

std::string to_string(ExperimentKind kind);

struct Tolerances {
  Real sv_rel = 1e-9;
  Real clifford = 1e-9;
  Real realpart = 1e-10;
  Real svd_rank = 1e-8;
  Real rank_gap_min = 1e3;
  Real subspace = 1e-10;
  Real order_min = 1.9;
  Real square_function_rel = 0.05;
};

// Declarative per-end boundary condition as written in config files. Graph
// data is fiber-level: W vectors must lie in the matching spectral half; the
// graph matrix acts on the fiber and is compressed to V+^* G V- internally.
struct EndConfig {
  enum class Type { aps, graph, local, pseudolocal };
  Type type = Type::aps;
  std::map<int, Matrix> g_fiber;
  std::map<int, std::vector<Vector>> w_plus;
  std::map<int, std::vector<Vector>> w_minus;
  Matrix local_projector;
  std::map<int, Matrix> pseudo_blocks;
};

struct ModelParams {
  Real L = 1;
  int K = 8;
  int N = 64;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::check_symbol;
  Tolerances tol;
  int sphere_samples = 2048;
  int covector_samples = 64;

  std::optional<LinearSymbol> op;
  std::optional<Metric> metric;
  std::optional<int> dimension;  // rs-verify may name a dimension for the standard seed

  std::optional<BoundaryOperator1D> boundary_operator;
  ModelParams model;
  std::optional<EndConfig> bc_left;
  std::optional<EndConfig> bc_right;
  bool bc_matching = false;

  std::optional<Matrix> ls_projector;
  std::optional<LinearSymbol> adapted_sym;       // sigma_A over boundary covectors
  std::optional<LinearSymbol> adapted_star_sym;  // explicit adjoint symbol (optional)
  std::optional<Matrix> ls_sigma0;               // defaults to the identity

  int deform_steps = 10;
  std::vector<Real> cut_fractions = {0.3, 0.5, 0.7};
  // default keeps band-limited refinement studies inside the asymptotic regime
  // at moderate grid sizes
  int band_limit = 2;
  int refinements = 3;

  std::optional<bool> expect_elliptic;
  std::optional<bool> expect_dirac;
  std::optional<bool> expect_pass;
  std::optional<int> expect_index;

  std::string raw_bytes;  // exact file contents, hashed into the report
};

// Parses and validates; throws ConfigError whose message starts with the JSON
// path of the first offending element.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

}  // namespace ebvp
