#include "ebvp/experiments.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

#include "ebvp/cylinder.hpp"
#include "ebvp/rarita_schwinger.hpp"
#include "ebvp/sampling.hpp"
#include "ebvp/subspace.hpp"

namespace ebvp {

namespace {

JsonObject tolerances_json(const Tolerances& t) {
  JsonObject out;
  out["sv_rel"] = JsonValue(t.sv_rel);
  out["clifford"] = JsonValue(t.clifford);
  out["realpart"] = JsonValue(t.realpart);
  out["svd_rank"] = JsonValue(t.svd_rank);
  out["rank_gap_min"] = JsonValue(t.rank_gap_min);
  out["subspace"] = JsonValue(t.subspace);
  out["order_min"] = JsonValue(t.order_min);
  out["square_function_rel"] = JsonValue(t.square_function_rel);
  return out;
}

JsonValue json_gap(Real gap) {
  if (std::isinf(gap)) return JsonValue("inf");
  return JsonValue(gap);
}

// Realizes a declarative end condition over the adapted operator of that end
// (A at the left, -A at the right). Graph data is validated against the
// spectral halves; the fiber-level graph matrix is compressed to coordinates.
EndCondition build_end_condition(const EndConfig& end, const BoundaryOperator1D& op,
                                 int K, Real realpart_tol, Real subspace_tol,
                                 const std::string& path) {
  switch (end.type) {
    case EndConfig::Type::aps:
      return APSCondition{};
    case EndConfig::Type::local:
      if (end.local_projector.rows() != op.fiber_rank() ||
          end.local_projector.cols() != op.fiber_rank())
        throw ConfigError(path + "/projector: must be fiber-sized");
      return LocalCondition{end.local_projector};
    case EndConfig::Type::pseudolocal: {
      PseudoLocalCondition cond;
      for (int k = -K; k <= K; ++k) {
        auto it = end.pseudo_blocks.find(k);
        if (it == end.pseudo_blocks.end())
          throw ConfigError(path + "/blocks: missing mode " + std::to_string(k));
        cond.blocks.push_back(it->second);
      }
      return cond;
    }
    case EndConfig::Type::graph:
      break;
  }

  const Eigen::Index r = op.fiber_rank();
  const ModeSplits splits = mode_split(op, K, realpart_tol);
  GraphBC bc;
  bc.K = K;
  for (int k = -K; k <= K; ++k) {
    const SpectralSplit& split = splits.at(k);
    const Matrix vm0 = chi_minus_range(split);
    const Matrix vp0 = chi_plus_range(split);

    auto stacked = [&](const std::map<int, std::vector<Vector>>& source,
                       const Matrix& half, const char* name) {
      Matrix out(r, 0);
      auto it = source.find(k);
      if (it == source.end()) return out;
      const Matrix proj = projector_onto(half);
      out = Matrix(r, static_cast<Eigen::Index>(it->second.size()));
      for (size_t i = 0; i < it->second.size(); ++i) {
        const Vector& w = it->second[i];
        if (w.size() != r)
          throw ConfigError(path + "/" + name + "/" + std::to_string(k) +
                            ": vector has wrong fiber dimension");
        if (w.norm() == 0)
          throw ConfigError(path + "/" + name + "/" + std::to_string(k) +
                            ": zero vector");
        if ((proj * w - w).norm() > subspace_tol * w.norm() * 1e2)
          throw ConfigError(path + "/" + name + "/" + std::to_string(k) +
                            ": vector leaves its spectral half");
        out.col(static_cast<Eigen::Index>(i)) = w;
      }
      return out;
    };

    GraphBlock blk;
    blk.Wminus = orthonormal_basis(stacked(end.w_minus, vm0, "w_minus"));
    blk.Wplus = orthonormal_basis(stacked(end.w_plus, vp0, "w_plus"));
    blk.Vminus = complement_within(vm0, blk.Wminus);
    blk.Vplus = complement_within(vp0, blk.Wplus);

    Matrix g_fiber = Matrix::Zero(r, r);
    auto it = end.g_fiber.find(k);
    if (it != end.g_fiber.end()) {
      if (it->second.rows() != r || it->second.cols() != r)
        throw ConfigError(path + "/g/" + std::to_string(k) +
                          ": must be a fiber-sized matrix");
      g_fiber = it->second;
    }
    blk.g = blk.Vplus.adjoint() * g_fiber * blk.Vminus;
    blk.validate(split);
    bc.blocks.push_back(std::move(blk));
  }
  return bc;
}

CylinderModel model_from_config(const ExperimentConfig& config) {
  const BoundaryOperator1D& A = *config.boundary_operator;
  if (config.bc_matching)
    return CylinderModel::make_matching(config.model.L, config.model.K,
                                        config.model.N, A, config.tol.realpart);
  const EndConfig left_cfg = config.bc_left.value_or(EndConfig{});
  const EndConfig right_cfg = config.bc_right.value_or(EndConfig{});
  const EndCondition left =
      build_end_condition(left_cfg, A, config.model.K, config.tol.realpart,
                          config.tol.subspace, "/bc_left");
  const EndCondition right =
      build_end_condition(right_cfg, A.negated(), config.model.K,
                          config.tol.realpart, config.tol.subspace, "/bc_right");
  return CylinderModel::make(config.model.L, config.model.K, config.model.N, A,
                             left, right, config.tol.realpart);
}

void run_check_symbol(const ExperimentConfig& config, RunReport& report) {
  const LinearSymbol& op = *config.op;
  const Metric metric = config.metric.value_or(Metric::identity(op.dimension()));
  const SymbolReport sym =
      check_ellipticity(op, metric, config.sphere_samples, config.tol.sv_rel);

  {
    Verdict v;
    v.name = "elliptic";
    const bool expected = config.expect_elliptic.value_or(true);
    v.pass = sym.elliptic == expected;
    v.witness["min_sv"] = JsonValue(sym.min_sv);
    v.witness["observed"] = JsonValue(sym.elliptic);
    v.witness["expected"] = JsonValue(expected);
    report.verdicts.push_back(std::move(v));
  }
  {
    Verdict v;
    v.name = "dirac_type";
    v.pass = config.expect_dirac ? sym.dirac_type == *config.expect_dirac : true;
    v.witness["clifford_residual"] = JsonValue(sym.clifford_residual);
    v.witness["observed"] = JsonValue(sym.dirac_type);
    report.verdicts.push_back(std::move(v));
  }
  {
    Verdict v;
    v.name = "norm_bound";
    v.pass = !sym.dirac_type || std::abs(sym.norm_bound_C - 1) <= 1e-6;
    v.witness["norm_bound_C"] = JsonValue(sym.norm_bound_C);
    report.verdicts.push_back(std::move(v));
  }
  report.evidence["witness_xi"] = json_real_vector(sym.witness_xi);
  report.evidence["square"] = JsonValue(sym.square);
}

void run_rs_verify(const ExperimentConfig& config, RunReport& report) {
  const int n = config.dimension ? *config.dimension
                                 : (config.op ? config.op->dimension() : 0);
  const LinearSymbol seed = config.op ? *config.op : dirac_symbol(n);
  const Metric metric = Metric::identity(seed.dimension());
  const RSBundleData rs = build_rs(seed, metric);
  const int m = rs.m;
  const int dim = rs.n;

  Real identity_residual = 0;
  identity_residual = std::max(
      identity_residual,
      (rs.gamma * rs.iota - Matrix::Identity(m, m)).cwiseAbs().maxCoeff());
  identity_residual = std::max(
      identity_residual,
      (rs.iota.adjoint() - rs.gamma / double(dim)).cwiseAbs().maxCoeff());
  identity_residual = std::max(
      identity_residual, (rs.P32 * rs.P32 - rs.P32).cwiseAbs().maxCoeff());
  identity_residual = std::max(
      identity_residual, (rs.P32 - rs.P32.adjoint()).cwiseAbs().maxCoeff());
  {
    Verdict v;
    v.name = "identities";
    v.pass = identity_residual <= 1e-12;
    v.witness["max_residual"] = JsonValue(identity_residual);
    report.verdicts.push_back(std::move(v));
  }

  const Real small_eig = std::pow(Real(dim - 2) / Real(dim), 2);
  const auto samples = unit_sphere_samples(dim, config.covector_samples);
  Real worst = 0;
  bool multiplicities_ok = true;
  RealVector example_eigs;
  for (const RealVector& xi : samples) {
    const RSSymbolEvaluation eval = rs_symbol(rs, xi);
    if (example_eigs.size() == 0) example_eigs = eval.gram_eigs;
    int big = 0, small = 0;
    for (Eigen::Index i = 0; i < eval.gram_eigs.size(); ++i) {
      const Real e = eval.gram_eigs(i);
      const Real d_big = std::abs(e - 1);
      const Real d_small = std::abs(e - small_eig);
      worst = std::max(worst, std::min(d_big, d_small));
      if (d_big <= d_small)
        ++big;
      else
        ++small;
    }
    if (big != (dim - 2) * m || small != m) multiplicities_ok = false;
  }
  {
    Verdict v;
    v.name = "gram_eigenvalues";
    v.pass = worst <= config.tol.sv_rel && multiplicities_ok;
    v.witness["worst_deviation"] = JsonValue(worst);
    v.witness["samples"] = JsonValue(static_cast<int>(samples.size()));
    v.witness["expected_small"] = JsonValue(small_eig);
    report.verdicts.push_back(std::move(v));
  }

  const LinearSymbol reduced = rs_linear_symbol(rs);
  const SymbolReport sym =
      check_ellipticity(reduced, metric, config.sphere_samples, config.tol.sv_rel);
  {
    Verdict v;
    v.name = "elliptic";
    v.pass = sym.elliptic;
    v.witness["min_sv"] = JsonValue(sym.min_sv);
    report.verdicts.push_back(std::move(v));
  }
  {
    Verdict v;
    v.name = "norm_bound";
    v.pass = std::abs(sym.norm_bound_C - 1) <= 1e-6;
    v.witness["norm_bound_C"] = JsonValue(sym.norm_bound_C);
    report.verdicts.push_back(std::move(v));
  }
  report.evidence["n"] = JsonValue(dim);
  report.evidence["m"] = JsonValue(m);
  report.evidence["reduced_dim"] = JsonValue(static_cast<int>(rs.reduced_dim()));
  report.evidence["gram_eigs_sample"] = json_real_vector(example_eigs);
}

void run_ls_check(const ExperimentConfig& config, RunReport& report) {
  const LinearSymbol& sym = *config.adapted_sym;
  const Eigen::Index rows = sym.rows();
  if (!sym.square()) throw ConfigError("/adapted_symbol: must be square");
  const Matrix P = *config.ls_projector;
  if (P.rows() != rows || P.cols() != rows)
    throw ConfigError("/ls_projector: dimension mismatch with the adapted symbol");
  const Matrix sigma0 =
      config.ls_sigma0.value_or(Matrix::Identity(rows, rows));
  if (sigma0.rows() != rows || sigma0.cols() != rows)
    throw ConfigError("/ls_sigma0: dimension mismatch with the adapted symbol");

  LinearSymbol star;
  if (config.adapted_star_sym) {
    star = *config.adapted_star_sym;
    if (star.dimension() != sym.dimension() || star.rows() != rows)
      throw ConfigError("/adapted_star_symbol: shape mismatch with the adapted symbol");
  } else {
    // adapted symbol of the adjoint problem: (sigma0^*)^{-1} sigma(xi)^* sigma0^*
    const Matrix s_adj = sigma0.adjoint();
    const Matrix s_inv = s_adj.inverse();
    for (const Matrix& c : sym.coeffs) star.coeffs.push_back(s_inv * c.adjoint() * s_adj);
  }

  PseudoLocalBC plbc;
  plbc.projector_symbol = [P](const RealVector&) { return P; };
  const auto samples = unit_sphere_samples(sym.dimension(), config.covector_samples);
  const auto a_symbol = [&sym](const RealVector& xi) { return evaluate(sym, xi); };
  const auto a_star_symbol = [&star](const RealVector& xi) {
    return evaluate(star, xi);
  };
  const LSResult result =
      ls_check(plbc, a_symbol, a_star_symbol, samples, config.tol.sv_rel);

  Verdict v;
  v.name = "boundary_regularity";
  const bool expected = config.expect_pass.value_or(true);
  v.pass = result.pass == expected;
  v.witness["observed"] = JsonValue(result.pass);
  v.witness["expected"] = JsonValue(expected);
  v.witness["failures"] = JsonValue(static_cast<int>(result.failures.size()));
  v.witness["samples"] = JsonValue(static_cast<int>(samples.size()));
  if (!result.failures.empty()) {
    const LSWitness& first = result.failures.front();
    JsonObject detail;
    detail["side"] = JsonValue(first.side);
    detail["dim_negative_space"] = JsonValue(static_cast<int>(first.dim_negative_space));
    detail["dim_range"] = JsonValue(static_cast<int>(first.dim_range));
    detail["min_sv"] = JsonValue(first.min_sv);
    detail["xi"] = json_real_vector(first.xi);
    v.witness["first_failure"] = JsonValue(std::move(detail));
  }
  report.verdicts.push_back(std::move(v));
}

JsonValue mode_evidence(const IndexReport& rep) {
  JsonArray modes;
  for (const ModeIndexData& mode : rep.modes) {
    JsonObject entry;
    entry["k"] = JsonValue(mode.k);
    entry["dim_ker"] = JsonValue(mode.dim_ker);
    entry["dim_coker"] = JsonValue(mode.dim_coker);
    entry["rank_gap_ker"] = json_gap(mode.rank_gap_ker);
    entry["rank_gap_coker"] = json_gap(mode.rank_gap_coker);
    JsonArray tail;
    for (Real sv : mode.sv_tail_ker) tail.push_back(JsonValue(sv));
    entry["sv_tail_ker"] = JsonValue(std::move(tail));
    JsonArray tail2;
    for (Real sv : mode.sv_tail_coker) tail2.push_back(JsonValue(sv));
    entry["sv_tail_coker"] = JsonValue(std::move(tail2));
    modes.push_back(JsonValue(std::move(entry)));
  }
  return JsonValue(std::move(modes));
}

void run_index(const ExperimentConfig& config, RunReport& report) {
  const CylinderModel model = model_from_config(config);
  const IndexReport rep =
      numerical_index(model, config.tol.svd_rank, config.tol.rank_gap_min);
  {
    Verdict v;
    v.name = "index_value";
    v.pass = config.expect_index ? rep.index == *config.expect_index : true;
    v.witness["index"] = JsonValue(rep.index);
    v.witness["dim_ker"] = JsonValue(rep.dim_ker);
    v.witness["dim_coker"] = JsonValue(rep.dim_coker);
    if (config.expect_index) v.witness["expected"] = JsonValue(*config.expect_index);
    v.witness["rank_gap"] = json_gap(rep.rank_gap);
    report.verdicts.push_back(std::move(v));
  }
  {
    Verdict v;
    v.name = "rank_gap";
    v.pass = !rep.unreliable;
    v.witness["rank_gap"] = json_gap(rep.rank_gap);
    v.witness["threshold"] = JsonValue(config.tol.rank_gap_min);
    report.verdicts.push_back(std::move(v));
  }
  report.evidence["modes"] = mode_evidence(rep);
}

void run_deform_sweep(const ExperimentConfig& config, RunReport& report) {
  const CylinderModel model = model_from_config(config);
  const DeformationReport rep = check_deformation(
      model, config.deform_steps, config.tol.svd_rank, config.tol.rank_gap_min);

  bool reliable = true;
  Real min_gap = std::numeric_limits<Real>::infinity();
  JsonArray indices;
  for (const IndexReport& r : rep.reports) {
    reliable = reliable && !r.unreliable;
    min_gap = std::min(min_gap, r.rank_gap);
    indices.push_back(JsonValue(r.index));
  }

  {
    Verdict v;
    v.name = "index_constant";
    v.pass = rep.constant;
    v.witness["first_index"] = JsonValue(rep.reports.front().index);
    v.witness["last_index"] = JsonValue(rep.reports.back().index);
    if (rep.first_jump_s) v.witness["first_jump_s"] = JsonValue(*rep.first_jump_s);
    report.verdicts.push_back(std::move(v));
  }
  {
    Verdict v;
    v.name = "offset_identity";
    v.pass = rep.offset_matches;
    v.witness["expected_offset"] = JsonValue(rep.expected_offset);
    v.witness["observed_offset"] = JsonValue(rep.observed_offset);
    v.witness["base_index"] = JsonValue(rep.aps_index);
    report.verdicts.push_back(std::move(v));
  }
  {
    Verdict v;
    v.name = "rank_gap";
    v.pass = reliable;
    v.witness["rank_gap"] = json_gap(min_gap);
    v.witness["threshold"] = JsonValue(config.tol.rank_gap_min);
    report.verdicts.push_back(std::move(v));
  }
  JsonArray s_values;
  for (Real s : rep.s_values) s_values.push_back(JsonValue(s));
  report.evidence["s_values"] = JsonValue(std::move(s_values));
  report.evidence["indices"] = JsonValue(std::move(indices));
}

void run_match_verify(const ExperimentConfig& config, RunReport& report) {
  const MatchingReport rep = check_matching(
      *config.boundary_operator, config.model.L, config.model.K, config.model.N,
      config.cut_fractions, config.tol.svd_rank, config.tol.rank_gap_min,
      config.tol.realpart);
  {
    Verdict v;
    v.name = "splitting_identity";
    v.pass = rep.all_equal;
    v.witness["uncut_index"] = JsonValue(rep.uncut_index);
    v.witness["matching_index"] = JsonValue(rep.matching_index);
    v.witness["aps_pair_index"] = JsonValue(rep.aps_pair_index);
    report.verdicts.push_back(std::move(v));
  }
  {
    Verdict v;
    v.name = "cut_additivity";
    v.pass = rep.cut_invariant;
    v.witness["cut_count"] = JsonValue(static_cast<int>(rep.cuts.size()));
    JsonArray cuts;
    for (const auto& cut : rep.cuts) {
      JsonObject entry;
      entry["cut"] = JsonValue(cut.cut);
      entry["left_index"] = JsonValue(cut.left_index);
      entry["right_index"] = JsonValue(cut.right_index);
      entry["additive"] = JsonValue(cut.additive);
      cuts.push_back(JsonValue(std::move(entry)));
    }
    v.witness["cuts"] = JsonValue(std::move(cuts));
    report.verdicts.push_back(std::move(v));
  }
  {
    Verdict v;
    v.name = "rank_gap";
    v.pass = !rep.unreliable;
    v.witness["threshold"] = JsonValue(config.tol.rank_gap_min);
    v.witness["unreliable"] = JsonValue(rep.unreliable);
    report.verdicts.push_back(std::move(v));
  }
  report.evidence["detail"] = JsonValue(rep.detail);
}

void run_greens_check(const ExperimentConfig& config, RunReport& report) {
  const BoundaryOperator1D& A = *config.boundary_operator;

  // interior-supported sections: the boundary pairing and the one-sided
  // stencils never see nonzero values, so the identity holds to roundoff
  {
    CylinderModel model =
        CylinderModel::make(config.model.L, config.model.K, config.model.N, A,
                            APSCondition{}, APSCondition{}, config.tol.realpart);
    DiscreteSection u = band_limited_section(model, config.band_limit, 1);
    DiscreteSection v = band_limited_section(model, config.band_limit, 2);
    for (int k = -model.K; k <= model.K; ++k) {
      for (int i = 0; i < 3; ++i) {
        u.mode(k).col(i).setZero();
        u.mode(k).col(model.N - 1 - i).setZero();
        v.mode(k).col(i).setZero();
        v.mode(k).col(model.N - 1 - i).setZero();
      }
    }
    const Real residual = greens_pairing_residual(model, u, v);
    Verdict verdict;
    verdict.name = "interior_exact";
    verdict.pass = residual <= 1e-10;
    verdict.witness["residual"] = JsonValue(residual);
    report.verdicts.push_back(std::move(verdict));
  }

  std::vector<Real> residuals;
  JsonArray grid_sizes;
  int n = config.model.N;
  for (int level = 0; level < config.refinements; ++level) {
    const CylinderModel model =
        CylinderModel::make(config.model.L, config.model.K, n, A, APSCondition{},
                            APSCondition{}, config.tol.realpart);
    const DiscreteSection u = band_limited_section(model, config.band_limit, 1);
    const DiscreteSection v = band_limited_section(model, config.band_limit, 2);
    residuals.push_back(greens_pairing_residual(model, u, v));
    grid_sizes.push_back(JsonValue(n));
    n = 2 * n - 1;
  }
  Real min_order = std::numeric_limits<Real>::infinity();
  JsonArray orders;
  for (size_t i = 0; i + 1 < residuals.size(); ++i) {
    Real order;
    if (residuals[i + 1] <= 0)
      order = std::numeric_limits<Real>::infinity();
    else
      order = std::log2(residuals[i] / residuals[i + 1]);
    min_order = std::min(min_order, order);
    orders.push_back(std::isinf(order) ? JsonValue("inf") : JsonValue(order));
  }
  Verdict verdict;
  verdict.name = "convergence_order";
  verdict.pass = min_order >= config.tol.order_min;
  verdict.witness["min_order"] =
      std::isinf(min_order) ? JsonValue("inf") : JsonValue(min_order);
  verdict.witness["required"] = JsonValue(config.tol.order_min);
  JsonArray res_json;
  for (Real r : residuals) res_json.push_back(JsonValue(r));
  verdict.witness["residuals"] = JsonValue(std::move(res_json));
  report.verdicts.push_back(std::move(verdict));
  report.evidence["grid_sizes"] = JsonValue(std::move(grid_sizes));
  report.evidence["orders"] = JsonValue(std::move(orders));
}

void run_semigroup_check(const ExperimentConfig& config, RunReport& report) {
  const BoundaryOperator1D& A = *config.boundary_operator;
  const int K = config.model.K;

  GraphBC bc;
  const EndConfig left_cfg = config.bc_left.value_or(EndConfig{});
  const EndCondition cond = build_end_condition(
      left_cfg, A, K, config.tol.realpart, config.tol.subspace, "/bc_left");
  if (std::holds_alternative<GraphBC>(cond)) {
    bc = std::get<GraphBC>(cond);
  } else if (std::holds_alternative<APSCondition>(cond)) {
    bc = aps(mode_split(A, K, config.tol.realpart));
  } else {
    throw ConfigError("/bc_left: semigroup-check needs an aps or graph condition");
  }

  const Real T = config.model.L;
  const int coarse_n = config.model.N;
  const SemigroupReport coarse = extension_semigroup_check(A, K, bc, T, coarse_n);
  const SemigroupReport fine =
      extension_semigroup_check(A, K, bc, T, 2 * coarse_n - 1);

  {
    Verdict v;
    v.name = "evolution_residual";
    Real order = std::numeric_limits<Real>::infinity();
    if (fine.residual > 0) order = std::log2(coarse.residual / fine.residual);
    v.pass = fine.residual <= 1e-13 || order >= config.tol.order_min;
    v.witness["residual_coarse"] = JsonValue(coarse.residual);
    v.witness["residual_fine"] = JsonValue(fine.residual);
    v.witness["order"] = std::isinf(order) ? JsonValue("inf") : JsonValue(order);
    report.verdicts.push_back(std::move(v));
  }
  {
    Verdict v;
    v.name = "square_function";
    v.pass = coarse.relative_gap <= config.tol.square_function_rel;
    v.witness["quadrature"] = JsonValue(coarse.square_function);
    v.witness["closed_form"] = JsonValue(coarse.square_function_exact);
    v.witness["relative_gap"] = JsonValue(coarse.relative_gap);
    report.verdicts.push_back(std::move(v));
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult result;
  result.report.kind = to_string(config.kind);
  result.report.config_hash = fnv1a_hex(config.raw_bytes);
  result.report.tolerances = tolerances_json(config.tol);

  const auto start = std::chrono::steady_clock::now();
  switch (config.kind) {
    case ExperimentKind::check_symbol: run_check_symbol(config, result.report); break;
    case ExperimentKind::rs_verify: run_rs_verify(config, result.report); break;
    case ExperimentKind::ls_check: run_ls_check(config, result.report); break;
    case ExperimentKind::index: run_index(config, result.report); break;
    case ExperimentKind::deform_sweep: run_deform_sweep(config, result.report); break;
    case ExperimentKind::match_verify: run_match_verify(config, result.report); break;
    case ExperimentKind::greens_check: run_greens_check(config, result.report); break;
    case ExperimentKind::semigroup_check:
      run_semigroup_check(config, result.report);
      break;
  }
  const auto stop = std::chrono::steady_clock::now();
  result.report.wall_time_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  result.exit_code = result.report.all_pass() ? 0 : 1;
  return result;
}

void validate_report_json(const std::string& json_text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("report: JSON parse error: ") + e.what());
  }
  auto check = [](bool ok, const char* what) {
    if (!ok) throw std::runtime_error(std::string("report: ") + what);
  };
  check(root.is_object(), "expected a top-level object");
  check(root.size() == 5, "expected exactly 5 top-level keys");
  check(root.contains("kind") && root["kind"].is_string(), "missing string kind");
  check(root.contains("config_hash") && root["config_hash"].is_string() &&
            root["config_hash"].get<std::string>().size() == 16,
        "missing 16-hex config_hash");
  check(root.contains("tolerances") && root["tolerances"].is_object(),
        "missing tolerances object");
  check(root.contains("evidence") && root["evidence"].is_object(),
        "missing evidence object");
  check(root.contains("verdicts") && root["verdicts"].is_array() &&
            !root["verdicts"].empty(),
        "missing non-empty verdicts array");

  std::function<bool(const nlohmann::json&)> has_number =
      [&](const nlohmann::json& j) -> bool {
    if (j.is_number()) return true;
    if (j.is_array() || j.is_object()) {
      for (const auto& item : j)
        if (has_number(item)) return true;
    }
    return false;
  };
  for (const auto& verdict : root["verdicts"]) {
    check(verdict.is_object(), "verdict entries must be objects");
    check(verdict.contains("name") && verdict["name"].is_string(),
          "verdict missing string name");
    check(verdict.contains("pass") && verdict["pass"].is_boolean(),
          "verdict missing boolean pass");
    check(verdict.contains("witness") && verdict["witness"].is_object() &&
              !verdict["witness"].empty(),
          "verdict missing non-empty witness");
    check(has_number(verdict["witness"]), "witness carries no numeric entry");
  }
}

}  // namespace ebvp
