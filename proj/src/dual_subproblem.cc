// Copyright 2026 The derplan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "derplan/dual_subproblem.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace derplan {
namespace {

std::string block_prefix(int k) { return "s" + std::to_string(k) + "/"; }

std::string tag(const char* name, int t) {
  return std::string(name) + "[" + std::to_string(t) + "]";
}

std::string tag(const char* name, int t, int i) {
  return std::string(name) + "[" + std::to_string(t) + "," +
         std::to_string(i) + "]";
}

// Continuous copy of `model` with the parameter columns pinned.
LinearModel pinned(const LinearModel& model,
                   const std::map<VarRef, double>& params) {
  LinearModel fixed = fix_variables(model, params);
  for (const auto& [ref, value] : params) {
    fixed.mutable_variable(ref).type = VarType::kContinuous;
  }
  return fixed;
}

}  // namespace

std::map<VarRef, double> RecourseModel::parameters(const FirstStage& fs) const {
  if (fs.w.size() != w.size()) {
    throw std::invalid_argument("first stage has " +
                                std::to_string(fs.w.size()) +
                                " charging schedules, recourse needs " +
                                std::to_string(w.size()));
  }
  InvestmentValues rounded = fs.inv;
  for (double& v : rounded.nu_pv) v = std::round(v);
  for (double& v : rounded.nu_bt) v = std::round(v);
  std::map<VarRef, double> params;
  for (size_t k = 0; k < w.size(); ++k) {
    Matrix wk = fs.w[k];
    for (double& v : wk.data()) v = std::round(v);
    params.merge(first_stage_assignment(inv, rounded, w[k], wk));
  }
  return params;
}

RecourseModel build_recourse(const CaseData& c,
                             const std::vector<OperatingProfile>& blocks,
                             const std::vector<double>& weights) {
  if (blocks.empty() || blocks.size() != weights.size()) {
    throw std::invalid_argument("recourse needs one weight per block");
  }
  RecourseModel rec{LinearModel("recourse"), {}, {}, {}, weights, {}};
  rec.inv = add_investment(rec.model, c, /*rows=*/false);
  LinearExpr obj;
  for (size_t k = 0; k < blocks.size(); ++k) {
    const std::string prefix = block_prefix(static_cast<int>(k));
    rec.w.push_back(add_commitment(rec.model, c, rec.inv, blocks[k].horizon(),
                                   prefix, /*rows=*/false));
    const int begin = rec.model.num_constraints();
    rec.ops.push_back(
        add_operation(rec.model, c, blocks[k], rec.inv, rec.w.back(), prefix));
    rec.rows.emplace_back(begin, rec.model.num_constraints());
    obj.add(rec.ops.back().cost, weights[k]);
  }
  rec.model.set_objective(obj, ObjectiveSense::kMinimize);
  return rec;
}

RecourseResult solve_recourse(const CaseData& c,
                              const std::vector<OperatingProfile>& blocks,
                              const std::vector<double>& weights,
                              const FirstStage& fs,
                              const SolverParams& params) {
  RecourseModel rec = build_recourse(c, blocks, weights);
  RecourseResult out;
  out.raw = solve(pinned(rec.model, rec.parameters(fs)), params);
  require_optimal(out.raw, "recourse LP");
  out.value = out.raw.objective;
  for (size_t k = 0; k < blocks.size(); ++k) {
    out.block_values.push_back(weights[k] *
                               rec.ops[k].cost.evaluate(out.raw.primal));
    out.operations.push_back(extract_operation(out.raw, rec.ops[k], rec.w[k]));
  }
  return out;
}

double default_big_m(const BudgetedSet& set) {
  double m = 0.0;
  for (int t = 0; t < set.horizon(); ++t) {
    m = std::max(m, set.pv_bar[t] + set.pv_hat[t]);
    for (int i = 0; i < set.num_buses(); ++i) {
      m = std::max(m, set.pl_bar(t, i) + set.pl_hat(t, i));
    }
  }
  return m;
}

DualSubproblem build_dual_subproblem(const CaseData& c, const BudgetedSet& set,
                                     const std::vector<OperatingProfile>& blocks,
                                     const std::vector<double>& weights,
                                     const FirstStage& fs, bool pv_uncertain,
                                     const DspOptions& options) {
  const int T = set.horizon();
  const int B = set.num_buses();
  for (const OperatingProfile& b : blocks) {
    if (b.horizon() != T) {
      throw std::invalid_argument("DSP blocks must match the set horizon");
    }
  }
  for (size_t i = 0; i < fs.inv.gamma_pv.size(); ++i) {
    if (fs.inv.gamma_pv[i] < -1e-9 || fs.inv.gamma_bt[i] < -1e-9) {
      throw std::invalid_argument("DSP: negative installed capacity");
    }
  }

  DualSubproblem dsp;
  dsp.recourse = build_recourse(c, blocks, weights);
  dsp.pv_uncertain = pv_uncertain;
  const std::map<VarRef, double> params = dsp.recourse.parameters(fs);
  dsp.dual = dualize(dsp.recourse.model, params);
  dsp.model = dsp.dual.model;
  LinearModel& m = dsp.model;
  const double M = options.big_m > 0.0 ? options.big_m : default_big_m(set);
  if (!(M > 0.0)) throw std::invalid_argument("big-M must be positive");
  dsp.big_m = M;

  LinearExpr pv_budget;
  for (int t = 0; t < T; ++t) {
    const double ub = pv_uncertain && set.pv_hat[t] > 0.0 ? 1.0 : 0.0;
    dsp.u_plus.push_back(m.add_variable(
        tag("U+", t), 0.0, options.adverse_only ? 0.0 : ub, VarType::kBinary));
    dsp.u_minus.push_back(
        m.add_variable(tag("U-", t), 0.0, ub, VarType::kBinary));
    m.add_constraint(tag("u_excl", t),
                     LinearExpr().add(dsp.u_plus[t], 1.0).add(dsp.u_minus[t], 1.0),
                     RowSense::kLessEqual, 1.0);
    pv_budget.add(dsp.u_plus[t], 1.0).add(dsp.u_minus[t], 1.0);
  }
  m.add_constraint("u_budget", pv_budget, RowSense::kLessEqual,
                   pv_uncertain ? set.beta_pv : 0);

  dsp.v_plus = dsp.v_minus = VarGrid(T, B);
  for (int i = 0; i < B; ++i) {
    LinearExpr budget;
    for (int t = 0; t < T; ++t) {
      const double ub = set.pl_hat(t, i) > 0.0 ? 1.0 : 0.0;
      dsp.v_plus(t, i) =
          m.add_variable(tag("V+", t, i), 0.0, ub, VarType::kBinary);
      dsp.v_minus(t, i) = m.add_variable(
          tag("V-", t, i), 0.0, options.adverse_only ? 0.0 : ub, VarType::kBinary);
      m.add_constraint(tag("v_excl", t, i),
                       LinearExpr()
                           .add(dsp.v_plus(t, i), 1.0)
                           .add(dsp.v_minus(t, i), 1.0),
                       RowSense::kLessEqual, 1.0);
      budget.add(dsp.v_plus(t, i), 1.0).add(dsp.v_minus(t, i), 1.0);
    }
    m.add_constraint("v_budget[" + std::to_string(i) + "]", budget,
                     RowSense::kLessEqual, set.beta_pl);
  }

  auto product = [&](VarRef y, VarRef binary, const std::string& name) {
    const VarRef z = m.add_variable(name, -M, M);
    m.add_constraint(name + "/ub", LinearExpr().add(z, 1.0).add(binary, -M),
                     RowSense::kLessEqual, 0.0);
    m.add_constraint(name + "/lb", LinearExpr().add(z, 1.0).add(binary, M),
                     RowSense::kGreaterEqual, 0.0);
    m.add_constraint(name + "/ub1",
                     LinearExpr().add(z, 1.0).add(y, -1.0).add(binary, M),
                     RowSense::kLessEqual, M);
    m.add_constraint(name + "/lb1",
                     LinearExpr().add(z, 1.0).add(y, -1.0).add(binary, -M),
                     RowSense::kGreaterEqual, -M);
    dsp.aux.push_back({z, y, binary});
    return z;
  };

  const int K = static_cast<int>(blocks.size());
  dsp.block_value.assign(K, LinearExpr());
  dsp.block_value[0].add(dsp.dual.constant);
  for (int k = 0; k < K; ++k) {
    const auto [begin, end] = dsp.recourse.rows[k];
    for (int r = begin; r < end; ++r) {
      dsp.block_value[k].add(dsp.dual.y[r], dsp.dual.rhs[r]);
    }
    const OperationVars& op = dsp.recourse.ops[k];
    const std::string pre = "s" + std::to_string(k) + "/";
    for (int t = 0; t < T; ++t) {
      for (int i = 0; i < B; ++i) {
        const double pl_hat = set.pl_hat(t, i);
        if (pl_hat > 0.0) {
          const VarRef a = dsp.dual.y[op.balance(t, i)];
          const VarRef ap = product(a, dsp.v_plus(t, i), pre + tag("a+", t, i));
          const VarRef am = product(a, dsp.v_minus(t, i), pre + tag("a-", t, i));
          // rhs of the balance row is -PL, so the deviation enters as
          // -PLhat (a+ - a-).
          dsp.block_value[k].add(ap, -pl_hat).add(am, pl_hat);
        }
        const double gamma = fs.inv.gamma_pv[i];
        if (pv_uncertain && set.pv_hat[t] > 0.0 && gamma > 0.0) {
          const VarRef y = dsp.dual.y[op.pv_limit(t, i)];
          const VarRef ip = product(y, dsp.u_plus[t], pre + tag("i+", t, i));
          const VarRef im = product(y, dsp.u_minus[t], pre + tag("i-", t, i));
          const double coef = set.pv_hat[t] * gamma;
          dsp.block_value[k].add(ip, coef).add(im, -coef);
        }
      }
    }
  }
  LinearExpr obj;
  for (const LinearExpr& e : dsp.block_value) obj.add(e);
  m.set_objective(obj, ObjectiveSense::kMaximize);
  return dsp;
}

DspResult solve_dual_subproblem(const DualSubproblem& dsp,
                                const BudgetedSet& set,
                                const SolverParams& params) {
  DspResult out;
  out.raw = solve(dsp.model, params);
  if (out.raw.status == SolveStatus::kUnbounded) {
    throw SolverError(
        "dual subproblem is unbounded: some realization has no feasible "
        "recourse for the current first stage");
  }
  require_optimal(out.raw, "dual subproblem");
  out.value = out.raw.objective;
  for (const LinearExpr& e : dsp.block_value) {
    out.block_values.push_back(e.evaluate(out.raw.primal));
  }
  ExtremePoint& ep = out.point;
  ep = nominal_point(set);
  auto bit = [&](VarRef v) { return static_cast<int>(std::lround(out.raw.value(v))); };
  for (int t = 0; t < set.horizon(); ++t) {
    ep.u_plus[t] = bit(dsp.u_plus[t]);
    ep.u_minus[t] = bit(dsp.u_minus[t]);
    for (int i = 0; i < set.num_buses(); ++i) {
      ep.v_plus(t, i) = bit(dsp.v_plus(t, i));
      ep.v_minus(t, i) = bit(dsp.v_minus(t, i));
    }
  }
  BudgetedSet effective = set;
  if (!dsp.pv_uncertain) effective.beta_pv = 0;
  out.realization = realize(effective, ep);
  for (const BilinearAux& a : dsp.aux) {
    const double y = out.raw.value(a.y);
    const double b = out.raw.value(a.binary);
    out.big_m_residual =
        std::max(out.big_m_residual, std::abs(out.raw.value(a.z) - y * b));
    if (std::abs(y) >= dsp.big_m * (1.0 - 1e-9)) ++out.big_m_saturated;
  }
  return out;
}

LinearModel fix_pattern(const DualSubproblem& dsp, const ExtremePoint& ep) {
  std::map<VarRef, double> fix;
  for (size_t t = 0; t < dsp.u_plus.size(); ++t) {
    fix[dsp.u_plus[t]] = ep.u_plus[t];
    fix[dsp.u_minus[t]] = ep.u_minus[t];
  }
  for (int t = 0; t < dsp.v_plus.rows(); ++t) {
    for (int i = 0; i < dsp.v_plus.cols(); ++i) {
      fix[dsp.v_plus(t, i)] = ep.v_plus(t, i);
      fix[dsp.v_minus(t, i)] = ep.v_minus(t, i);
    }
  }
  return fix_variables(dsp.model, fix);
}

DualCut dual_cut(const CaseData& c, const DualSubproblem& dsp,
                 const std::vector<OperatingProfile>& realized_blocks,
                 const FirstStage& fs, const DspResult& result) {
  const RecourseModel rec =
      build_recourse(c, realized_blocks, dsp.recourse.weights);
  if (rec.model.num_constraints() != dsp.recourse.model.num_constraints()) {
    throw std::logic_error("realized recourse does not match the DSP");
  }
  const std::map<VarRef, double> params = rec.parameters(fs);
  DualCut cut;
  cut.value = result.block_values;
  for (size_t k = 0; k < rec.rows.size(); ++k) {
    std::map<VarRef, double> grad;
    for (const auto& [ref, value] : params) grad[ref] = 0.0;
    for (int r = rec.rows[k].first; r < rec.rows[k].second; ++r) {
      const double y = result.raw.value(dsp.dual.y[r]);
      if (y == 0.0) continue;
      for (const Term& t : rec.model.constraints()[r].terms) {
        auto it = grad.find(t.var);
        if (it != grad.end()) it->second -= t.coef * y;
      }
    }
    std::erase_if(grad, [](const auto& kv) { return kv.second == 0.0; });
    cut.gradient.push_back(std::move(grad));
  }
  return cut;
}

}  // namespace derplan
