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

#include "derplan/milp.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace derplan {

LinearExpr& LinearExpr::add(const LinearExpr& other, double scale) {
  for (const Term& t : other.terms_) add(t.var, scale * t.coef);
  constant_ += scale * other.constant_;
  return *this;
}

double LinearExpr::evaluate(std::span<const double> values) const {
  double sum = constant_;
  for (const Term& t : terms_) sum += t.coef * values[t.var.index];
  return sum;
}

VarRef LinearModel::add_variable(std::string name, double lb, double ub,
                                 VarType type) {
  variables_.push_back({std::move(name), lb, ub, type});
  objective_.push_back(0.0);
  return VarRef{static_cast<int>(variables_.size()) - 1};
}

int LinearModel::add_constraint(std::string name, const LinearExpr& expr,
                                RowSense sense, double rhs) {
  const int row = static_cast<int>(constraints_.size());
  if (!constraint_index_.emplace(name, row).second) {
    throw std::invalid_argument("duplicate constraint name: " + name);
  }
  // Merge repeated variables so backends see one coefficient per column.
  std::vector<Term> terms = expr.terms();
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return a.var.index < b.var.index;
  });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const Term& t : terms) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  constraints_.push_back(
      {std::move(name), std::move(merged), sense, rhs - expr.constant()});
  return row;
}

void LinearModel::set_objective(const LinearExpr& expr, ObjectiveSense sense) {
  std::fill(objective_.begin(), objective_.end(), 0.0);
  for (const Term& t : expr.terms()) objective_.at(t.var.index) += t.coef;
  objective_offset_ = expr.constant();
  objective_sense_ = sense;
}

bool LinearModel::is_mip() const {
  return std::any_of(variables_.begin(), variables_.end(), [](const auto& v) {
    return v.type == VarType::kBinary;
  });
}

int LinearModel::find_constraint(const std::string& name) const {
  auto it = constraint_index_.find(name);
  return it == constraint_index_.end() ? -1 : it->second;
}

void LinearModel::check_well_formed() const {
  for (const Variable& v : variables_) {
    if (std::isnan(v.lb) || std::isnan(v.ub) || v.lb > v.ub) {
      throw std::invalid_argument("variable " + v.name + " has bounds [" +
                                  std::to_string(v.lb) + ", " +
                                  std::to_string(v.ub) + "]");
    }
    if (v.type == VarType::kBinary && (v.lb < 0.0 || v.ub > 1.0)) {
      throw std::invalid_argument("binary " + v.name + " leaves [0,1]");
    }
  }
  for (const Constraint& c : constraints_) {
    if (!std::isfinite(c.rhs)) {
      throw std::invalid_argument("constraint " + c.name +
                                  " has a non-finite rhs");
    }
    for (const Term& t : c.terms) {
      if (t.var.index < 0 || t.var.index >= num_variables()) {
        throw std::invalid_argument("constraint " + c.name +
                                    " references an undeclared variable");
      }
    }
  }
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kUnbounded:
      return "unbounded";
    case SolveStatus::kLimit:
      return "limit";
    case SolveStatus::kError:
      return "error";
  }
  return "unknown";
}

std::unique_ptr<SolverBackend> make_highs_backend();  // highs_backend.cc

std::unique_ptr<SolverBackend> make_backend(const std::string& name) {
  if (name == "highs") return make_highs_backend();
  throw EnvironmentError("solver backend '" + name +
                         "' is not available (known: highs)");
}

const SolverBackend& default_backend() {
  static const std::unique_ptr<SolverBackend> backend = [] {
    const char* env = std::getenv("DERPLAN_SOLVER");
    return make_backend(env != nullptr && *env != '\0' ? env : "highs");
  }();
  return *backend;
}

SolveResult solve(const LinearModel& model, const SolverParams& params) {
  model.check_well_formed();
  return default_backend().solve(model, params);
}

LinearModel fix_variables(const LinearModel& model,
                          const std::map<VarRef, double>& assignments) {
  LinearModel fixed = model;
  for (const auto& [ref, value] : assignments) {
    if (ref.index < 0 || ref.index >= model.num_variables()) {
      throw std::invalid_argument("fix_variables: unknown variable");
    }
    Variable& v = fixed.mutable_variable(ref);
    const double tol = 1e-9 * (1.0 + std::abs(value));
    if (value < v.lb - tol || value > v.ub + tol) {
      throw std::invalid_argument("fix_variables: value " +
                                  std::to_string(value) + " outside bounds of " +
                                  v.name);
    }
    v.lb = value;
    v.ub = value;
  }
  return fixed;
}

double max_violation(const LinearModel& model, std::span<const double> values) {
  double worst = 0.0;
  for (int j = 0; j < model.num_variables(); ++j) {
    const Variable& v = model.variables()[j];
    worst = std::max({worst, v.lb - values[j], values[j] - v.ub});
  }
  for (const Constraint& c : model.constraints()) {
    double lhs = 0.0;
    for (const Term& t : c.terms) lhs += t.coef * values[t.var.index];
    switch (c.sense) {
      case RowSense::kLessEqual:
        worst = std::max(worst, lhs - c.rhs);
        break;
      case RowSense::kGreaterEqual:
        worst = std::max(worst, c.rhs - lhs);
        break;
      case RowSense::kEqual:
        worst = std::max(worst, std::abs(lhs - c.rhs));
        break;
    }
  }
  return worst;
}

LpDual dualize(const LinearModel& primal,
               const std::map<VarRef, double>& parameters) {
  if (primal.objective_sense() != ObjectiveSense::kMinimize) {
    throw std::invalid_argument("dualize expects a minimization");
  }
  if (primal.is_mip()) {
    for (int j = 0; j < primal.num_variables(); ++j) {
      if (primal.variables()[j].type == VarType::kBinary &&
          !parameters.contains(VarRef{j})) {
        throw std::invalid_argument("dualize: binary " +
                                    primal.variables()[j].name +
                                    " is not a parameter");
      }
    }
  }
  const int n = primal.num_variables();
  const int m = primal.num_constraints();
  std::vector<double> param_value(n, 0.0);
  std::vector<bool> is_param(n, false);
  for (const auto& [ref, value] : parameters) {
    if (ref.index < 0 || ref.index >= n) {
      throw std::invalid_argument("dualize: unknown parameter column");
    }
    is_param[ref.index] = true;
    param_value[ref.index] = value;
  }

  LpDual dual{LinearModel("dual_" + primal.name()), {}, {}, {}, 0.0};
  dual.constant = primal.objective_offset();
  for (int j = 0; j < n; ++j) {
    if (is_param[j]) dual.constant += primal.objective()[j] * param_value[j];
  }

  // Column-wise view of the non-parameter part of A.
  std::vector<std::vector<Term>> column(n);
  dual.y.reserve(m);
  dual.rhs.reserve(m);
  for (int r = 0; r < m; ++r) {
    const Constraint& c = primal.constraints()[r];
    double rhs = c.rhs;
    for (const Term& t : c.terms) {
      if (is_param[t.var.index]) {
        rhs -= t.coef * param_value[t.var.index];
      }
    }
    double lb = -kInf, ub = kInf;
    if (c.sense == RowSense::kLessEqual) ub = 0.0;
    if (c.sense == RowSense::kGreaterEqual) lb = 0.0;
    const VarRef y = dual.model.add_variable("y_" + c.name, lb, ub);
    dual.y.push_back(y);
    dual.rhs.push_back(rhs);
    for (const Term& t : c.terms) {
      if (!is_param[t.var.index]) column[t.var.index].push_back({y, t.coef});
    }
  }

  dual.dual_row.assign(n, -1);
  for (int j = 0; j < n; ++j) {
    if (is_param[j]) continue;
    const Variable& v = primal.variables()[j];
    RowSense sense;
    if (v.lb == 0.0 && v.ub == kInf) {
      sense = RowSense::kLessEqual;
    } else if (v.lb == -kInf && v.ub == kInf) {
      sense = RowSense::kEqual;
    } else if (v.lb == -kInf && v.ub == 0.0) {
      sense = RowSense::kGreaterEqual;
    } else {
      throw std::invalid_argument("dualize: column " + v.name +
                                  " has general bounds; state them as rows");
    }
    LinearExpr expr;
    for (const Term& t : column[j]) expr.add(t.var, t.coef);
    dual.dual_row[j] = dual.model.add_constraint("d_" + v.name, expr, sense,
                                                 primal.objective()[j]);
  }

  LinearExpr objective(dual.constant);
  for (int r = 0; r < m; ++r) objective.add(dual.y[r], dual.rhs[r]);
  dual.model.set_objective(objective, ObjectiveSense::kMaximize);
  return dual;
}

std::map<VarRef, double> parameter_gradient(
    const LinearModel& primal, const std::map<VarRef, double>& parameters,
    std::span<const double> y) {
  std::map<VarRef, double> grad;
  for (const auto& [ref, value] : parameters) {
    grad[ref] = primal.objective().at(ref.index);
  }
  for (int r = 0; r < primal.num_constraints(); ++r) {
    for (const Term& t : primal.constraints()[r].terms) {
      auto it = grad.find(t.var);
      if (it != grad.end()) it->second -= t.coef * y[r];
    }
  }
  return grad;
}

}  // namespace derplan
