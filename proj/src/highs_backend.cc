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

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wunused-parameter"
#include "Highs.h"
#pragma GCC diagnostic pop
#include "derplan/milp.h"

namespace derplan {
namespace {

HighsLp to_highs_lp(const LinearModel& model) {
  HighsLp lp;
  lp.num_col_ = model.num_variables();
  lp.num_row_ = model.num_constraints();
  lp.sense_ = model.objective_sense() == ObjectiveSense::kMinimize
                  ? ObjSense::kMinimize
                  : ObjSense::kMaximize;
  lp.offset_ = model.objective_offset();
  lp.col_cost_ = model.objective();
  lp.col_lower_.reserve(lp.num_col_);
  lp.col_upper_.reserve(lp.num_col_);
  bool mip = false;
  for (const Variable& v : model.variables()) {
    lp.col_lower_.push_back(v.lb);
    lp.col_upper_.push_back(v.ub);
    mip = mip || v.type == VarType::kBinary;
  }
  if (mip) {
    lp.integrality_.reserve(lp.num_col_);
    for (const Variable& v : model.variables()) {
      lp.integrality_.push_back(v.type == VarType::kBinary
                                    ? HighsVarType::kInteger
                                    : HighsVarType::kContinuous);
    }
  }
  auto& a = lp.a_matrix_;
  a.format_ = MatrixFormat::kRowwise;
  a.num_col_ = lp.num_col_;
  a.num_row_ = lp.num_row_;
  a.start_.assign(1, 0);
  a.start_.reserve(lp.num_row_ + 1);
  for (const Constraint& c : model.constraints()) {
    for (const Term& t : c.terms) {
      a.index_.push_back(t.var.index);
      a.value_.push_back(t.coef);
    }
    a.start_.push_back(static_cast<HighsInt>(a.index_.size()));
    switch (c.sense) {
      case RowSense::kLessEqual:
        lp.row_lower_.push_back(-kHighsInf);
        lp.row_upper_.push_back(c.rhs);
        break;
      case RowSense::kGreaterEqual:
        lp.row_lower_.push_back(c.rhs);
        lp.row_upper_.push_back(kHighsInf);
        break;
      case RowSense::kEqual:
        lp.row_lower_.push_back(c.rhs);
        lp.row_upper_.push_back(c.rhs);
        break;
    }
  }
  return lp;
}

SolveStatus map_status(HighsModelStatus status) {
  switch (status) {
    case HighsModelStatus::kOptimal:
    case HighsModelStatus::kModelEmpty:
      return SolveStatus::kOptimal;
    case HighsModelStatus::kInfeasible:
      return SolveStatus::kInfeasible;
    case HighsModelStatus::kUnbounded:
    case HighsModelStatus::kUnboundedOrInfeasible:
      return SolveStatus::kUnbounded;
    case HighsModelStatus::kTimeLimit:
    case HighsModelStatus::kIterationLimit:
    case HighsModelStatus::kSolutionLimit:
    case HighsModelStatus::kInterrupt:
    case HighsModelStatus::kObjectiveBound:
    case HighsModelStatus::kObjectiveTarget:
      return SolveStatus::kLimit;
    default:
      return SolveStatus::kError;
  }
}

void configure(Highs& highs, const SolverParams& params) {
  // DERPLAN_SOLVER_LOG=1 turns on the HiGHS log for debugging.
  const char* log = std::getenv("DERPLAN_SOLVER_LOG");
  highs.setOptionValue("output_flag", log != nullptr && log[0] == '1');
  highs.setOptionValue("threads", 1);
  highs.setOptionValue("primal_feasibility_tolerance", params.feas_tol);
  highs.setOptionValue("dual_feasibility_tolerance", params.feas_tol);
  highs.setOptionValue("mip_feasibility_tolerance", params.feas_tol);
  highs.setOptionValue("mip_rel_gap", params.mip_gap);
  highs.setOptionValue("allow_unbounded_or_infeasible", false);
  if (std::isfinite(params.time_limit)) {
    highs.setOptionValue("time_limit", params.time_limit);
  }
}

// Duals from HiGHS satisfy c = A^T y + d for the model as stated, which is the
// Lagrangian convention documented on SolveResult for both senses.
void copy_solution(const Highs& highs, SolveResult& result) {
  const HighsSolution& sol = highs.getSolution();
  result.primal = sol.col_value;
  if (sol.dual_valid) {
    result.dual = sol.row_dual;
    result.reduced_cost = sol.col_dual;
  } else {
    result.dual.clear();
    result.reduced_cost.clear();
  }
  result.objective = highs.getInfo().objective_function_value;
}

class HighsBackend final : public SolverBackend {
 public:
  std::string name() const override { return "highs"; }

  SolveResult solve(const LinearModel& model,
                    const SolverParams& params) const override {
    const auto start = std::chrono::steady_clock::now();
    SolveResult result;
    HighsLp lp = to_highs_lp(model);
    const bool mip = !lp.integrality_.empty();

    Highs highs;
    configure(highs, params);
    if (highs.passModel(lp) == HighsStatus::kError) {
      throw std::invalid_argument("HiGHS rejected model " + model.name());
    }
    highs.run();
    result.status = map_status(highs.getModelStatus());
    if (result.status == SolveStatus::kOptimal ||
        (result.status == SolveStatus::kLimit &&
         highs.getInfo().primal_solution_status == kSolutionStatusFeasible)) {
      copy_solution(highs, result);
      result.bound = result.objective;
      if (mip) {
        result.mip_gap = highs.getInfo().mip_gap;
        result.bound = highs.getInfo().mip_dual_bound;
      }
    }

    if (mip && params.polish_integers &&
        result.status == SolveStatus::kOptimal) {
      HighsLp fixed = lp;
      for (HighsInt j = 0; j < fixed.num_col_; ++j) {
        if (fixed.integrality_[j] != HighsVarType::kInteger) continue;
        const double v = std::round(result.primal[j]);
        fixed.col_lower_[j] = v;
        fixed.col_upper_[j] = v;
      }
      fixed.integrality_.clear();
      Highs polish;
      configure(polish, params);
      polish.passModel(fixed);
      polish.run();
      if (polish.getModelStatus() == HighsModelStatus::kOptimal) {
        copy_solution(polish, result);
      }
    }
    result.solve_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
  }
};

}  // namespace

std::unique_ptr<SolverBackend> make_highs_backend() {
  return std::make_unique<HighsBackend>();
}

}  // namespace derplan
