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

// Solver-agnostic linear and mixed-integer linear models.
//
// A LinearModel owns a list of bounded variables, named linear constraints and
// a linear objective. Builders in this library only ever talk to this type;
// the concrete solver sits behind `solve()`, selected at runtime through the
// DERPLAN_SOLVER environment variable (currently only "highs").

#ifndef DERPLAN_MILP_H_
#define DERPLAN_MILP_H_

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace derplan {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Raised when the requested solver backend cannot be used.
class EnvironmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a solve ends in a status the caller cannot continue from.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Handle to a variable inside one LinearModel.
struct VarRef {
  int index = -1;

  bool valid() const { return index >= 0; }
  friend bool operator==(VarRef, VarRef) = default;
  friend auto operator<=>(VarRef, VarRef) = default;
};

enum class VarType { kContinuous, kBinary };
enum class RowSense { kLessEqual, kEqual, kGreaterEqual };
enum class ObjectiveSense { kMinimize, kMaximize };

struct Variable {
  std::string name;
  double lb = 0.0;
  double ub = kInf;
  VarType type = VarType::kContinuous;
};

struct Term {
  VarRef var;
  double coef = 0.0;
};

// Sparse affine expression: sum(coef * var) + constant.
class LinearExpr {
 public:
  LinearExpr() = default;
  explicit LinearExpr(double constant) : constant_(constant) {}

  LinearExpr& add(VarRef var, double coef) {
    if (coef != 0.0) terms_.push_back({var, coef});
    return *this;
  }
  LinearExpr& add(double constant) {
    constant_ += constant;
    return *this;
  }
  LinearExpr& add(const LinearExpr& other, double scale = 1.0);

  const std::vector<Term>& terms() const { return terms_; }
  double constant() const { return constant_; }

  double evaluate(std::span<const double> values) const;

 private:
  std::vector<Term> terms_;
  double constant_ = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

class LinearModel {
 public:
  explicit LinearModel(std::string name = "model") : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  VarRef add_variable(std::string name, double lb, double ub,
                      VarType type = VarType::kContinuous);
  VarRef add_binary(std::string name) {
    return add_variable(std::move(name), 0.0, 1.0, VarType::kBinary);
  }

  // Adds `expr sense rhs`; the expression constant is moved to the rhs.
  // Constraint names must be unique within the model.
  int add_constraint(std::string name, const LinearExpr& expr, RowSense sense,
                     double rhs);

  void set_objective(const LinearExpr& expr, ObjectiveSense sense);

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  bool is_mip() const;

  const std::vector<Variable>& variables() const { return variables_; }
  const Variable& variable(VarRef v) const { return variables_.at(v.index); }
  Variable& mutable_variable(VarRef v) { return variables_.at(v.index); }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<double>& objective() const { return objective_; }
  double objective_offset() const { return objective_offset_; }
  ObjectiveSense objective_sense() const { return objective_sense_; }

  // Row index of a named constraint, or -1.
  int find_constraint(const std::string& name) const;

  // Throws std::invalid_argument when bounds are inverted, a binary leaves
  // [0,1], or a row references an undeclared variable.
  void check_well_formed() const;

 private:
  std::string name_;
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::map<std::string, int> constraint_index_;
  std::vector<double> objective_;
  double objective_offset_ = 0.0;
  ObjectiveSense objective_sense_ = ObjectiveSense::kMinimize;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kLimit, kError };

const char* to_string(SolveStatus status);

struct SolverParams {
  double feas_tol = 1e-6;
  double mip_gap = 1e-6;
  double time_limit = kInf;  // seconds
  // After a MIP solve, fix the integers at their rounded values and re-solve
  // the LP so continuous values are free of integrality slop and duals exist.
  bool polish_integers = true;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kError;
  double objective = 0.0;
  std::vector<double> primal;
  // Row duals in the Lagrangian sign convention of the model's own sense:
  // for a minimization, <= rows carry duals <= 0 and >= rows duals >= 0.
  // Available for LPs and for polished MIPs (duals of the fixed LP).
  std::vector<double> dual;
  std::vector<double> reduced_cost;
  double solve_time_s = 0.0;
  double mip_gap = 0.0;
  // Best proven bound on the objective; equals `objective` for LPs.
  double bound = 0.0;

  bool optimal() const { return status == SolveStatus::kOptimal; }
  double value(VarRef v) const { return primal.at(v.index); }
};

class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::string name() const = 0;
  virtual SolveResult solve(const LinearModel& model,
                            const SolverParams& params) const = 0;
};

// Backend named by DERPLAN_SOLVER (default "highs"). Throws EnvironmentError
// for unknown names.
const SolverBackend& default_backend();
std::unique_ptr<SolverBackend> make_backend(const std::string& name);

SolveResult solve(const LinearModel& model, const SolverParams& params = {});

// Copy of `model` with lb = ub = value on every listed variable.
LinearModel fix_variables(const LinearModel& model,
                          const std::map<VarRef, double>& assignments);

// Largest violation of any row or bound at `values`.
double max_violation(const LinearModel& model, std::span<const double> values);

// Dual of a minimization LP in which some columns are treated as parameters.
//
// Parameter columns are removed and their values folded into the row
// right-hand sides and the objective constant. Every other column must be
// sign-restricted (lb = 0 or ub = 0) or free; general bounds have to be stated
// as rows. Row r gets one dual variable y[r] with y >= 0 for >= rows, y <= 0
// for <= rows and y free for equalities, and the dual reads
//
//   max  sum_r rhs[r] * y[r] + constant
//   s.t. sum_r A[r][j] * y[r]  (<=, =, >=)  c[j]   for x_j >= 0, free, <= 0.
struct LpDual {
  LinearModel model;
  std::vector<VarRef> y;      // per primal row
  std::vector<double> rhs;    // right-hand sides after folding parameters
  std::vector<int> dual_row;  // per primal column; -1 for parameters
  double constant = 0.0;
};

LpDual dualize(const LinearModel& primal,
               const std::map<VarRef, double>& parameters = {});

// Derivative of the dual objective with respect to each parameter column at
// the row duals `y`: c[j] - sum_r A[r][j] * y[r].
std::map<VarRef, double> parameter_gradient(
    const LinearModel& primal, const std::map<VarRef, double>& parameters,
    std::span<const double> y);

}  // namespace derplan

#endif  // DERPLAN_MILP_H_
