#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "uavfog/optimizer.hpp"

namespace uavfog {

enum class VarKind { continuous, binary, integer };
enum class RowSense { le, ge, eq };

struct LpVariable {
  std::string name;
  VarKind kind = VarKind::continuous;
  double lower = 0.0;
  double upper = 0.0;  // ignored when unbounded
  bool upper_bounded = false;
};

struct LpTerm {
  double coef = 0.0;
  int var = -1;
};

struct LpConstraint {
  std::string name;
  std::vector<LpTerm> terms;
  RowSense sense = RowSense::eq;
  double rhs = 0.0;
};

// In-memory mixed-integer model: a linear objective (minimized), rows, and
// typed variables. The flight legs are arc-flow binaries per offload point;
// backhaul traffic is a per-(f,a,v) commodity flow on the physical graph.
struct LpModel {
  std::vector<std::string> header;  // comment lines
  std::vector<LpVariable> variables;
  std::vector<LpTerm> objective;
  std::vector<LpConstraint> constraints;

  int find_var(const std::string& name) const;

  std::map<std::string, int> index;  // name -> variable position
};

// Builds the complete model for an instance. Requires a positive bitrate
// (the traffic-flow constraints degenerate at zero) and the joules power
// convention (the watts reading is not linear in the flight variables).
LpModel build_lp_model(const ProblemInstance& instance);

// CPLEX-LP text form; byte-identical for identical instances.
void write_lp(const LpModel& model, std::ostream& out);
std::string write_lp(const LpModel& model);

// Translates a native solution into a full variable assignment (every model
// variable gets a value).
std::map<std::string, double> lp_assignment_from_solution(
    const ProblemInstance& instance, const LpModel& model,
    const Solution& solution);

// Evaluates all rows under an assignment; returns the names of violated
// constraints (with slack annotation). Missing variables count as zero.
std::vector<std::string> check_lp_assignment(
    const LpModel& model, const std::map<std::string, double>& values,
    double tolerance = 1e-6);

double lp_objective_value(const LpModel& model,
                          const std::map<std::string, double>& values);

}  // namespace uavfog
