#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "arclab/model.hpp"

namespace arclab {

// The fourteen min-of-max threshold constants for the diffusion exponent m1.
// A..K cover the plain model, Ap/Bp/Cp ("A'", "B'", "C'") the logistic one.
enum class ThresholdId { A, B, C, D, E, F, G, H, I, J, K, Ap, Bp, Cp };

struct ThresholdName {
  ThresholdId id = ThresholdId::A;
  // Evaluate with the roles of (m2, alpha) and (m3, gamma) swapped.
  bool transpose = false;
};

const char* threshold_id_label(ThresholdId id); // "A".."K", "A'", "B'", "C'"
std::string threshold_label(const ThresholdName& name); // transposed: "G^t"

// Evaluates one threshold constant.  beta is required for Ap/Bp/Cp and
// ignored otherwise (usage error if missing where required).  Names built
// from (n*alpha-2)/(n*alpha-1) assume n*alpha != 1, and likewise for gamma;
// the case table only selects them where that holds.
double compute_threshold(const ThresholdName& name, double m2, double m3,
                         double alpha, double gamma,
                         std::optional<double> beta, int n);

// Same evaluation with every min-branch exposed for inspection.
struct ThresholdBreakdown {
  double value = 0.0;
  std::size_t attaining_branch = 0; // index of the minimal max-block
  std::vector<double> branch_values;
  std::vector<std::string> branch_exprs; // e.g. "max{2*m2-1, 2*m3-1, (n-2)/n}"
};

ThresholdBreakdown compute_threshold_breakdown(const ThresholdName& name,
                                               double m2, double m3,
                                               double alpha, double gamma,
                                               std::optional<double> beta,
                                               int n);

// Extra condition known to restore boundedness in a regime the case table
// leaves uncovered.  Conditions whose constants are not pinned down carry
// constant_unspecified and never produce a numeric pass/fail.
struct SideCondition {
  std::string id;
  std::string description;
  bool constant_unspecified = false;
};

enum class Decision { Bounded, Uncovered };

const char* decision_label(Decision d); // "bounded" / "uncovered"

struct RegimeVerdict {
  std::string case_id; // "A1".."A20" or "uncovered"
  std::optional<ThresholdName> threshold_name;
  std::optional<double> threshold_value;
  std::optional<double> m1_required; // strict lower bound on m1
  Decision decision = Decision::Uncovered;
  std::vector<SideCondition> side_conditions;
};

// Maps (alpha, gamma, logistic) to the unique covering case.  The interval
// buckets per axis are (0,1/n], (1/n,2/n), [2/n,1), {1} (plain model) and
// (0,1/n], (1/n,1) (logistic); endpoints 1/n and 2/n close to the left and
// right respectively, and logistic alpha = 1 or gamma = 1 is uncovered.
std::string classify_case(const ModelParams& p);

// Full decision: case, threshold, strict comparison of m1 (no epsilon), and
// any applicable side conditions.  Requires validate_params(p).ok().
RegimeVerdict verdict(const ModelParams& p);

struct SweepAxis {
  std::string param; // real-valued ModelParams field; "" = unused axis
  double from = 0.0;
  double to = 0.0;
  int steps = 1;
};

struct AtlasCell {
  double axis1_value = 0.0;
  double axis2_value = 0.0;
  RegimeVerdict verdict;
};

struct Atlas {
  SweepAxis axis1, axis2;
  std::vector<AtlasCell> cells; // row-major: axis1 outer, axis2 inner
};

// Verdicts over a uniform parameter grid.  Every node must validate; the
// node order (and therefore the cell order) is deterministic.
Atlas atlas(const ModelParams& base, const SweepAxis& axis1,
            const SweepAxis& axis2, int workers = 1);

} // namespace arclab
