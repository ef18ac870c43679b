#include "arclab/regime.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

namespace arclab {

namespace {

// Atomic exponent expressions the min/max displays are built from.  The *2
// atoms read (m2, alpha), the *3 atoms (m3, gamma); the transpose flag swaps
// those argument roles before evaluation.
enum class Atom {
  L2, L3, // 2*m - 1
  N2, N3, // m - 1/n
  S,      // (n-2)/n
  Y2, Y3, // m - 2/n + e
  T2, T3, // 2*m
  R2, R3, // m + (n*e-2)/(n*e-1)
  B2, B3, // 2*m - beta
  P2, P3, // 2*m + 1 - beta
};

struct ThresholdArgs {
  double m2, m3, a, g, beta, n;
};

double atom_value(Atom at, const ThresholdArgs& x) {
  switch (at) {
    case Atom::L2: return 2.0 * x.m2 - 1.0;
    case Atom::L3: return 2.0 * x.m3 - 1.0;
    case Atom::N2: return x.m2 - 1.0 / x.n;
    case Atom::N3: return x.m3 - 1.0 / x.n;
    case Atom::S:  return (x.n - 2.0) / x.n;
    case Atom::Y2: return x.m2 - 2.0 / x.n + x.a;
    case Atom::Y3: return x.m3 - 2.0 / x.n + x.g;
    case Atom::T2: return 2.0 * x.m2;
    case Atom::T3: return 2.0 * x.m3;
    case Atom::R2: return x.m2 + (x.n * x.a - 2.0) / (x.n * x.a - 1.0);
    case Atom::R3: return x.m3 + (x.n * x.g - 2.0) / (x.n * x.g - 1.0);
    case Atom::B2: return 2.0 * x.m2 - x.beta;
    case Atom::B3: return 2.0 * x.m3 - x.beta;
    case Atom::P2: return 2.0 * x.m2 + 1.0 - x.beta;
    case Atom::P3: return 2.0 * x.m3 + 1.0 - x.beta;
  }
  return 0.0;
}

const char* atom_expr(Atom at) {
  switch (at) {
    case Atom::L2: return "2*m2-1";
    case Atom::L3: return "2*m3-1";
    case Atom::N2: return "m2-1/n";
    case Atom::N3: return "m3-1/n";
    case Atom::S:  return "(n-2)/n";
    case Atom::Y2: return "m2-2/n+alpha";
    case Atom::Y3: return "m3-2/n+gamma";
    case Atom::T2: return "2*m2";
    case Atom::T3: return "2*m3";
    case Atom::R2: return "m2+(n*alpha-2)/(n*alpha-1)";
    case Atom::R3: return "m3+(n*gamma-2)/(n*gamma-1)";
    case Atom::B2: return "2*m2-beta";
    case Atom::B3: return "2*m3-beta";
    case Atom::P2: return "2*m2+1-beta";
    case Atom::P3: return "2*m3+1-beta";
  }
  return "";
}

using Branch = std::vector<Atom>;
using BranchList = std::vector<Branch>;

// One list per threshold constant, branches and atoms in display order.
const BranchList& branches_for(ThresholdId id) {
  using A = Atom;
  static const BranchList tA = {
      {A::L2, A::L3, A::S}, {A::N2, A::N3, A::S}, {A::L2, A::N3, A::S},
      {A::N2, A::L3, A::S}, {A::N2, A::N3}};
  static const BranchList tB = {
      {A::Y2, A::Y3}, {A::T2, A::T3, A::S}, {A::Y2, A::T3, A::S},
      {A::T2, A::Y3, A::S}};
  static const BranchList tC = {
      {A::R2, A::R3}, {A::T2, A::T3, A::S}, {A::R2, A::T3, A::S},
      {A::T2, A::R3, A::S}};
  static const BranchList tD = {{A::R2, A::R3}, {A::R2, A::T3, A::S}};
  static const BranchList tE = {{A::R2, A::R3}, {A::T2, A::S, A::R3}};
  static const BranchList tF = {{A::R2, A::R3}};
  static const BranchList tG = {
      {A::N2, A::Y3}, {A::L2, A::T3, A::S}, {A::N2, A::T3, A::S},
      {A::L2, A::Y3, A::S}, {A::N2, A::Y3, A::S}};
  static const BranchList tH = {
      {A::N2, A::R3}, {A::L2, A::T3, A::S}, {A::N2, A::T3, A::S},
      {A::L2, A::R3, A::S}, {A::N2, A::R3, A::S}};
  static const BranchList tI = {
      {A::N2, A::R3}, {A::L2, A::R3, A::S}, {A::N2, A::R3, A::S}};
  static const BranchList tJ = {
      {A::Y2, A::R3}, {A::T2, A::T3, A::S}, {A::Y2, A::T3, A::S},
      {A::T2, A::R3, A::S}};
  static const BranchList tK = {{A::Y2, A::R3}, {A::T2, A::S, A::R3}};
  static const BranchList tAp = {
      {A::L2, A::L3, A::S}, {A::N2, A::N3, A::S}, {A::L2, A::N3, A::S},
      {A::N2, A::L3, A::S}, {A::B2, A::B3, A::S}, {A::B2, A::B3},
      {A::N2, A::B3, A::S}, {A::L2, A::B3, A::S}, {A::B2, A::L3, A::S},
      {A::B2, A::N3, A::S}};
  static const BranchList tBp = {
      {A::T2, A::T3, A::S}, {A::P2, A::P3}, {A::T2, A::P3, A::S},
      {A::P2, A::T3, A::S}};
  static const BranchList tCp = {
      {A::L2, A::S, A::T3}, {A::L2, A::S, A::P3}, {A::N2, A::T3, A::S},
      {A::N2, A::S, A::P3}, {A::B2, A::S, A::T3}, {A::B2, A::S, A::P3},
      {A::B2, A::P3}};
  switch (id) {
    case ThresholdId::A: return tA;
    case ThresholdId::B: return tB;
    case ThresholdId::C: return tC;
    case ThresholdId::D: return tD;
    case ThresholdId::E: return tE;
    case ThresholdId::F: return tF;
    case ThresholdId::G: return tG;
    case ThresholdId::H: return tH;
    case ThresholdId::I: return tI;
    case ThresholdId::J: return tJ;
    case ThresholdId::K: return tK;
    case ThresholdId::Ap: return tAp;
    case ThresholdId::Bp: return tBp;
    case ThresholdId::Cp: return tCp;
  }
  return tA;
}

bool needs_beta(ThresholdId id) {
  return id == ThresholdId::Ap || id == ThresholdId::Bp ||
         id == ThresholdId::Cp;
}

} // namespace

const char* threshold_id_label(ThresholdId id) {
  switch (id) {
    case ThresholdId::A: return "A";
    case ThresholdId::B: return "B";
    case ThresholdId::C: return "C";
    case ThresholdId::D: return "D";
    case ThresholdId::E: return "E";
    case ThresholdId::F: return "F";
    case ThresholdId::G: return "G";
    case ThresholdId::H: return "H";
    case ThresholdId::I: return "I";
    case ThresholdId::J: return "J";
    case ThresholdId::K: return "K";
    case ThresholdId::Ap: return "A'";
    case ThresholdId::Bp: return "B'";
    case ThresholdId::Cp: return "C'";
  }
  return "?";
}

std::string threshold_label(const ThresholdName& name) {
  std::string s = threshold_id_label(name.id);
  if (name.transpose) s += "^t";
  return s;
}

ThresholdBreakdown compute_threshold_breakdown(const ThresholdName& name,
                                               double m2, double m3,
                                               double alpha, double gamma,
                                               std::optional<double> beta,
                                               int n) {
  if (needs_beta(name.id) && !beta.has_value())
    throw std::invalid_argument(std::string("threshold ") +
                                threshold_id_label(name.id) +
                                " requires beta");
  ThresholdArgs x{m2, m3, alpha, gamma, beta.value_or(0.0),
                  static_cast<double>(n)};
  if (name.transpose) {
    std::swap(x.m2, x.m3);
    std::swap(x.a, x.g);
  }
  ThresholdBreakdown out;
  const BranchList& bl = branches_for(name.id);
  out.branch_values.reserve(bl.size());
  out.branch_exprs.reserve(bl.size());
  for (const Branch& br : bl) {
    double m = atom_value(br[0], x);
    std::string expr = std::string("max{") + atom_expr(br[0]);
    for (std::size_t i = 1; i < br.size(); ++i) {
      m = std::max(m, atom_value(br[i], x));
      expr += ", ";
      expr += atom_expr(br[i]);
    }
    expr += "}";
    out.branch_values.push_back(m);
    out.branch_exprs.push_back(std::move(expr));
  }
  out.value = out.branch_values[0];
  out.attaining_branch = 0;
  for (std::size_t i = 1; i < out.branch_values.size(); ++i) {
    if (out.branch_values[i] < out.value) {
      out.value = out.branch_values[i];
      out.attaining_branch = i;
    }
  }
  return out;
}

double compute_threshold(const ThresholdName& name, double m2, double m3,
                         double alpha, double gamma,
                         std::optional<double> beta, int n) {
  return compute_threshold_breakdown(name, m2, m3, alpha, gamma, beta, n)
      .value;
}

namespace {

// Interval buckets tiling (0,1] per axis.  1/n closes to the left, 2/n
// opens the right-hand cases, and 1 is bucketed on its own so the closed
// upper endpoints land in the cases that state them.
enum class Bucket { Small, Mid, Big, One };

Bucket bucket_of(double x, int n) {
  if (x <= 1.0 / n) return Bucket::Small;
  if (x < 2.0 / n) return Bucket::Mid;
  if (x < 1.0) return Bucket::Big;
  return Bucket::One;
}

struct CaseEntry {
  const char* case_id;
  ThresholdId threshold;
  bool transpose;
};

// Plain-model case table, rows = alpha bucket, cols = gamma bucket.
constexpr CaseEntry kPlainCases[4][4] = {
    // gamma: Small            Mid                   Big                   One
    {{"A1", ThresholdId::A, false}, {"A7", ThresholdId::G, false},
     {"A8", ThresholdId::H, false}, {"A9", ThresholdId::I, false}},
    {{"A10", ThresholdId::G, true}, {"A2", ThresholdId::B, false},
     {"A11", ThresholdId::J, false}, {"A12", ThresholdId::K, false}},
    {{"A13", ThresholdId::H, true}, {"A15", ThresholdId::J, true},
     {"A3", ThresholdId::C, false}, {"A5", ThresholdId::E, false}},
    {{"A14", ThresholdId::I, true}, {"A16", ThresholdId::K, true},
     {"A4", ThresholdId::D, false}, {"A6", ThresholdId::F, false}},
};

int bucket_index(Bucket b) {
  switch (b) {
    case Bucket::Small: return 0;
    case Bucket::Mid: return 1;
    case Bucket::Big: return 2;
    case Bucket::One: return 3;
  }
  return 0;
}

std::optional<CaseEntry> lookup_case(const ModelParams& p) {
  if (!p.logistic) {
    Bucket ba = bucket_of(p.alpha, p.n);
    Bucket bg = bucket_of(p.gamma, p.n);
    return kPlainCases[bucket_index(ba)][bucket_index(bg)];
  }
  // Logistic: buckets (0,1/n] and (1/n,1); the endpoint 1 is uncovered.
  if (p.alpha >= 1.0 || p.gamma >= 1.0) return std::nullopt;
  bool as = p.alpha <= 1.0 / p.n;
  bool gs = p.gamma <= 1.0 / p.n;
  if (as && gs) return CaseEntry{"A17", ThresholdId::Ap, false};
  if (!as && !gs) return CaseEntry{"A18", ThresholdId::Bp, false};
  if (as) return CaseEntry{"A19", ThresholdId::Cp, false};
  return CaseEntry{"A20", ThresholdId::Cp, true};
}

bool linear_sensitivities(const ModelParams& p) {
  return p.m1 == 1.0 && p.m2 == 1.0 && p.m3 == 1.0;
}

std::string fmtg(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Known rescue conditions for the plain linear model in the regimes its
// case table cannot decide.
void attach_plain_side_conditions(const ModelParams& p,
                                  const std::string& case_id,
                                  std::vector<SideCondition>& out) {
  if (!linear_sensitivities(p)) return;
  if (case_id == "A6") {
    out.push_back(
        {"linear-smallness-both",
         "with m1=m2=m3=1 and alpha=gamma=1, boundedness holds when "
         "chi*||v0||_inf < 1/(5n) and xi*||w0||_inf < 1/(5n)",
         false});
  } else if (case_id == "A9" || case_id == "A14") {
    bool swapped = (case_id == "A14");
    out.push_back(
        {swapped ? "linear-partial-smallness-attr"
                 : "linear-partial-smallness-rep",
         std::string("with m1=m2=m3=1 and ") +
             (swapped ? "gamma" : "alpha") +
             " <= 1/n at the endpoint case: boundedness is known for n=1, "
             "and for n=2 when " +
             (swapped ? "chi" : "xi") +
             " stays below a constant depending on n and the other signal's "
             "initial sup (constant unspecified)",
         true});
  } else if (case_id == "A12" || case_id == "A16") {
    bool swapped = (case_id == "A16");
    out.push_back(
        {swapped ? "linear-mid-smallness-attr" : "linear-mid-smallness-rep",
         std::string("with m1=m2=m3=1 and ") + (swapped ? "gamma" : "alpha") +
             " in (1/n,2/n) at the endpoint case: boundedness is known for "
             "n=1, and for n=2 when " +
             (swapped ? "chi" : "xi") +
             " stays below a constant depending on n and the other signal's "
             "initial sup (constant unspecified)",
         true});
  }
}

// Known rescue conditions for logistic runs whose alpha or gamma sits at
// the uncovered endpoint 1.
void attach_logistic_side_conditions(const ModelParams& p,
                                     std::vector<SideCondition>& out) {
  bool as = p.alpha <= 1.0 / p.n; // in (0,1/n]
  bool gs = p.gamma <= 1.0 / p.n;
  if (linear_sensitivities(p)) {
    if (p.beta > 2.0) {
      out.push_back({"logistic-linear-strong-damping",
                     "with m1=m2=m3=1 and beta > 2, boundedness holds for "
                     "every alpha, gamma in (0,1]",
                     false});
    } else if (p.beta == 2.0) {
      std::string need;
      if (!as && !gs)
        need = "mu > K(n) * (chi^2 ||chi v0||_inf^{4/n} + xi^2 ||xi "
               "w0||_inf^{4/n})";
      else if (!as && gs)
        need = "mu > K(n) * chi^2 ||chi v0||_inf^{4/n}";
      else if (as && !gs)
        need = "mu > K(n) * xi^2 ||xi w0||_inf^{4/n}";
      else
        return;
      out.push_back({"logistic-linear-quadratic-damping",
                     "with m1=m2=m3=1 and beta = 2, boundedness holds when " +
                         need + " (constant K(n) unspecified)",
                     true});
    }
    return;
  }
  // Nonlinear sensitivities: the logistic thresholds keep working at the
  // endpoint when the damping is strong enough.
  bool both_mid = !as && !gs;
  bool mixed = as != gs;
  if (!(both_mid || mixed)) return;
  ThresholdName name{both_mid ? ThresholdId::Bp : ThresholdId::Cp,
                     mixed && !as};
  double thr = compute_threshold(name, p.m2, p.m3, p.alpha, p.gamma, p.beta,
                                 p.n);
  if (p.beta > 2.0) {
    out.push_back({"logistic-strong-damping-threshold",
                   "with beta > 2, boundedness holds when m1 > " +
                       std::string(threshold_label(name)) + " = " + fmtg(thr),
                   false});
  } else if (p.beta == 2.0) {
    out.push_back({"logistic-quadratic-damping-threshold",
                   "with beta = 2, boundedness holds when m1 > " +
                       std::string(threshold_label(name)) + " = " + fmtg(thr) +
                       " and mu exceeds a constant (unspecified)",
                   true});
  }
}

} // namespace

const char* decision_label(Decision d) {
  return d == Decision::Bounded ? "bounded" : "uncovered";
}

std::string classify_case(const ModelParams& p) {
  auto entry = lookup_case(p);
  return entry ? entry->case_id : "uncovered";
}

RegimeVerdict verdict(const ModelParams& p) {
  ValidationResult vr = validate_params(p);
  if (!vr.ok()) {
    std::string msg = "verdict requires valid parameters:";
    for (const auto& v : vr.violations) msg += " " + v + ";";
    throw std::invalid_argument(msg);
  }
  RegimeVerdict out;
  auto entry = lookup_case(p);
  if (!entry) {
    out.case_id = "uncovered";
    out.decision = Decision::Uncovered;
    attach_logistic_side_conditions(p, out.side_conditions);
    return out;
  }
  out.case_id = entry->case_id;
  ThresholdName name{entry->threshold, entry->transpose};
  out.threshold_name = name;
  std::optional<double> beta =
      p.logistic ? std::optional<double>(p.beta) : std::nullopt;
  double thr =
      compute_threshold(name, p.m2, p.m3, p.alpha, p.gamma, beta, p.n);
  out.threshold_value = thr;
  out.m1_required = thr;
  out.decision = (p.m1 > thr) ? Decision::Bounded : Decision::Uncovered;
  if (out.decision == Decision::Uncovered && !p.logistic)
    attach_plain_side_conditions(p, out.case_id, out.side_conditions);
  return out;
}

namespace {

void set_model_field(ModelParams& p, const std::string& name, double value) {
  if (name == "m1") p.m1 = value;
  else if (name == "m2") p.m2 = value;
  else if (name == "m3") p.m3 = value;
  else if (name == "chi") p.chi = value;
  else if (name == "xi") p.xi = value;
  else if (name == "K1") p.K1 = value;
  else if (name == "K2") p.K2 = value;
  else if (name == "alpha") p.alpha = value;
  else if (name == "gamma") p.gamma = value;
  else if (name == "k") p.k = value;
  else if (name == "mu") p.mu = value;
  else if (name == "beta") p.beta = value;
  else
    throw std::invalid_argument("unknown sweep parameter: " + name);
}

double axis_value(const SweepAxis& ax, int i) {
  if (ax.steps == 1) return ax.from;
  return ax.from + (ax.to - ax.from) * i / (ax.steps - 1);
}

} // namespace

Atlas atlas(const ModelParams& base, const SweepAxis& axis1,
            const SweepAxis& axis2, int workers) {
  if (axis1.param.empty())
    throw std::invalid_argument("sweep axis1 must name a parameter");
  if (axis1.steps < 1 || axis2.steps < 1)
    throw std::invalid_argument("sweep axes need at least one step");
  if (!axis2.param.empty() && axis2.param == axis1.param)
    throw std::invalid_argument("sweep axes must name distinct parameters");

  Atlas out;
  out.axis1 = axis1;
  out.axis2 = axis2;
  int cols = axis2.param.empty() ? 1 : axis2.steps;
  int total = axis1.steps * cols;
  out.cells.resize(total);

  // Every node is validated up front so a sweep cannot emit half a table.
  std::vector<ModelParams> nodes(total, base);
  for (int i = 0; i < axis1.steps; ++i) {
    for (int j = 0; j < cols; ++j) {
      ModelParams& m = nodes[i * cols + j];
      set_model_field(m, axis1.param, axis_value(axis1, i));
      if (!axis2.param.empty())
        set_model_field(m, axis2.param, axis_value(axis2, j));
      ValidationResult vr = validate_params(m);
      if (!vr.ok())
        throw std::invalid_argument("sweep node (" + std::to_string(i) + "," +
                                    std::to_string(j) +
                                    ") is invalid: " + vr.violations.front());
    }
  }

  auto fill = [&](int lo, int hi) {
    for (int idx = lo; idx < hi; ++idx) {
      int i = idx / cols, j = idx % cols;
      AtlasCell& cell = out.cells[idx];
      cell.axis1_value = axis_value(axis1, i);
      cell.axis2_value = axis2.param.empty() ? 0.0 : axis_value(axis2, j);
      cell.verdict = verdict(nodes[idx]);
    }
  };

  workers = std::max(1, std::min(workers, total));
  if (workers == 1) {
    fill(0, total);
  } else {
    // Chunks are fixed by index, results land in preassigned slots: the
    // merged table is identical for any worker count.
    std::vector<std::future<void>> futs;
    int chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      int lo = w * chunk, hi = std::min(total, lo + chunk);
      if (lo >= hi) break;
      futs.push_back(std::async(std::launch::async, fill, lo, hi));
    }
    for (auto& f : futs) f.get();
  }
  return out;
}

} // namespace arclab
