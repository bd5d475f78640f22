#pragma once

// Weight conditions behind the maximum principles for dbar w = alpha conj(w),
// the dampers used to pass to unbounded domains, the log-map pullback, an
// empirical maximum-principle verifier and the three-lines harness.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vekua/geometry.hpp"
#include "vekua/grid_function.hpp"
#include "vekua/solver.hpp"
#include "vekua/weights.hpp"

namespace vekua {

// ---- dampers ---------------------------------------------------------------

enum class DamperKind {
  HalfPlane,  // h_eps(z) = 1/(1 + eps z)
  LogMap,     // g_eps(z) = 1/(1 + eps log((z - center)/radius))
};

// Branch of log((z - a)/r): Im = theta0 + Arg((z - a) e^{-i theta0}), i.e. the
// cut is the ray from `center` at angle theta0 + pi.
struct LogBranch {
  Complex center;
  double radius;
  double theta0;
  Complex log(Complex z) const;
  std::string describe() const;
};

struct DamperFamily {
  DamperKind kind = DamperKind::HalfPlane;
  std::vector<double> epsilons;
  Complex center{};    // LogMap only
  double radius = 1.0; // LogMap only

  static DamperFamily half_plane(std::vector<double> epsilons = default_epsilons());
  static DamperFamily log_map(Complex center, double radius, std::vector<double> epsilons = default_epsilons());
  // 25 log-spaced values from 1e-3 to 1e3.
  static std::vector<double> default_epsilons();
};

std::vector<double> logspace(double lo, double hi, int n);

// h_eps(z) for HalfPlane; for LogMap the branch must be supplied.
Complex damper_value(const DamperFamily& d, double eps, Complex z, const LogBranch* branch = nullptr);
// |d damper| / |damper| at z.
double damper_ratio(const DamperFamily& d, double eps, Complex z, const LogBranch* branch = nullptr);
// sup over eps > 0 of damper_ratio; infinite where unbounded.
double damper_envelope(const DamperFamily& d, Complex z, const LogBranch* branch = nullptr);

// Branch for a log-map damper on the given domain: the cut points away from
// the domain's centroid, or follows the domain's own slit for a slit annulus
// with the same centre. Throws BranchCutCrossesDomain when grid nodes straddle the cut.
LogBranch choose_branch(const Grid& grid, Complex center, double radius);

// ---- condition reports -------------------------------------------------------

enum class Condition { Carl, HalfPlane, LogMap, ThreeLines };
enum class VerdictKind { Holds, HoldsWithEquality, Fails };

struct Witness {
  Complex z;
  std::optional<double> epsilon;
  double lhs;
  double rhs;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Holds;
  double tol = 1e-10;  // relative
  std::optional<Witness> witness;
  bool holds() const { return kind != VerdictKind::Fails; }
};

struct Envelope {
  bool available = false;
  std::string reason;              // why not, when unavailable
  double min_margin = kInfinity;   // absolute
  double min_relative = kInfinity;
  std::optional<Complex> worst_z;
};

struct ConditionReport {
  Condition condition;
  std::string weight;
  std::string domain;
  double spacing = 0.0;
  std::vector<double> epsilons;
  // LHS - RHS per grid node, minimised over the epsilon family; NaN where not evaluated.
  std::vector<double> margin;
  double min_margin = kInfinity;
  double min_relative_margin = kInfinity;
  std::size_t evaluated = 0;
  Verdict verdict;
  std::string verdict_source;  // "pointwise", "epsilon-grid" or "envelope"
  Envelope envelope;
  std::vector<Complex> singular_points;  // skipped boundary nodes
  std::string branch;                    // log-map only
  // Carl only: random cross-check of margin >= 0 against matrix semi-definiteness.
  std::size_t equivalence_checked = 0;
  std::size_t equivalence_mismatches = 0;
  double threelines_slope = 0.0;  // three-lines only: |log(Ma/Mb)|/(b - a)

  bool holds() const { return verdict.holds(); }
};

constexpr double kEqualityTolerance = 1e-10;

// Verdict from a relative margin: Holds if > tol, HoldsWithEquality if |.| <= tol.
VerdictKind classify_margin(double relative_margin, double tol = kEqualityTolerance);

using Matrix2 = std::array<std::array<double, 2>, 2>;

// [[a + Re b, Im b], [Im b, a - Re b]] with a = -2|alpha|^2, b = -d alpha.
Matrix2 carl_matrix(Complex alpha, Complex dalpha);
// m11 <= t, m22 <= t, det >= -t * norm with t = 1e-12 * spectral norm.
bool is_negative_semidefinite(const Matrix2& m);
// 2|alpha|^2 >= |d alpha| judged with the tolerance implied by is_negative_semidefinite.
bool carl_inequality(Complex alpha, Complex dalpha);

ConditionReport check_carl(const WeightField& alpha, const Grid& grid);
ConditionReport check_halfplane(const WeightField& alpha, const Grid& grid, const DamperFamily& dampers);
ConditionReport check_logmap(const WeightField& alpha, const Grid& grid, Complex center, double radius,
                             const DamperFamily& dampers);
ConditionReport check_threelines_condition(const WeightField& alpha, const Grid& grid, double m_a, double m_b,
                                           double a, double b, const DamperFamily& dampers);

struct MuScanRow {
  double mu;
  ConditionReport report;
};
std::vector<MuScanRow> power_mu_scan(Complex a, std::span<const double> mus, const Grid& grid,
                                     const DamperFamily& dampers);

// beta(zeta) = alpha(r e^zeta + a) conj(r e^zeta), d beta = d alpha(h(zeta)) |r e^zeta|^2.
// Evaluation throws ImageOutsideDomain where h(zeta) hits the singular set of alpha.
WeightField pullback_weight(const WeightField& alpha, Complex center, double radius);

// ---- maximum principle -------------------------------------------------------

enum class MaxMode { Auto, Bounded, Unbounded };
enum class PassVerdict { Pass, Fail, Inconclusive };

struct DampedCheck {
  double epsilon;
  std::optional<double> eta;  // exhaustion radius, when one exists on the grid
  double damped_sup = 0.0;    // sup of |w h_eps| over domain nodes with |z| < eta
  double tol = 0.0;
  PassVerdict verdict = PassVerdict::Inconclusive;
};

struct MaxPrincipleReport {
  std::string mode;  // "bounded" or "unbounded"
  double interior_sup = 0.0;
  double boundary_sup = 0.0;  // true boundary
  std::optional<double> arc_sup;  // truncation edges
  double gradient_bound = 0.0;
  double tol_grid = 0.0;
  bool arc_carries_sup = false;
  PassVerdict verdict = PassVerdict::Pass;
  std::optional<Complex> witness;
  std::vector<DampedCheck> damped;  // unbounded mode, epsilon descending
};

struct MaxPrincipleOptions {
  MaxMode mode = MaxMode::Auto;
  double c = 2.0;  // tol_grid = c * spacing * gradient bound
};

MaxPrincipleReport max_principle_report(const SolutionField& w, const std::optional<DamperFamily>& dampers,
                                        const MaxPrincipleOptions& options = {});

// ---- three lines -------------------------------------------------------------

struct ThreeLinesProfile {
  double a = 0.0, b = 0.0;
  double y_cut = 0.0;
  std::vector<double> xs;  // grid column abscissae
  std::vector<double> m;   // column maxima of |w| over |y| <= y_cut
  std::vector<double> zero_lines;
  double convexity_margin = kInfinity;  // min discrete second difference of log M
};

ThreeLinesProfile three_lines_profile(const SolutionField& w, double a, double b, double y_cut, int n_x);

struct ConvexityReport {
  PassVerdict verdict = PassVerdict::Pass;
  double margin = kInfinity;  // worst chord margin (b-x)logM(a) + (x-a)logM(b) - (b-a)logM(x)
  std::array<double, 3> worst_triple{};  // (a, x, b) at the worst chord margin
  std::vector<double> chord_margins;     // per abscissa; 0 at the ends
  double midpoint_margin = kInfinity;    // worst consecutive-triple margin
  std::array<double, 3> worst_midpoint_triple{};
  double tol = 0.0;
};

ConvexityReport log_convexity_check(const ThreeLinesProfile& profile);

// ---- damper properties ---------------------------------------------------------

struct DamperPropertiesReport {
  // Empty when the grid satisfies the damper's domain requirement.
  std::string precondition;
  // (i) holomorphy: sup |dbar_h damper| and the observed order under halving of the step.
  double holomorphy_defect = 0.0;
  double holomorphy_order = 0.0;
  bool holomorphic = true;
  // (ii) decay along rays at radii R, 2R, 4R.
  std::array<double, 3> decay_radii{};
  bool decays = true;
  // (iii) sup | |damper| - 1 | per epsilon (ascending epsilon order).
  std::vector<double> limit_defect;
  bool tends_to_one = true;
  // (iv) sup |damper| over boundary samples.
  double boundary_sup = 0.0;
  bool bounded_by_one = true;
  bool all_pass() const { return precondition.empty() && holomorphic && decays && tends_to_one && bounded_by_one; }
};

DamperPropertiesReport damper_properties_check(const DamperFamily& dampers, const Grid& grid);

std::string to_string(Condition c);
std::string to_string(VerdictKind v);
std::string to_string(PassVerdict v);

}  // namespace vekua
