// Two-qutrit unextendible product bases and the asymptotic-LOCC
// impossibility engine.
//
// Any UPB in C^3 ⊗ C^3 has five product states |psi_i> = |alpha_i>|beta_i>
// parametrized, up to local unitaries, by six angles:
//
//   |alpha_0> = |0>
//   |alpha_1> = |1>
//   |alpha_2> = cos(tA)|0> + sin(tA)|2>
//   |alpha_3> = sin(gA)sin(tA)|0> + cos(gA)e^{i pA}|1> - sin(gA)cos(tA)|2>
//   |alpha_4> = (sin(gA)cos(tA)e^{i pA}|1> + cos(gA)|2>) / N_A
//   |beta_0>  = |1>
//   |beta_1>  = sin(gB)sin(tB)|0> + cos(gB)e^{i pB}|1> - sin(gB)cos(tB)|2>
//   |beta_2>  = |0>
//   |beta_3>  = cos(tB)|0> + sin(tB)|2>
//   |beta_4>  = (sin(gB)cos(tB)e^{i pB}|1> + cos(gB)|2>) / N_B
//
// with N = sqrt(cos^2 g + sin^2 g cos^2 t); unextendibility requires that
// none of sin/cos of the theta and gamma angles vanishes.
//
// A nontrivial non-disturbing product operator a ⊗ b would have to produce
// orthogonality graphs G_a, G_b that are complementary Hamiltonian 5-cycles.
// For each of the 12 cycles the five edge constraints <alpha_i|a|alpha_j> = 0
// are linear in a; the engine solves them and then decides whether the
// solution space admits a PSD, non-scalar element with all diagonal overlaps
// positive.  It never does: one cycle pins a to the scalars and the other
// eleven force a vanishing overlap, which is the numerical content of the
// impossibility theorem.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "locc/linalg.hpp"
#include "locc/states.hpp"

namespace locc {

// Hard floor on |sin|, |cos| of the theta/gamma angles; below it the
// parametrization degenerates and generation refuses to run.
inline constexpr double kUpbValidityFloor = 1e-4;

struct UpbParams {
  double theta_a = 0.0;
  double gamma_a = 0.0;
  double phi_a = 0.0;
  double theta_b = 0.0;
  double gamma_b = 0.0;
  double phi_b = 0.0;

  // Throws ParamDomainError when any of sin/cos(theta), sin/cos(gamma)
  // falls below the floor on either side.
  void validate(double floor = kUpbValidityFloor) const;
  bool principal_domain() const;  // all four theta/gamma angles in (0, pi/2)
};

struct UpbInstance {
  UpbParams params;
  std::array<Vec, 5> alphas;
  std::array<Vec, 5> betas;
  std::array<Vec, 5> psis;  // psi_i = alpha_i ⊗ beta_i
};

// beta_i equals alpha_{sigma(i)} evaluated at Bob's angles (phi = 0):
// beta_{0,1,2,3,4} ~ alpha_{1,3,0,2,4}.
inline constexpr std::array<int, 5> kBetaFromAlpha = {1, 3, 0, 2, 4};

// Build the instance; checks pairwise orthogonality of the psis and the
// any-three-span property on both sides.
UpbInstance generate(const UpbParams& params);

// Every 3-subset on each side has smallest singular value > tol.
bool check_unextendible(const UpbInstance& u, double tol = 1e-8);

// The equivalent instance with phi_A = phi_B = 0 (the local diagonal change
// of basis |1> -> e^{i phi}|1> applied on each side).  Entrywise absolute
// values of the local Gram matrices are preserved.
UpbInstance reduce_phases(const UpbInstance& u);

struct OrthGraph {
  Side side = Side::A;
  std::vector<std::pair<int, int>> edges;  // normalized i < j

  bool has_edge(int i, int j) const;
  int max_degree() const;
};

// Edge (i,j) wherever |<v_i|a|v_j>| <= tol.
OrthGraph orth_graph(const std::array<Vec, 5>& vectors, const HermitianOperator& a, double tol);

struct Cycle {
  int id = 0;                              // 1..12
  std::array<int, 5> order{};              // vertex order around the pentagon
  std::vector<std::pair<int, int>> edges;  // the 5 cycle edges, i < j
};

// The 12 Hamiltonian cycles on vertices {0..4} in the fixed table order.
const std::array<Cycle, 12>& enumerate_cycles();

// Edge-complement pairing: 1<->7, 2<->8, 3<->9, 4<->10, 5<->11, 6<->12.
int complement_cycle(int id);

// Case mapping: O1->I, O2,O3->II, O4,O5->III, O6->IV, O7->V, O8,O9->VI,
// O10,O11->VII, O12->VIII.
int case_for_cycle(int id);

enum class CaseVerdict { scalar_only, infeasible, witness_found };

std::string verdict_name(CaseVerdict v);

struct CaseResult {
  int cycle_id = 0;
  std::vector<HermitianOperator> basis;  // solution space of the edge constraints
  int linear_dim = -1;                   // -1 when the closed-form path skipped the solve
  CaseVerdict verdict = CaseVerdict::infeasible;
  // Best over the search of min(lambda_min(a), min_i <v_i|a|v_i>) at
  // tr(a) = 1; nonpositive (up to tolerance) certifies infeasibility.
  double margin = 0.0;
  std::optional<std::array<double, 3>> free_params;  // r1, r2, r3 on the closed-form path
  std::optional<HermitianOperator> witness;          // only for witness_found
  std::string reasoning;                             // closed-form path: the forcing argument
};

// Solve the five <v_i|a|v_j> = 0 edge constraints of the cycle over Hermitian
// a and search the solution space for a PSD, non-scalar element with positive
// diagonal overlaps.  Grid step 0.05 on the parameter sphere plus coordinate
// descent refinement.
CaseResult case_feasibility_vectors(const std::array<Vec, 5>& vectors, int cycle_id, double tol);

// Same engine on the instance's alpha side; requires phi = 0.
CaseResult case_feasibility(const UpbInstance& u, int cycle_id, double tol = 1e-8);

// The per-case algebra evaluated numerically at the instance's A-side angles:
// case I yields the scalar solution r1 = r2 = r3; every other case forces a
// vanishing multiplier through hermiticity and PSD minor constraints.
CaseResult closed_form_case(const UpbInstance& u, int case_number);

// |0> <-> |1> change of basis on the analyzed (alpha) side: returns the
// modified angles (theta', gamma') with
//   sin t' = cos g / N,  cos t' = sin g cos t / N,
//   cos g' = sin g sin t,  sin g' = N.
// The generated alphas transform by the vertex relabeling (0 1)(2 4).
// Requires phi = 0.
UpbParams swap_basis(const UpbParams& params);

struct Theorem4Report {
  bool certified = false;
  bool principal_domain = false;
  double chi = 0.0;                // the chi-window constant used in reporting
  double min_overlap_bound = 0.0;  // 1 - 4*chi
  std::string kernel_condition;    // holds automatically for a UPB
  std::array<CaseResult, 12> side_a;  // alphas against O_k
  std::array<CaseResult, 12> side_b;  // betas against complement(O_k)
};

// Run the full case analysis on both sides.  Certified when no cycle admits a
// witness and every scalar-only branch on side A meets a scalar-only
// complement branch on side B (forcing E proportional to I, excluded by
// chi != 1/5).
Theorem4Report theorem4_verify(const UpbParams& params, double tol = 1e-8);

}  // namespace locc
