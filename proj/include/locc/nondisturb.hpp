// Non-disturbing operator calculus.
//
// E is non-disturbing for an orthogonal set S when tr(E rho E sigma) = 0 for
// all distinct rho, sigma in S; for PSD E this is equivalent to vanishing
// cross-support blocks Q_rho' E Q_sigma = 0.  A finite-LOCC discrimination
// protocol must open with a local non-disturbing measurement, so the central
// computation here is the real-linear space of Hermitian a with a ⊗ I (or
// I ⊗ b) non-disturbing for S, solved as a nullspace problem over the
// trace-orthonormal Hermitian basis.
//
// The constraint assembly uses the vector (support-isometry) form, which is
// linear in a; the quartic trace form is kept as an independent cross-check.

#pragma once

#include <optional>
#include <vector>

#include "locc/linalg.hpp"
#include "locc/states.hpp"

namespace locc {

// Real coordinates of a Hermitian matrix: d diagonal entries, then re/im of
// each upper-triangular entry in lexicographic order.  Round-trips exactly.
struct HermParam {
  int dim = 0;
  std::vector<double> coords;  // size dim*dim
};

HermParam herm_to_param(const HermitianOperator& h);
HermitianOperator param_to_herm(const HermParam& p);

// Trace-orthonormal Hermitian basis F_0..F_{d^2-1} in the HermParam index
// order: F_p = E_pp, then (E_pq + E_qp)/sqrt2 and i(E_pq - E_qp)/sqrt2 per
// upper pair (p,q).  tr(F_m F_n) = delta_mn.
Mat herm_basis_element(int d, int m);

// Coordinates over that basis.  herm_trace_coords(W)[m] = tr(F_m W), so for
// Hermitian a with coordinates x, tr(a W) = sum_m x_m t_m; W need not be
// Hermitian.
Eigen::VectorXd herm_ortho_coords(const HermitianOperator& h);
HermitianOperator herm_from_ortho_coords(int d, const Eigen::VectorXd& x);
Eigen::VectorXcd herm_trace_coords(const Mat& w);

struct NondisturbingSpace {
  Side side = Side::A;
  std::vector<HermitianOperator> basis;  // orthonormal under the trace inner product
  int dim = 0;
};

// max over distinct pairs of |tr(E rho_i E rho_j)| <= tol.
bool is_nondisturbing(const HermitianOperator& e, const StateSet& s, double tol = tol::kCheck);

// Support form: ||Q_i' E Q_j||_max <= tol for all distinct pairs.  Requires
// PSD E (the equivalence with the trace form is stated for PSD operators).
bool is_nondisturbing_vec(const HermitianOperator& e, const StateSet& s, double tol = tol::kCheck);

struct InvarianceReport {
  bool inv_def = false;      // ||(I-QQ')MQ|| small
  bool inv_factor = false;   // MQ = QX with X = Q'MQ
  bool inv_eigbasis = false; // QQ' commutes with every eigenprojector of M
  double res_def = 0.0;
  double res_factor = 0.0;
  double res_eigbasis = 0.0;

  bool invariant() const { return inv_def; }
};

// The three equivalent characterizations of M-invariance of span(Q).  The
// booleans must agree; disagreement throws (it would mean the equivalence
// broke down numerically).
InvarianceReport invariance_equivalent(const HermitianOperator& m, const Isometry& h,
                                       double tol = tol::kCheck);

struct DecoupleReport {
  bool joint_inv = false;  // H_A ⊗ H_B invariant under a ⊗ b
  bool a_inv = false;      // H_A invariant under a
  bool b_inv = false;      // H_B invariant under b
  bool nonzero = false;    // (a ⊗ b) P != 0
};

// Product-subspace decoupling: when the joint product subspace is
// (a ⊗ b)-invariant and (a ⊗ b)P != 0, the per-factor invariances must hold;
// a violation throws.
DecoupleReport lemma2_decouple(const HermitianOperator& a, const HermitianOperator& b,
                               const Isometry& h_a, const Isometry& h_b,
                               double tol = tol::kCheck);

// Basis of the real-linear space of Hermitian a (side A), b (side B), or full
// E (side joint) whose cross-support blocks vanish for every distinct pair in
// S.  The space always contains the identity; rank decisions use
// rank_tol x largest singular value.
NondisturbingSpace solve_local_space(const StateSet& s, Side side, double rank_tol = tol::kRank);

// None when the space is scalars only; otherwise the first basis element
// orthogonalized against I: trace-zero, unit Frobenius norm, deterministic.
std::optional<HermitianOperator> pick_nontrivial(const NondisturbingSpace& space);

struct ProductCandidate {
  HermitianOperator a;
  HermitianOperator b;
  double chi = 0.0;
};

struct Thm1Report {
  double chi = 0.0;          // the target value for condition (2)
  double sum_tr = 0.0;       // condition (1): sum_rho tr(E rho) = 1
  double max_tr = 0.0;       // condition (2): max_rho tr(E rho) = chi
  double min_tr = 0.0;
  double min_bound = 0.0;    // 1 - (n-1) chi, implied by (1) and (2)
  double nondist_residual = 0.0;
  bool cond_sum = false;
  bool cond_max = false;
  bool cond_nondisturbing = false;
  bool chi_allows_identity = false;  // chi = 1/n, the only value compatible with E ∝ I
  std::string kernel_condition;      // "not checked" outside the UPB setting

  bool all_pass() const { return cond_sum && cond_max && cond_nondisturbing; }
};

Thm1Report check_thm1_conditions(const ProductCandidate& cand, const StateSet& s,
                                 double tol = tol::kCheck);

}  // namespace locc
