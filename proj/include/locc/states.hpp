// Bipartite state sets.
//
// A BipartiteState is a normalized density operator on C^dA ⊗ C^dB, with an
// optional product annotation rho = tau ⊗ sigma.  Product structure is never
// inferred; callers assert it explicitly and construction checks it.
//
// The module also ships the two concrete families the verification suites
// run on:
//   domino_basis : the 9-state orthonormal product basis of C^3 ⊗ C^3
//                    |psi_0>   = |1>|1>
//                    |psi_1^±> = |0>|0±1>      |psi_2^±> = |0±1>|2>
//                    |psi_3^±> = |2>|1±2>      |psi_4^±> = |1±2>|0>
//                  with |i±j> = (|i> ± |j>)/sqrt(2)
//   lemma5_set   : four pure domino states (one sign choice per i in 1..4)
//                  plus the normalized mixture of the remaining five.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "locc/linalg.hpp"

namespace locc {

enum class Side { A, B, joint };

std::string side_name(Side s);

struct ProductParts {
  HermitianOperator tau;    // d_A x d_A factor
  HermitianOperator sigma;  // d_B x d_B factor
};

class BipartiteState {
 public:
  // General (possibly mixed) state; rho must be PSD with unit trace.
  BipartiteState(std::string label, int d_a, int d_b, HermitianOperator rho,
                 std::optional<ProductParts> product = std::nullopt);

  // Pure product state from kets; kets are normalized here.
  static BipartiteState pure_product(std::string label, int d_a, int d_b, const Vec& ket_a,
                                     const Vec& ket_b);

  const std::string& label() const { return label_; }
  int d_a() const { return d_a_; }
  int d_b() const { return d_b_; }
  int joint_dim() const { return d_a_ * d_b_; }
  const HermitianOperator& rho() const { return rho_; }
  bool is_product() const { return product_.has_value(); }
  const std::optional<ProductParts>& product_parts() const { return product_; }

 private:
  std::string label_;
  int d_a_ = 0;
  int d_b_ = 0;
  HermitianOperator rho_;
  std::optional<ProductParts> product_;
};

// Ordered collection of states on a common C^dA ⊗ C^dB.  Construction enforces
// matching dimensions and unique labels; orthogonality and full rank are
// checked separately by validate_full_orthogonal so that defective sets can be
// loaded, diagnosed and reported.
class StateSet {
 public:
  StateSet(int d_a, int d_b, std::vector<BipartiteState> states);

  int d_a() const { return d_a_; }
  int d_b() const { return d_b_; }
  int joint_dim() const { return d_a_ * d_b_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<BipartiteState>& states() const { return states_; }
  const BipartiteState& at(std::size_t i) const { return states_.at(i); }
  const BipartiteState& by_label(const std::string& label) const;

 private:
  int d_a_ = 0;
  int d_b_ = 0;
  std::vector<BipartiteState> states_;
};

struct OrthReport {
  bool orthogonal = false;
  bool full_rank = false;
  double max_overlap = 0.0;  // largest |tr(rho_i rho_j)| over distinct pairs
  int rank = 0;              // rank of sum_i rho_i
};

// orthogonal  iff all pairwise |tr(rho_i rho_j)| <= tol,
// full_rank   iff rank(sum_i rho_i) = dA*dB.
OrthReport validate_full_orthogonal(const StateSet& s, double tol = tol::kOrthogonal);

struct ProductKet {
  std::string label;
  Vec ket_a;
  Vec ket_b;
};

// The 9 domino states in display order: psi0, psi1+, psi1-, ..., psi4+, psi4-.
std::vector<ProductKet> domino_basis();

enum class Sign { plus, minus };

// Lemma-5 family: states {|psi_i^{s_i}>}_{i=1..4} as pure product states plus
// rho = (|psi_0><psi_0| + 1/4 sum_i |psi_i^{-s_i}><psi_i^{-s_i}|) normalized,
// a rank-5 mixed state carrying no product annotation.
StateSet lemma5_set(const std::array<Sign, 4>& signs);

struct SupportSpace {
  std::string state_label;
  Isometry iso;  // spans the support of rho
  std::optional<std::pair<Isometry, Isometry>> product_isos;
};

// Column space of the named state; per-factor isometries when the state
// carries a product annotation.
SupportSpace support(const StateSet& s, const std::string& label);

}  // namespace locc
