// Finite-LOCC discrimination protocol synthesis and execution.
//
// Synthesis is a recursion on the conditioned state set: solve the local
// non-disturbing space on Alice's side, else Bob's; measure the spectral
// projectors of a nontrivial solution; restrict every state to each outcome's
// eigenspace and recurse.  The measured local dimension shrinks strictly at
// every node, so the tree is finite.  When both local spaces are scalar the
// node becomes a failure leaf carrying the stuck conditioned set — the
// witness that no finite-LOCC protocol can open here.
//
// Execution evaluates the Born-rule outcome distribution of a protocol tree
// on a state, keeping conditioned operators unnormalized until the leaves.

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "locc/nondisturb.hpp"
#include "locc/states.hpp"

namespace locc {

struct FailCertificate {
  std::vector<std::string> labels;  // states alive at the stuck node
  int space_dim_a = 0;
  int space_dim_b = 0;
};

struct ProtocolNode;

struct LeafNode {
  std::optional<std::string> verdict;       // discriminated state label
  std::optional<FailCertificate> fail;      // or the stuck-node certificate
};

struct MeasureNode {
  Side party = Side::A;
  std::vector<HermitianOperator> projectors;  // complete projective measurement, >= 2 outcomes
  std::vector<Isometry> restrictions;         // column space of each projector
  std::vector<std::unique_ptr<ProtocolNode>> children;
};

struct ProtocolNode {
  std::variant<LeafNode, MeasureNode> node;

  bool is_leaf() const { return std::holds_alternative<LeafNode>(node); }
  const LeafNode& leaf() const { return std::get<LeafNode>(node); }
  const MeasureNode& measure() const { return std::get<MeasureNode>(node); }
};

struct Protocol {
  int d_a = 0;
  int d_b = 0;
  int depth = 0;  // max number of Measure nodes on a root-leaf path
  std::unique_ptr<ProtocolNode> root;
};

struct SynthesisCertificate {
  bool success = false;
  bool input_full_rank = false;  // Theorem-3 hypothesis; synthesis runs without it
  std::optional<StateSet> failure_node_stateset;
  int space_dim_a = 0;  // local space dims at the first stuck node (1,1 on failure)
  int space_dim_b = 0;
};

// Synthesize a discrimination protocol for a mutually orthogonal set.
// Orthogonality is mandatory (ValidationError otherwise); full rank is
// recorded in the certificate.  On success the protocol has been verified by
// executing it on every member (error <= 1e-8).
std::pair<Protocol, SynthesisCertificate> synthesize(const StateSet& s);

struct ExecutionResult {
  std::map<std::string, double> label_prob;
  double fail_prob = 0.0;
  double total = 0.0;  // sum of leaf weights, 1 within 1e-9 for valid protocols

  double prob_of(const std::string& label) const {
    auto it = label_prob.find(label);
    return it == label_prob.end() ? 0.0 : it->second;
  }
};

// Exact Born-rule outcome distribution of the protocol on one state.
ExecutionResult execute(const Protocol& p, const BipartiteState& rho);

struct NodeAudit {
  Side party = Side::A;
  int depth = 0;
  std::size_t n_states = 0;
  bool nondisturbing = false;  // every projector ⊗ I passes the vec check
};

// Walk the tree re-deriving the conditioned set at every Measure node and
// check each projector (padded with identity on the idle side) against it.
std::vector<NodeAudit> audit_nondisturbance(const Protocol& p, const StateSet& s,
                                            double tol = tol::kCheck);

struct Cor5Annotation {
  bool applicable = false;       // false: all states were product, nothing to complete
  std::string completed_label;   // the single non-product state
  double complement_residual = 0.0;
};

// Validate the one-non-product-state hypothesis: the odd state's support must
// be the orthogonal complement of the product states' supports.  More than
// one non-product state or a failed complement check throws.
Cor5Annotation corollary5_complete(const StateSet& s, double tol = tol::kCheck);

}  // namespace locc
