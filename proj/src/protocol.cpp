#include "locc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace locc {

namespace {

// Restricted states below this trace are eliminated by the outcome.
constexpr double kEliminationTol = 1e-10;
constexpr double kSoundnessTol = 1e-8;

struct Conditioned {
  std::string label;
  Mat rho;  // normalized
};

StateSet to_state_set(int d_a, int d_b, const std::vector<Conditioned>& states) {
  std::vector<BipartiteState> out;
  out.reserve(states.size());
  for (const auto& c : states) out.emplace_back(c.label, d_a, d_b, HermitianOperator(c.rho));
  return StateSet(d_a, d_b, out);
}

// Restrict every state to the outcome subspace (Q on the measured side),
// dropping eliminated states and renormalizing the survivors.  Restriction
// preserves pairwise orthogonality because the measurement is non-disturbing.
std::vector<Conditioned> restrict_states(const std::vector<Conditioned>& states, Side party,
                                         const Isometry& q, int d_a, int d_b) {
  const Mat r = party == Side::A ? kron(q.matrix(), identity(d_b))
                                 : kron(identity(d_a), q.matrix());
  std::vector<Conditioned> out;
  for (const auto& c : states) {
    Mat restricted = r.adjoint() * c.rho * r;
    const double w = restricted.trace().real();
    if (w <= kEliminationTol) continue;
    out.push_back({c.label, restricted / w});
  }
  return out;
}

struct Synthesizer {
  SynthesisCertificate cert;

  std::unique_ptr<ProtocolNode> recurse(const std::vector<Conditioned>& states, int d_a, int d_b,
                                        int& depth) {
    depth = 0;
    if (states.size() == 1) {
      auto node = std::make_unique<ProtocolNode>();
      node->node = LeafNode{states.front().label, std::nullopt};
      return node;
    }

    const StateSet set = to_state_set(d_a, d_b, states);
    const NondisturbingSpace space_a = solve_local_space(set, Side::A);
    std::optional<HermitianOperator> op = pick_nontrivial(space_a);
    Side party = Side::A;
    int dim_b_space = 0;
    if (!op) {
      const NondisturbingSpace space_b = solve_local_space(set, Side::B);
      dim_b_space = space_b.dim;
      op = pick_nontrivial(space_b);
      party = Side::B;
    }

    if (!op) {
      // Both local spaces are scalars: no nontrivial non-disturbing local
      // measurement exists for this conditioned set.
      if (!cert.failure_node_stateset) {
        cert.failure_node_stateset = set;
        cert.space_dim_a = space_a.dim;
        cert.space_dim_b = dim_b_space;
      }
      auto node = std::make_unique<ProtocolNode>();
      FailCertificate fail;
      for (const auto& c : states) fail.labels.push_back(c.label);
      fail.space_dim_a = space_a.dim;
      fail.space_dim_b = dim_b_space;
      node->node = LeafNode{std::nullopt, std::move(fail)};
      return node;
    }

    // A trace-zero nonzero operator has >= 2 eigenvalue groups, each of rank
    // strictly below the measured local dimension.
    const Spectrum spec = eig_hermitian(*op);
    MeasureNode measure;
    measure.party = party;
    int max_child_depth = 0;
    for (const auto& g : spec.groups) {
      const Isometry q = column_space(g.projector);
      const std::vector<Conditioned> children =
          restrict_states(states, party, q, d_a, d_b);
      const int child_da = party == Side::A ? q.sub_dim() : d_a;
      const int child_db = party == Side::B ? q.sub_dim() : d_b;
      int child_depth = 0;
      measure.projectors.emplace_back(g.projector);
      measure.restrictions.push_back(q);
      measure.children.push_back(recurse(children, child_da, child_db, child_depth));
      max_child_depth = std::max(max_child_depth, child_depth);
    }
    depth = 1 + max_child_depth;
    auto node = std::make_unique<ProtocolNode>();
    node->node = std::move(measure);
    return node;
  }
};

bool tree_has_failure(const ProtocolNode& node) {
  if (node.is_leaf()) return node.leaf().fail.has_value();
  for (const auto& c : node.measure().children)
    if (tree_has_failure(*c)) return true;
  return false;
}

void execute_node(const ProtocolNode& node, const Mat& rho, int d_a, int d_b,
                  ExecutionResult& out) {
  if (node.is_leaf()) {
    const double w = rho.trace().real();
    if (node.leaf().verdict)
      out.label_prob[*node.leaf().verdict] += w;
    else
      out.fail_prob += w;
    out.total += w;
    return;
  }
  const MeasureNode& m = node.measure();
  for (std::size_t k = 0; k < m.children.size(); ++k) {
    const Isometry& q = m.restrictions[k];
    const Mat r = m.party == Side::A ? kron(q.matrix(), identity(d_b))
                                     : kron(identity(d_a), q.matrix());
    const Mat child = r.adjoint() * rho * r;
    const int child_da = m.party == Side::A ? q.sub_dim() : d_a;
    const int child_db = m.party == Side::B ? q.sub_dim() : d_b;
    execute_node(*m.children[k], child, child_da, child_db, out);
  }
}

void audit_node(const ProtocolNode& node, const std::vector<Conditioned>& states, int d_a, int d_b,
                int depth, double tol, std::vector<NodeAudit>& out) {
  if (node.is_leaf()) return;
  const MeasureNode& m = node.measure();

  NodeAudit audit;
  audit.party = m.party;
  audit.depth = depth;
  audit.n_states = states.size();
  audit.nondisturbing = true;
  const StateSet set = to_state_set(d_a, d_b, states);
  for (const auto& p : m.projectors) {
    const Mat padded = m.party == Side::A ? kron(p.matrix(), identity(d_b))
                                          : kron(identity(d_a), p.matrix());
    if (!is_nondisturbing_vec(HermitianOperator(padded), set, tol)) audit.nondisturbing = false;
  }
  out.push_back(audit);

  for (std::size_t k = 0; k < m.children.size(); ++k) {
    const Isometry& q = m.restrictions[k];
    const std::vector<Conditioned> children = restrict_states(states, m.party, q, d_a, d_b);
    const int child_da = m.party == Side::A ? q.sub_dim() : d_a;
    const int child_db = m.party == Side::B ? q.sub_dim() : d_b;
    audit_node(*m.children[k], children, child_da, child_db, depth + 1, tol, out);
  }
}

}  // namespace

std::pair<Protocol, SynthesisCertificate> synthesize(const StateSet& s) {
  if (s.size() == 0) throw ValidationError("synthesize: empty state set");
  const OrthReport report = validate_full_orthogonal(s);
  if (!report.orthogonal)
    throw ValidationError("synthesize: states are not mutually orthogonal (max overlap " +
                          std::to_string(report.max_overlap) + ")");

  std::vector<Conditioned> states;
  states.reserve(s.size());
  for (const auto& st : s.states()) states.push_back({st.label(), st.rho().matrix()});

  Synthesizer synth;
  synth.cert.input_full_rank = report.full_rank;
  Protocol protocol;
  protocol.d_a = s.d_a();
  protocol.d_b = s.d_b();
  protocol.root = synth.recurse(states, s.d_a(), s.d_b(), protocol.depth);

  synth.cert.success = !tree_has_failure(*protocol.root);
  if (synth.cert.success) {
    synth.cert.space_dim_a = 0;
    synth.cert.space_dim_b = 0;
    for (const auto& st : s.states()) {
      const ExecutionResult run = execute(protocol, st);
      if (run.prob_of(st.label()) < 1.0 - kSoundnessTol)
        throw std::logic_error("synthesize: protocol fails to discriminate '" + st.label() +
                               "' (p = " + std::to_string(run.prob_of(st.label())) + ")");
    }
  }
  return {std::move(protocol), std::move(synth.cert)};
}

ExecutionResult execute(const Protocol& p, const BipartiteState& rho) {
  if (rho.d_a() != p.d_a || rho.d_b() != p.d_b)
    throw DimensionError("execute: state dims do not match protocol dims");
  ExecutionResult out;
  execute_node(*p.root, rho.rho().matrix(), p.d_a, p.d_b, out);
  return out;
}

std::vector<NodeAudit> audit_nondisturbance(const Protocol& p, const StateSet& s, double tol) {
  if (s.d_a() != p.d_a || s.d_b() != p.d_b)
    throw DimensionError("audit_nondisturbance: dims");
  std::vector<Conditioned> states;
  for (const auto& st : s.states()) states.push_back({st.label(), st.rho().matrix()});
  std::vector<NodeAudit> out;
  audit_node(*p.root, states, s.d_a(), s.d_b(), 0, tol, out);
  return out;
}

Cor5Annotation corollary5_complete(const StateSet& s, double tol) {
  std::vector<std::string> non_product;
  for (const auto& st : s.states())
    if (!st.is_product()) non_product.push_back(st.label());

  if (non_product.empty()) return {false, "", 0.0};
  if (non_product.size() > 1)
    throw ValidationError("corollary5_complete: " + std::to_string(non_product.size()) +
                          " states lack product structure, expected at most one");

  // The odd state's support must be the orthogonal complement of the direct
  // sum of the product supports.
  Mat product_sum = Mat::Zero(s.joint_dim(), s.joint_dim());
  for (const auto& st : s.states())
    if (st.is_product()) product_sum += column_space(st.rho().matrix()).projector();
  const Mat odd = column_space(s.by_label(non_product.front()).rho().matrix()).projector();
  const double residual =
      max_abs(odd - (Mat::Identity(s.joint_dim(), s.joint_dim()) - product_sum));
  if (residual > tol)
    throw ValidationError("corollary5_complete: support of '" + non_product.front() +
                          "' is not the complement of the product supports (residual " +
                          std::to_string(residual) + ")");
  return {true, non_product.front(), residual};
}

}  // namespace locc
