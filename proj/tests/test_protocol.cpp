#include <doctest.h>

#include <cmath>
#include <random>

#include "locc/protocol.hpp"
#include "support.hpp"

using namespace locc;
using namespace locc::testing;

namespace {

Vec basis_ket(int d, int i) {
  Vec v = Vec::Zero(d);
  v[i] = 1.0;
  return v;
}

StateSet standard_basis(int d_a, int d_b) {
  std::vector<BipartiteState> states;
  for (int a = 0; a < d_a; ++a)
    for (int b = 0; b < d_b; ++b)
      states.push_back(BipartiteState::pure_product(std::to_string(a) + std::to_string(b), d_a,
                                                    d_b, basis_ket(d_a, a), basis_ket(d_b, b)));
  return StateSet(d_a, d_b, std::move(states));
}

// Structural walk asserting strict local-dimension progress.
void check_progress(const ProtocolNode& node, int d_a, int d_b) {
  if (node.is_leaf()) return;
  const MeasureNode& m = node.measure();
  REQUIRE(m.projectors.size() >= 2);
  const int local = m.party == Side::A ? d_a : d_b;
  Mat sum = Mat::Zero(local, local);
  for (std::size_t k = 0; k < m.projectors.size(); ++k) {
    sum += m.projectors[k].matrix();
    const int rank = m.restrictions[k].sub_dim();
    CHECK(rank >= 1);
    CHECK(rank < local);  // strict shrink on the measured side
    const int child_da = m.party == Side::A ? rank : d_a;
    const int child_db = m.party == Side::B ? rank : d_b;
    check_progress(*m.children[k], child_da, child_db);
  }
  CHECK(max_abs(sum - Mat::Identity(local, local)) <= 1e-9);
}

int count_leaves(const ProtocolNode& node) {
  if (node.is_leaf()) return 1;
  int n = 0;
  for (const auto& c : node.measure().children) n += count_leaves(*c);
  return n;
}

}  // namespace

TEST_CASE("synthesize the C2 x C2 standard basis: depth 2, perfect execution") {
  const StateSet basis = standard_basis(2, 2);
  const auto [protocol, cert] = synthesize(basis);
  CHECK(cert.success);
  CHECK(cert.input_full_rank);
  CHECK(protocol.depth == 2);
  CHECK(count_leaves(*protocol.root) == 4);
  check_progress(*protocol.root, 2, 2);

  const ExecutionResult run = execute(protocol, basis.by_label("01"));
  CHECK(run.prob_of("01") == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(run.total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("single-state set: depth 0, certain verdict") {
  std::vector<BipartiteState> one;
  one.push_back(BipartiteState::pure_product("only", 2, 2, basis_ket(2, 0), basis_ket(2, 1)));
  const StateSet s(2, 2, one);
  const auto [protocol, cert] = synthesize(s);
  CHECK(cert.success);
  CHECK(protocol.depth == 0);
  const ExecutionResult run = execute(protocol, s.by_label("only"));
  CHECK(run.prob_of("only") == doctest::Approx(1.0));
}

TEST_CASE("lemma5 sets fail at the root with scalar spaces on both sides") {
  for (int i = 0; i < 16; ++i) {
    std::array<Sign, 4> signs;
    for (int b = 0; b < 4; ++b) signs[b] = (i >> b) & 1 ? Sign::minus : Sign::plus;
    const auto [protocol, cert] = synthesize(lemma5_set(signs));
    CHECK_FALSE(cert.success);
    CHECK(protocol.depth == 0);  // stuck before any measurement
    REQUIRE(protocol.root->is_leaf());
    REQUIRE(protocol.root->leaf().fail.has_value());
    CHECK(cert.space_dim_a == 1);
    CHECK(cert.space_dim_b == 1);
    CHECK(cert.failure_node_stateset->size() == 5);
  }
}

TEST_CASE("non-orthogonal input is rejected") {
  std::vector<BipartiteState> states;
  states.push_back(BipartiteState::pure_product("a", 2, 2, basis_ket(2, 0), basis_ket(2, 0)));
  states.push_back(BipartiteState::pure_product("b", 2, 2, basis_ket(2, 0), basis_ket(2, 0)));
  CHECK_THROWS_AS(synthesize(StateSet(2, 2, std::move(states))), ValidationError);
}

TEST_CASE("random refinement corpus: synthesis succeeds and discriminates") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> dim_dist(2, 3);
  for (int trial = 0; trial < 25; ++trial) {
    const StateSet s = random_refinement_set(dim_dist(rng), dim_dist(rng), rng);
    const auto [protocol, cert] = synthesize(s);
    REQUIRE(cert.success);
    check_progress(*protocol.root, s.d_a(), s.d_b());
    for (const auto& st : s.states()) {
      const ExecutionResult run = execute(protocol, st);
      CHECK(run.prob_of(st.label()) >= 1.0 - 1e-8);
      CHECK(std::abs(run.total - 1.0) <= 1e-9);
    }

    // Every Measure node's projectors leave the conditioned set undisturbed.
    for (const NodeAudit& audit : audit_nondisturbance(protocol, s, 1e-8))
      CHECK(audit.nondisturbing);
  }
}

TEST_CASE("execute checks dimensions") {
  const StateSet basis = standard_basis(2, 2);
  const auto [protocol, cert] = synthesize(basis);
  const StateSet other = standard_basis(3, 3);
  CHECK_THROWS_AS(execute(protocol, other.by_label("00")), DimensionError);
}

TEST_CASE("corollary5_complete") {
  // Lemma 5 set: the mixed state's support is exactly the complement.
  const StateSet lemma5 = lemma5_set({Sign::plus, Sign::plus, Sign::plus, Sign::plus});
  const Cor5Annotation ann = corollary5_complete(lemma5);
  CHECK(ann.applicable);
  CHECK(ann.completed_label == "rho");
  CHECK(ann.complement_residual <= 1e-8);

  // All-product set: nothing to complete.
  CHECK_FALSE(corollary5_complete(standard_basis(2, 2)).applicable);

  // Two non-product states: rejected.
  std::mt19937_64 rng(7);
  const Mat u = random_unitary(4, rng);
  std::vector<BipartiteState> two;
  {
    const Mat q1 = u.leftCols(2);
    const Mat q2 = u.rightCols(2);
    two.emplace_back("m1", 2, 2, HermitianOperator(q1 * q1.adjoint() / 2.0));
    two.emplace_back("m2", 2, 2, HermitianOperator(q2 * q2.adjoint() / 2.0));
  }
  CHECK_THROWS_AS(corollary5_complete(StateSet(2, 2, std::move(two))), ValidationError);
}
