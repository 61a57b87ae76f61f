#include <doctest.h>

#include <cmath>

#include "locc/states.hpp"
#include "support.hpp"

using namespace locc;

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

const std::array<std::array<Sign, 4>, 16>& all_sign_choices() {
  static const std::array<std::array<Sign, 4>, 16> t = [] {
    std::array<std::array<Sign, 4>, 16> out{};
    for (int i = 0; i < 16; ++i)
      for (int b = 0; b < 4; ++b) out[i][b] = (i >> b) & 1 ? Sign::minus : Sign::plus;
    return out;
  }();
  return t;
}

}  // namespace

TEST_CASE("standard product basis is full orthogonal") {
  const OrthReport rep = validate_full_orthogonal(standard_basis(2, 2));
  CHECK(rep.orthogonal);
  CHECK(rep.full_rank);
}

TEST_CASE("duplicated state fails both checks") {
  std::vector<BipartiteState> states;
  states.push_back(BipartiteState::pure_product("a", 2, 2, basis_ket(2, 0), basis_ket(2, 0)));
  states.push_back(BipartiteState::pure_product("b", 2, 2, basis_ket(2, 0), basis_ket(2, 0)));
  const OrthReport rep = validate_full_orthogonal(StateSet(2, 2, std::move(states)));
  CHECK_FALSE(rep.orthogonal);
  CHECK_FALSE(rep.full_rank);
}

TEST_CASE("duplicate labels are rejected at construction") {
  std::vector<BipartiteState> states;
  states.push_back(BipartiteState::pure_product("x", 2, 2, basis_ket(2, 0), basis_ket(2, 0)));
  states.push_back(BipartiteState::pure_product("x", 2, 2, basis_ket(2, 1), basis_ket(2, 1)));
  CHECK_THROWS_AS(StateSet(2, 2, std::move(states)), ValidationError);
}

TEST_CASE("domino basis: 9 states, Gram = I9, psi2+ = |0+1>|2>") {
  const auto d = domino_basis();
  REQUIRE(d.size() == 9);

  std::vector<Vec> joint;
  for (const auto& k : d) joint.push_back(kron(k.ket_a, k.ket_b));
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      CHECK(std::abs(std::abs((joint[i].adjoint() * joint[j])(0, 0)) - expected) < 1e-12);
    }

  const auto& psi2p = d[3];
  REQUIRE(psi2p.label == "psi2+");
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(psi2p.ket_a[0] - Cplx(s, 0)) < 1e-15);
  CHECK(std::abs(psi2p.ket_a[1] - Cplx(s, 0)) < 1e-15);
  CHECK(std::abs(psi2p.ket_a[2]) < 1e-15);
  CHECK(std::abs(psi2p.ket_b[2] - Cplx(1, 0)) < 1e-15);
}

TEST_CASE("lemma5_set: all 16 sign choices are full orthogonal") {
  for (const auto& signs : all_sign_choices()) {
    const StateSet s = lemma5_set(signs);
    REQUIRE(s.size() == 5);
    const OrthReport rep = validate_full_orthogonal(s);
    CHECK(rep.orthogonal);
    CHECK(rep.full_rank);
    CHECK_FALSE(s.by_label("rho").is_product());
    CHECK(column_space(s.by_label("rho").rho().matrix()).sub_dim() == 5);
  }
}

TEST_CASE("lemma5_set mixed state matches the displayed construction") {
  // signs (+,+,+,+): rho = (|psi0><psi0| + 1/4 sum |psi_i^-><psi_i^-|)/2
  const StateSet s = lemma5_set({Sign::plus, Sign::plus, Sign::plus, Sign::plus});
  const auto d = domino_basis();
  auto joint = [&](const char* label) {
    for (const auto& k : d)
      if (k.label == label) return Vec(kron(k.ket_a, k.ket_b));
    FAIL("label");
    return Vec();
  };
  Mat expected = Mat::Zero(9, 9);
  {
    const Vec v0 = joint("psi0");
    expected += v0 * v0.adjoint();
    for (const char* l : {"psi1-", "psi2-", "psi3-", "psi4-"}) {
      const Vec v = joint(l);
      expected += 0.25 * (v * v.adjoint());
    }
    expected /= 2.0;
  }
  CHECK(max_abs(s.by_label("rho").rho().matrix() - expected) < 1e-12);

  // signs (-,-,-,-): complement choice mixes the + states instead.
  const StateSet sm = lemma5_set({Sign::minus, Sign::minus, Sign::minus, Sign::minus});
  Mat expected_m = Mat::Zero(9, 9);
  {
    const Vec v0 = joint("psi0");
    expected_m += v0 * v0.adjoint();
    for (const char* l : {"psi1+", "psi2+", "psi3+", "psi4+"}) {
      const Vec v = joint(l);
      expected_m += 0.25 * (v * v.adjoint());
    }
    expected_m /= 2.0;
  }
  CHECK(max_abs(sm.by_label("rho").rho().matrix() - expected_m) < 1e-12);
}

TEST_CASE("support spaces") {
  const StateSet basis = standard_basis(2, 2);
  const SupportSpace s00 = support(basis, "00");
  CHECK(s00.iso.sub_dim() == 1);
  REQUIRE(s00.product_isos.has_value());
  CHECK(s00.product_isos->first.sub_dim() == 1);

  const StateSet lemma5 = lemma5_set({Sign::plus, Sign::plus, Sign::plus, Sign::plus});
  CHECK(support(lemma5, "rho").iso.sub_dim() == 5);
  CHECK_THROWS_AS(support(lemma5, "nonexistent"), ValidationError);

  // QQ' rho = rho for the named state.
  for (const auto& st : lemma5.states()) {
    const SupportSpace sp = support(lemma5, st.label());
    CHECK(max_abs(sp.iso.projector() * st.rho().matrix() - st.rho().matrix()) <= 1e-9);
  }
}

TEST_CASE("product factors of given ranks multiply") {
  std::mt19937_64 rng(17);
  // tau rank 2 on C^3, sigma rank 3 on C^4
  const Mat qa = locc::testing::random_subspace(3, 2, rng).matrix();
  const Mat qb = locc::testing::random_subspace(4, 3, rng).matrix();
  Mat wa = Mat::Identity(2, 2) / 2.0;
  Mat wb = Mat::Identity(3, 3) / 3.0;
  const HermitianOperator tau(qa * wa * qa.adjoint());
  const HermitianOperator sigma(qb * wb * qb.adjoint());
  std::vector<BipartiteState> states;
  states.emplace_back("ts", 3, 4, HermitianOperator(kron(tau.matrix(), sigma.matrix())),
                      ProductParts{tau, sigma});
  const StateSet s(3, 4, std::move(states));
  const SupportSpace sp = support(s, "ts");
  REQUIRE(sp.product_isos.has_value());
  CHECK(sp.product_isos->first.sub_dim() == 2);
  CHECK(sp.product_isos->second.sub_dim() == 3);
  CHECK(sp.iso.sub_dim() == 6);
}

TEST_CASE("state validation: trace, PSD, product consistency") {
  CHECK_THROWS_AS(BipartiteState("t", 2, 2, HermitianOperator(Mat::Identity(4, 4))),
                  ValidationError);  // trace 4
  Mat indef = Mat::Identity(4, 4) / 2.0;
  indef(3, 3) = -0.5;
  CHECK_THROWS_AS(BipartiteState("p", 2, 2, HermitianOperator(indef)), ValidationError);

  // rho != tau ⊗ sigma is rejected.
  const HermitianOperator tau(Mat::Identity(2, 2) / 2.0);
  const HermitianOperator sigma(Mat::Identity(2, 2) / 2.0);
  Mat rho = Mat::Identity(4, 4) / 4.0;
  rho(0, 0) = 0.5;
  rho(3, 3) = 0.0;
  CHECK_THROWS_AS(BipartiteState("q", 2, 2, HermitianOperator(rho), ProductParts{tau, sigma}),
                  ValidationError);
}
