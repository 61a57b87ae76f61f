#include "locc/states.hpp"

#include <cmath>
#include <set>
#include <utility>

namespace locc {

namespace {

constexpr double kStateTol = 1e-9;

Vec basis_ket(int d, int i) {
  Vec v = Vec::Zero(d);
  v[i] = 1.0;
  return v;
}

// (|i> ± |j>)/sqrt(2) in C^3
Vec pm_ket(int i, int j, Sign sign) {
  Vec v = Vec::Zero(3);
  v[i] = 1.0 / std::sqrt(2.0);
  v[j] = (sign == Sign::plus ? 1.0 : -1.0) / std::sqrt(2.0);
  return v;
}

Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

}  // namespace

std::string side_name(Side s) {
  switch (s) {
    case Side::A: return "A";
    case Side::B: return "B";
    case Side::joint: return "joint";
  }
  return "?";
}

BipartiteState::BipartiteState(std::string label, int d_a, int d_b, HermitianOperator rho,
                               std::optional<ProductParts> product)
    : label_(std::move(label)), d_a_(d_a), d_b_(d_b), rho_(std::move(rho)), product_(std::move(product)) {
  if (d_a_ < 1 || d_b_ < 1 || d_a_ * d_b_ > kMaxDim)
    throw DimensionError("BipartiteState '" + label_ + "': bad local dims");
  if (rho_.dim() != d_a_ * d_b_)
    throw DimensionError("BipartiteState '" + label_ + "': rho dim " + std::to_string(rho_.dim()) +
                         " != dA*dB");
  if (std::abs(rho_.trace() - 1.0) > kStateTol)
    throw ValidationError("BipartiteState '" + label_ + "': trace " + std::to_string(rho_.trace()) +
                          " != 1");
  if (!is_psd(rho_, kStateTol))
    throw ValidationError("BipartiteState '" + label_ + "': rho is not PSD");
  if (product_) {
    if (product_->tau.dim() != d_a_ || product_->sigma.dim() != d_b_)
      throw DimensionError("BipartiteState '" + label_ + "': product factor dims");
    const double defect = max_abs(rho_.matrix() - kron(product_->tau.matrix(), product_->sigma.matrix()));
    if (defect > kStateTol)
      throw ValidationError("BipartiteState '" + label_ + "': rho != tau ⊗ sigma, defect " +
                            std::to_string(defect));
  }
}

BipartiteState BipartiteState::pure_product(std::string label, int d_a, int d_b, const Vec& ket_a,
                                            const Vec& ket_b) {
  if (ket_a.size() != d_a || ket_b.size() != d_b)
    throw DimensionError("pure_product '" + label + "': ket dims");
  const double na = ket_a.norm();
  const double nb = ket_b.norm();
  if (na < kStateTol || nb < kStateTol)
    throw ValidationError("pure_product '" + label + "': zero ket");
  const Vec a = ket_a / na;
  const Vec b = ket_b / nb;
  HermitianOperator tau(a * a.adjoint());
  HermitianOperator sigma(b * b.adjoint());
  HermitianOperator rho(kron(tau.matrix(), sigma.matrix()));
  return BipartiteState(std::move(label), d_a, d_b, std::move(rho),
                        ProductParts{std::move(tau), std::move(sigma)});
}

StateSet::StateSet(int d_a, int d_b, std::vector<BipartiteState> states)
    : d_a_(d_a), d_b_(d_b), states_(std::move(states)) {
  if (d_a_ < 1 || d_b_ < 1 || d_a_ * d_b_ > kMaxDim) throw DimensionError("StateSet: bad dims");
  std::set<std::string> seen;
  for (const auto& st : states_) {
    if (st.d_a() != d_a_ || st.d_b() != d_b_)
      throw DimensionError("StateSet: state '" + st.label() + "' dims mismatch");
    if (!seen.insert(st.label()).second)
      throw ValidationError("StateSet: duplicate label '" + st.label() + "'");
  }
}

const BipartiteState& StateSet::by_label(const std::string& label) const {
  for (const auto& st : states_)
    if (st.label() == label) return st;
  throw ValidationError("StateSet: unknown label '" + label + "'");
}

OrthReport validate_full_orthogonal(const StateSet& s, double tol) {
  OrthReport report;
  report.max_overlap = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const double overlap =
          std::abs((s.at(i).rho().matrix() * s.at(j).rho().matrix()).trace().real());
      report.max_overlap = std::max(report.max_overlap, overlap);
    }
  report.orthogonal = report.max_overlap <= tol;

  Mat sum = Mat::Zero(s.joint_dim(), s.joint_dim());
  for (const auto& st : s.states()) sum += st.rho().matrix();
  report.rank = column_space(sum).sub_dim();
  report.full_rank = report.rank == s.joint_dim();
  return report;
}

std::vector<ProductKet> domino_basis() {
  std::vector<ProductKet> out;
  out.push_back({"psi0", basis_ket(3, 1), basis_ket(3, 1)});
  out.push_back({"psi1+", basis_ket(3, 0), pm_ket(0, 1, Sign::plus)});
  out.push_back({"psi1-", basis_ket(3, 0), pm_ket(0, 1, Sign::minus)});
  out.push_back({"psi2+", pm_ket(0, 1, Sign::plus), basis_ket(3, 2)});
  out.push_back({"psi2-", pm_ket(0, 1, Sign::minus), basis_ket(3, 2)});
  out.push_back({"psi3+", basis_ket(3, 2), pm_ket(1, 2, Sign::plus)});
  out.push_back({"psi3-", basis_ket(3, 2), pm_ket(1, 2, Sign::minus)});
  out.push_back({"psi4+", pm_ket(1, 2, Sign::plus), basis_ket(3, 0)});
  out.push_back({"psi4-", pm_ket(1, 2, Sign::minus), basis_ket(3, 0)});
  return out;
}

StateSet lemma5_set(const std::array<Sign, 4>& signs) {
  const auto dominoes = domino_basis();
  auto find = [&](const std::string& label) -> const ProductKet& {
    for (const auto& k : dominoes)
      if (k.label == label) return k;
    throw ValidationError("domino label " + label);
  };

  std::vector<BipartiteState> states;
  // Chosen pure states |psi_i^{s_i}>, i = 1..4.
  for (int i = 1; i <= 4; ++i) {
    const std::string label =
        "psi" + std::to_string(i) + (signs[i - 1] == Sign::plus ? "+" : "-");
    const auto& ket = find(label);
    states.push_back(BipartiteState::pure_product(label, 3, 3, ket.ket_a, ket.ket_b));
  }

  // rho = (|psi0><psi0| + 1/4 sum_i |psi_i^{-s_i}><psi_i^{-s_i}|) / 2, rank 5.
  Mat mix = Mat::Zero(9, 9);
  {
    const auto& k0 = find("psi0");
    const Vec v0 = kron(k0.ket_a, k0.ket_b);
    mix += v0 * v0.adjoint();
    for (int i = 1; i <= 4; ++i) {
      const std::string label =
          "psi" + std::to_string(i) + (flip(signs[i - 1]) == Sign::plus ? "+" : "-");
      const auto& k = find(label);
      const Vec v = kron(k.ket_a, k.ket_b);
      mix += 0.25 * (v * v.adjoint());
    }
    mix /= mix.trace().real();
  }
  states.push_back(BipartiteState("rho", 3, 3, HermitianOperator(mix)));

  return StateSet(3, 3, std::move(states));
}

SupportSpace support(const StateSet& s, const std::string& label) {
  const BipartiteState& st = s.by_label(label);
  SupportSpace out{label, column_space(st.rho().matrix()), std::nullopt};
  if (st.is_product()) {
    const auto& p = *st.product_parts();
    out.product_isos = std::make_pair(column_space(p.tau.matrix()), column_space(p.sigma.matrix()));
  }
  return out;
}

}  // namespace locc
