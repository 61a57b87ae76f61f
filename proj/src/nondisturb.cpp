#include "locc/nondisturb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace locc {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Column k of a joint-space isometry reshaped as a dA x dB matrix:
// v[a*dB + b] = V(a, b).
Mat reshape_column(const Mat& q, int col, int d_a, int d_b) {
  Mat v(d_a, d_b);
  for (int a = 0; a < d_a; ++a)
    for (int b = 0; b < d_b; ++b) v(a, b) = q(a * d_b + b, col);
  return v;
}

// Stacked real constraint matrix for the chosen side: each distinct ordered
// pair (i < j) of supports contributes 2 * r_i * r_j rows over d^2 unknowns.
Eigen::MatrixXd build_constraints(const StateSet& s, Side side,
                                  const std::vector<Isometry>& supports) {
  const int d_a = s.d_a();
  const int d_b = s.d_b();
  const int local_dim = side == Side::A ? d_a : (side == Side::B ? d_b : d_a * d_b);
  const int n_params = local_dim * local_dim;

  long rows = 0;
  for (std::size_t i = 0; i < supports.size(); ++i)
    for (std::size_t j = i + 1; j < supports.size(); ++j)
      rows += 2L * supports[i].sub_dim() * supports[j].sub_dim();

  Eigen::MatrixXd c(rows, n_params);
  long r = 0;
  for (std::size_t i = 0; i < supports.size(); ++i) {
    for (std::size_t j = i + 1; j < supports.size(); ++j) {
      const Mat& qi = supports[i].matrix();
      const Mat& qj = supports[j].matrix();
      for (int k = 0; k < qi.cols(); ++k) {
        for (int l = 0; l < qj.cols(); ++l) {
          Mat w;
          if (side == Side::A) {
            const Mat vi = reshape_column(qi, k, d_a, d_b);
            const Mat vj = reshape_column(qj, l, d_a, d_b);
            w = vj * vi.adjoint();  // <q_i^k|(a⊗I)|q_j^l> = tr(a W)
          } else if (side == Side::B) {
            const Mat vi = reshape_column(qi, k, d_a, d_b);
            const Mat vj = reshape_column(qj, l, d_a, d_b);
            w = (vi.adjoint() * vj).transpose();  // <q_i^k|(I⊗b)|q_j^l> = tr(b W)
          } else {
            w = qj.col(l) * qi.col(k).adjoint();  // <q_i^k|E|q_j^l> = tr(E W)
          }
          const Eigen::VectorXcd t = herm_trace_coords(w);
          c.row(r++) = t.real().transpose();
          c.row(r++) = t.imag().transpose();
        }
      }
    }
  }
  return c;
}

}  // namespace

HermParam herm_to_param(const HermitianOperator& h) {
  const int d = h.dim();
  const Mat& a = h.matrix();
  HermParam p;
  p.dim = d;
  p.coords.reserve(d * d);
  for (int i = 0; i < d; ++i) p.coords.push_back(a(i, i).real());
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      p.coords.push_back(a(i, j).real());
      p.coords.push_back(a(i, j).imag());
    }
  return p;
}

HermitianOperator param_to_herm(const HermParam& p) {
  const int d = p.dim;
  if (static_cast<int>(p.coords.size()) != d * d)
    throw DimensionError("HermParam: expected " + std::to_string(d * d) + " coordinates");
  Mat a = Mat::Zero(d, d);
  std::size_t m = 0;
  for (int i = 0; i < d; ++i) a(i, i) = p.coords[m++];
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double re = p.coords[m++];
      const double im = p.coords[m++];
      a(i, j) = Cplx(re, im);
      a(j, i) = Cplx(re, -im);
    }
  return HermitianOperator(a);
}

Mat herm_basis_element(int d, int m) {
  if (m < 0 || m >= d * d) throw DimensionError("herm_basis_element: index out of range");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(d * d);
  x[m] = 1.0;
  return herm_from_ortho_coords(d, x).matrix();
}

Eigen::VectorXd herm_ortho_coords(const HermitianOperator& h) {
  const int d = h.dim();
  const Mat& a = h.matrix();
  Eigen::VectorXd x(d * d);
  int m = 0;
  for (int p = 0; p < d; ++p) x[m++] = a(p, p).real();
  for (int p = 0; p < d; ++p)
    for (int q = p + 1; q < d; ++q) {
      x[m++] = kSqrt2 * a(p, q).real();
      x[m++] = kSqrt2 * a(p, q).imag();
    }
  return x;
}

HermitianOperator herm_from_ortho_coords(int d, const Eigen::VectorXd& x) {
  Mat a = Mat::Zero(d, d);
  int m = 0;
  for (int p = 0; p < d; ++p) a(p, p) = x[m++];
  for (int p = 0; p < d; ++p)
    for (int q = p + 1; q < d; ++q) {
      const double re = x[m++] / kSqrt2;
      const double im = x[m++] / kSqrt2;
      a(p, q) = Cplx(re, im);
      a(q, p) = Cplx(re, -im);
    }
  return HermitianOperator(a);
}

Eigen::VectorXcd herm_trace_coords(const Mat& w) {
  const int d = static_cast<int>(w.rows());
  Eigen::VectorXcd t(d * d);
  int m = 0;
  for (int p = 0; p < d; ++p) t[m++] = w(p, p);
  for (int p = 0; p < d; ++p)
    for (int q = p + 1; q < d; ++q) {
      t[m++] = (w(q, p) + w(p, q)) / kSqrt2;
      t[m++] = Cplx(0, 1) * (w(q, p) - w(p, q)) / kSqrt2;
    }
  return t;
}

bool is_nondisturbing(const HermitianOperator& e, const StateSet& s, double tol) {
  if (e.dim() != s.joint_dim())
    throw DimensionError("is_nondisturbing: E dim " + std::to_string(e.dim()) + " != " +
                         std::to_string(s.joint_dim()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i == j) continue;
      const double v = std::abs((e.matrix() * s.at(i).rho().matrix() * e.matrix() *
                                 s.at(j).rho().matrix())
                                    .trace()
                                    .real());
      if (v > tol) return false;
    }
  return true;
}

bool is_nondisturbing_vec(const HermitianOperator& e, const StateSet& s, double tol) {
  if (e.dim() != s.joint_dim()) throw DimensionError("is_nondisturbing_vec: E dim mismatch");
  if (!is_psd(e, tol))
    throw ValidationError("is_nondisturbing_vec: E is not PSD (precondition)");
  std::vector<Isometry> supports;
  supports.reserve(s.size());
  for (const auto& st : s.states()) supports.push_back(column_space(st.rho().matrix()));
  for (std::size_t i = 0; i < supports.size(); ++i)
    for (std::size_t j = i + 1; j < supports.size(); ++j) {
      const Mat block = supports[i].matrix().adjoint() * e.matrix() * supports[j].matrix();
      if (max_abs(block) > tol) return false;
    }
  return true;
}

InvarianceReport invariance_equivalent(const HermitianOperator& m, const Isometry& h, double tol) {
  if (m.dim() != h.ambient_dim())
    throw DimensionError("invariance_equivalent: M dim != ambient dim");
  const Mat& q = h.matrix();
  const Mat p = h.projector();
  const int d = m.dim();

  InvarianceReport rep;
  rep.res_def = max_abs((Mat::Identity(d, d) - p) * (m.matrix() * q));
  const Mat x = q.adjoint() * m.matrix() * q;
  rep.res_factor = max_abs(m.matrix() * q - q * x);
  rep.res_eigbasis = 0.0;
  for (const auto& g : eig_hermitian(m).groups)
    rep.res_eigbasis = std::max(rep.res_eigbasis, max_abs(p * g.projector - g.projector * p));

  rep.inv_def = rep.res_def <= tol;
  rep.inv_factor = rep.res_factor <= tol;
  rep.inv_eigbasis = rep.res_eigbasis <= tol;
  if (rep.inv_def != rep.inv_factor || rep.inv_def != rep.inv_eigbasis)
    throw std::logic_error("invariance_equivalent: characterizations disagree (residuals " +
                           std::to_string(rep.res_def) + ", " + std::to_string(rep.res_factor) +
                           ", " + std::to_string(rep.res_eigbasis) + " at tol " +
                           std::to_string(tol) + ")");
  return rep;
}

DecoupleReport lemma2_decouple(const HermitianOperator& a, const HermitianOperator& b,
                               const Isometry& h_a, const Isometry& h_b, double tol) {
  if (a.dim() != h_a.ambient_dim() || b.dim() != h_b.ambient_dim())
    throw DimensionError("lemma2_decouple: dims");
  const HermitianOperator joint(kron(a.matrix(), b.matrix()));
  const Isometry q_joint(kron(h_a.matrix(), h_b.matrix()));

  DecoupleReport rep;
  rep.joint_inv = invariance_equivalent(joint, q_joint, tol).invariant();
  rep.a_inv = invariance_equivalent(a, h_a, tol).invariant();
  rep.b_inv = invariance_equivalent(b, h_b, tol).invariant();
  rep.nonzero = max_abs(joint.matrix() * q_joint.projector()) > tol;
  if (rep.joint_inv && rep.nonzero && !(rep.a_inv && rep.b_inv))
    throw std::logic_error("lemma2_decouple: product-subspace decoupling violated");
  return rep;
}

NondisturbingSpace solve_local_space(const StateSet& s, Side side, double rank_tol) {
  const int local_dim = side == Side::A ? s.d_a() : (side == Side::B ? s.d_b() : s.joint_dim());
  const int n_params = local_dim * local_dim;

  std::vector<Isometry> supports;
  supports.reserve(s.size());
  for (const auto& st : s.states()) supports.push_back(column_space(st.rho().matrix()));

  NondisturbingSpace space;
  space.side = side;

  const Eigen::MatrixXd c = build_constraints(s, side, supports);
  Eigen::MatrixXd null_basis;  // columns = nullspace coordinates
  if (c.rows() == 0) {
    null_basis = Eigen::MatrixXd::Identity(n_params, n_params);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    // Relative threshold, floored absolutely: a constraint system that is
    // identically satisfied (e.g. states fully distinguished on the other
    // side) leaves only ~1e-15 noise, which must count as rank 0.
    const double cutoff = std::max(rank_tol * (sv.size() > 0 ? sv[0] : 0.0), 1e-12);
    int rank = 0;
    while (rank < sv.size() && sv[rank] > cutoff) ++rank;
    null_basis = svd.matrixV().rightCols(n_params - rank);
  }

  space.dim = static_cast<int>(null_basis.cols());
  space.basis.reserve(space.dim);
  for (int k = 0; k < space.dim; ++k)
    space.basis.push_back(herm_from_ortho_coords(local_dim, null_basis.col(k)));

  // The identity always satisfies the constraints for an orthogonal set; a
  // large projection residual means the input set was not orthogonal.
  Eigen::VectorXd id_coords = herm_ortho_coords(HermitianOperator(Mat::Identity(local_dim, local_dim)));
  const Eigen::VectorXd residual = id_coords - null_basis * (null_basis.transpose() * id_coords);
  if (residual.norm() > 1e-8 * id_coords.norm())
    throw ValidationError("solve_local_space: identity not in solution space (set not orthogonal?)");
  return space;
}

std::optional<HermitianOperator> pick_nontrivial(const NondisturbingSpace& space) {
  if (space.dim <= 1) return std::nullopt;
  const int d = space.basis.front().dim();
  const Eigen::VectorXd id_unit =
      herm_ortho_coords(HermitianOperator(Mat::Identity(d, d))) / std::sqrt(static_cast<double>(d));
  for (const auto& b : space.basis) {
    Eigen::VectorXd x = herm_ortho_coords(b);
    x -= id_unit * id_unit.dot(x);
    if (x.norm() > 1e-9) return herm_from_ortho_coords(d, x / x.norm());
  }
  return std::nullopt;  // dim > 1 with only scalar directions cannot happen
}

Thm1Report check_thm1_conditions(const ProductCandidate& cand, const StateSet& s, double tol) {
  const HermitianOperator e(kron(cand.a.matrix(), cand.b.matrix()));
  if (e.dim() != s.joint_dim()) throw DimensionError("check_thm1_conditions: dims");
  const int n = static_cast<int>(s.size());

  Thm1Report rep;
  rep.chi = cand.chi;
  rep.kernel_condition = "not checked";
  rep.min_tr = 1e300;
  rep.max_tr = -1e300;
  for (const auto& st : s.states()) {
    const double t = (e.matrix() * st.rho().matrix()).trace().real();
    rep.sum_tr += t;
    rep.min_tr = std::min(rep.min_tr, t);
    rep.max_tr = std::max(rep.max_tr, t);
  }
  rep.min_bound = 1.0 - (n - 1) * cand.chi;
  rep.cond_sum = std::abs(rep.sum_tr - 1.0) <= tol;
  rep.cond_max = std::abs(rep.max_tr - cand.chi) <= tol;

  rep.nondist_residual = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i == j) continue;
      rep.nondist_residual = std::max(
          rep.nondist_residual, std::abs((e.matrix() * s.at(i).rho().matrix() * e.matrix() *
                                          s.at(j).rho().matrix())
                                             .trace()
                                             .real()));
    }
  rep.cond_nondisturbing = rep.nondist_residual <= tol;
  rep.chi_allows_identity = std::abs(cand.chi - 1.0 / n) <= tol;

  // (1) and (2) pin the other n-1 traces, so min >= 1 - (n-1)chi up to slack.
  if (rep.cond_sum && rep.cond_max && rep.min_tr < rep.min_bound - n * tol)
    throw std::logic_error("check_thm1_conditions: min trace below the implied bound");
  return rep;
}

}  // namespace locc
