#include "support.hpp"

namespace locc::testing {

Mat random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = Cplx(gauss(rng), gauss(rng));
  return m;
}

HermitianOperator random_hermitian(int d, std::mt19937_64& rng) {
  const Mat g = random_complex(d, d, rng);
  return HermitianOperator(0.5 * (g + g.adjoint()));
}

HermitianOperator random_psd(int d, std::mt19937_64& rng) {
  const Mat g = random_complex(d, d, rng);
  return HermitianOperator(g * g.adjoint());
}

Mat random_unitary(int d, std::mt19937_64& rng) {
  const Mat g = random_complex(d, d, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  // Fix the phase convention so the result is a deterministic function of g.
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const Cplx rii = r(i, i);
    if (std::abs(rii) > 1e-12) q.col(i) *= rii / std::abs(rii);
  }
  return q;
}

Vec random_ket(int d, std::mt19937_64& rng) {
  Vec v = random_complex(d, 1, rng);
  return v / v.norm();
}

Isometry random_subspace(int d, int h, std::mt19937_64& rng) {
  return Isometry(random_unitary(d, rng).leftCols(h));
}

namespace {

// Density operator with full support on the block spanned by the isometry q.
HermitianOperator block_density(const Mat& q, std::mt19937_64& rng) {
  const int h = static_cast<int>(q.cols());
  const Mat g = random_complex(h, h, rng);
  Mat w = g * g.adjoint() + 0.5 * Mat::Identity(h, h);
  w /= w.trace().real();
  return HermitianOperator(q * w * q.adjoint());
}

struct RefinementBuilder {
  std::mt19937_64& rng;
  std::vector<BipartiteState> states;
  int counter = 0;

  void build(const Mat& q_a, const Mat& q_b) {
    const int a = static_cast<int>(q_a.cols());
    const int b = static_cast<int>(q_b.cols());
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const bool must_stop = (a == 1 && b == 1);
    if (must_stop || coin(rng) < 0.3) {
      const HermitianOperator tau = block_density(q_a, rng);
      const HermitianOperator sigma = block_density(q_b, rng);
      states.emplace_back("s" + std::to_string(counter++), static_cast<int>(q_a.rows()),
                          static_cast<int>(q_b.rows()),
                          HermitianOperator(kron(tau.matrix(), sigma.matrix())),
                          ProductParts{tau, sigma});
      return;
    }

    // Refine: split one local block into >= 2 orthogonal parts (a projective
    // measurement on that side) and recurse per outcome.
    const bool split_a = (a >= 2 && b >= 2) ? coin(rng) < 0.5 : a >= 2;
    const Mat& q = split_a ? q_a : q_b;
    const int dim = split_a ? a : b;
    const Mat u = q * random_unitary(dim, rng);
    std::uniform_int_distribution<int> parts_dist(2, dim);
    const int parts = parts_dist(rng);

    // Random composition of dim into `parts` nonempty blocks.
    std::vector<int> sizes(parts, 1);
    for (int rest = dim - parts; rest > 0; --rest) {
      std::uniform_int_distribution<int> pick(0, parts - 1);
      ++sizes[pick(rng)];
    }
    int offset = 0;
    for (const int sz : sizes) {
      const Mat block = u.middleCols(offset, sz);
      offset += sz;
      if (split_a)
        build(block, q_b);
      else
        build(q_a, block);
    }
  }
};

}  // namespace

StateSet random_refinement_set(int d_a, int d_b, std::mt19937_64& rng) {
  RefinementBuilder builder{rng};
  builder.build(Mat::Identity(d_a, d_a), Mat::Identity(d_b, d_b));
  return StateSet(d_a, d_b, std::move(builder.states));
}

}  // namespace locc::testing
