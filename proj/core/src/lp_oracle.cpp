#include "fine/lp_oracle.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace fine {

namespace {

constexpr double kLpTol = 1e-9;     // feasibility threshold on the objective
constexpr double kPivotTol = 1e-11; // smallest usable pivot

// Dense phase-1 simplex for { x >= 0 : A x = b, b >= 0 }.
//
// One artificial variable per row forms the initial basis; the objective
// (sum of artificials) is driven to zero with Bland's rule, which makes
// the pivot sequence deterministic and cycling impossible. Redundant rows
// simply keep their artificial basic at value zero.
class Phase1Simplex {
public:
  Phase1Simplex(std::vector<std::vector<double>> a, std::vector<double> b)
      : rows_(a.size()), cols_(a.empty() ? 0 : a[0].size()) {
    tab_.assign(rows_ + 1, std::vector<double>(cols_ + rows_ + 1, 0.0));
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      const double rhs = std::max(b[i], 0.0);
      for (std::size_t j = 0; j < cols_; ++j) tab_[i][j] = a[i][j];
      tab_[i][cols_ + i] = 1.0;
      tab_[i].back() = rhs;
      basis_[i] = cols_ + i;
    }
    // Objective row: reduced costs for minimizing the artificial mass,
    // expressed as the column sums of the constraint rows.
    auto& obj = tab_[rows_];
    for (std::size_t j = 0; j <= cols_ + rows_; ++j) {
      if (j >= cols_ && j < cols_ + rows_) continue;  // artificials cost out
      double s = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) s += tab_[i][j];
      obj[j] = s;
    }
  }

  // Returns the final phase-1 objective value.
  double solve() {
    for (;;) {
      // Bland: entering = lowest-index column with positive reduced cost.
      std::size_t enter = npos();
      for (std::size_t j = 0; j < cols_ + rows_; ++j) {
        if (tab_[rows_][j] > kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter == npos()) break;

      // Ratio test; ties broken by the lowest basic-variable index.
      std::size_t leave = npos();
      double best = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) {
        const double aij = tab_[i][enter];
        if (aij <= kPivotTol) continue;
        const double ratio = tab_[i].back() / aij;
        if (leave == npos() || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == npos()) break;  // unbounded cannot occur here
      pivot(leave, enter);
    }
    return tab_[rows_].back();
  }

  std::vector<double> solution() const {
    std::vector<double> x(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) x[basis_[i]] = std::max(tab_[i].back(), 0.0);
    }
    return x;
  }

private:
  static std::size_t npos() { return static_cast<std::size_t>(-1); }

  void pivot(std::size_t r, std::size_t c) {
    auto& prow = tab_[r];
    const double inv = 1.0 / prow[c];
    for (double& v : prow) v *= inv;
    prow[c] = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = tab_[i][c];
      if (f == 0.0) continue;
      auto& row = tab_[i];
      for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * prow[j];
      row[c] = 0.0;
    }
    basis_[r] = c;
  }

  std::size_t rows_, cols_;
  std::vector<std::vector<double>> tab_;
  std::vector<std::size_t> basis_;
};

inline int sign_of_bit(int idx, int shift) {
  return (idx >> shift) & 1 ? -1 : 1;
}

}  // namespace

LpResult lp_feasible(const PairMarginals& pm) {
  pm.validate();

  // 17 equality rows over 16 variables: normalization plus the four
  // 4-equation marginal blocks. Redundancies are kept as given.
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  a.emplace_back(16, 1.0);
  b.push_back(1.0);

  struct Block {
    int vi, vj;
    const PairTable* t;
  };
  const Block blocks[] = {{1, 3, &pm.m13}, {1, 4, &pm.m14},
                          {2, 3, &pm.m23}, {2, 4, &pm.m24}};
  for (const auto& blk : blocks) {
    for (int si : {1, -1}) {
      for (int sj : {1, -1}) {
        std::vector<double> row(16, 0.0);
        for (int idx = 0; idx < 16; ++idx) {
          const SpinConfig s = SpinConfig::from_index(idx);
          if (s.sign(blk.vi) == si && s.sign(blk.vj) == sj) row[idx] = 1.0;
        }
        a.push_back(std::move(row));
        b.push_back(blk.t->at(si, sj));
      }
    }
  }

  Phase1Simplex lp(std::move(a), std::move(b));
  LpResult out;
  out.infeasibility = lp.solve();
  out.feasible = out.infeasibility <= kLpTol;
  if (out.feasible) {
    const auto x = lp.solution();
    JointDist4 w;
    for (int i = 0; i < 16; ++i) w.p[i] = x[i];
    w.validate();
    out.witness = w;
  }
  return out;
}

LpBellResult lp_feasible_bell(const PairTable& m12, const PairTable& m13,
                              const PairTable& m23) {
  m12.validate(kEpsUser);
  m13.validate(kEpsUser);
  m23.validate(kEpsUser);
  const struct {
    const char* what;
    double a, b;
  } checks[] = {
      {"<s1> from p(s1,s2) vs p(s1,s3)", m12.first_average(), m13.first_average()},
      {"<s2> from p(s1,s2) vs p(s2,s3)", m12.second_average(), m23.first_average()},
      {"<s3> from p(s1,s3) vs p(s2,s3)", m13.second_average(), m23.second_average()},
  };
  for (const auto& c : checks) {
    if (std::abs(c.a - c.b) > kEpsUser) {
      throw ConsistencyError(std::string("inconsistent single-spin marginals: ") +
                             c.what + " differ by " +
                             std::to_string(std::abs(c.a - c.b)));
    }
  }

  std::vector<std::vector<double>> a;
  std::vector<double> b;
  a.emplace_back(8, 1.0);
  b.push_back(1.0);

  struct Block {
    int shift_i, shift_j;
    const PairTable* t;
  };
  const Block blocks[] = {{2, 1, &m12}, {2, 0, &m13}, {1, 0, &m23}};
  for (const auto& blk : blocks) {
    for (int si : {1, -1}) {
      for (int sj : {1, -1}) {
        std::vector<double> row(8, 0.0);
        for (int idx = 0; idx < 8; ++idx) {
          if (sign_of_bit(idx, blk.shift_i) == si &&
              sign_of_bit(idx, blk.shift_j) == sj) {
            row[idx] = 1.0;
          }
        }
        a.push_back(std::move(row));
        b.push_back(blk.t->at(si, sj));
      }
    }
  }

  Phase1Simplex lp(std::move(a), std::move(b));
  LpBellResult out;
  out.infeasibility = lp.solve();
  out.feasible = out.infeasibility <= kLpTol;
  if (out.feasible) {
    const auto x = lp.solution();
    BellJoint w;
    for (int i = 0; i < 8; ++i) w.p[i] = x[i];
    w.validate();
    out.witness = w;
  }
  return out;
}

}  // namespace fine
