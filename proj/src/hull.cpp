#include <algorithm>
#include <optional>

#include "monotile/measures.hpp"

// Hull membership: solve the equality part by row reduction, then decide the
// sign constraints on the free variables by Fourier-Motzkin elimination and
// read a witness back in reverse order.

namespace monotile {

namespace {

  // a . f <= b
  struct Ineq {
    std::vector<Fraction> a;
    Fraction              b;

    bool operator==(Ineq const&) const = default;
  };

  using System = std::vector<Ineq>;

  void normalize(Ineq& q) {
    // scale so the first nonzero coefficient has absolute value 1; helps dedupe
    for (auto const& c : q.a) {
      if (c != 0) {
        Fraction s = abs(c);
        for (auto& x : q.a) {
          x /= s;
        }
        q.b /= s;
        return;
      }
    }
  }

  System eliminate(System const& sys, std::size_t v) {
    System pos, neg, out;
    for (auto const& q : sys) {
      if (q.a[v] > 0) {
        pos.push_back(q);
      } else if (q.a[v] < 0) {
        neg.push_back(q);
      } else {
        out.push_back(q);
      }
    }
    for (auto const& p : pos) {
      for (auto const& n : neg) {
        Fraction sp = p.a[v], sn = -n.a[v];
        Ineq     r{std::vector<Fraction>(p.a.size()), p.b * sn + n.b * sp};
        for (std::size_t i = 0; i < r.a.size(); ++i) {
          r.a[i] = p.a[i] * sn + n.a[i] * sp;
        }
        r.a[v] = 0;
        normalize(r);
        if (std::find(out.begin(), out.end(), r) == out.end()) {
          out.push_back(std::move(r));
        }
      }
    }
    return out;
  }

}  // namespace

bool in_convex_hull(std::vector<std::vector<Fraction>> const& vertices,
                    std::vector<Fraction> const& x, std::vector<Fraction>* lambda) {
  std::size_t const m = vertices.size();
  if (m == 0) {
    return false;
  }
  std::size_t const k = x.size();
  for (auto const& v : vertices) {
    if (v.size() != k) {
      throw Error(ErrorCode::dimension_mismatch, "vertex and point dimensions differ");
    }
  }

  // rows: coordinates, then the affine constraint; last column is the rhs
  std::vector<std::vector<Fraction>> A(k + 1, std::vector<Fraction>(m + 1, Fraction(0)));
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < m; ++i) {
      A[c][i] = vertices[i][c];
    }
    A[c][m] = x[c];
  }
  for (std::size_t i = 0; i < m; ++i) {
    A[k][i] = 1;
  }
  A[k][m] = 1;

  std::vector<std::size_t> pivots;
  std::size_t              row = 0;
  for (std::size_t col = 0; col < m && row < A.size(); ++col) {
    std::size_t p = row;
    while (p < A.size() && A[p][col] == 0) {
      ++p;
    }
    if (p == A.size()) {
      continue;
    }
    std::swap(A[p], A[row]);
    Fraction inv = 1 / A[row][col];
    for (auto& e : A[row]) {
      e *= inv;
    }
    for (std::size_t r = 0; r < A.size(); ++r) {
      if (r != row && A[r][col] != 0) {
        Fraction f = A[r][col];
        for (std::size_t c = 0; c <= m; ++c) {
          A[r][c] -= f * A[row][c];
        }
      }
    }
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < A.size(); ++r) {
    if (A[r][m] != 0) {
      return false;
    }
  }

  std::vector<std::size_t> free_vars;
  for (std::size_t i = 0; i < m; ++i) {
    if (std::find(pivots.begin(), pivots.end(), i) == pivots.end()) {
      free_vars.push_back(i);
    }
  }
  std::size_t const f = free_vars.size();

  // lambda_pivot = rhs - sum coef * free >= 0   <=>   sum coef * free <= rhs
  System sys;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    Ineq q{std::vector<Fraction>(f), A[r][m]};
    for (std::size_t t = 0; t < f; ++t) {
      q.a[t] = A[r][free_vars[t]];
    }
    sys.push_back(std::move(q));
  }
  for (std::size_t t = 0; t < f; ++t) {
    Ineq q{std::vector<Fraction>(f, Fraction(0)), Fraction(0)};
    q.a[t] = -1;
    sys.push_back(std::move(q));
  }

  std::vector<System> stages{sys};
  for (std::size_t t = f; t-- > 0;) {
    stages.push_back(eliminate(stages.back(), t));
  }
  for (auto const& q : stages.back()) {
    if (q.b < 0) {
      return false;
    }
  }

  // stages[f - t] still involves free variables 0..t
  std::vector<Fraction> val(f, Fraction(0));
  for (std::size_t t = 0; t < f; ++t) {
    std::optional<Fraction> lo, hi;
    for (auto const& q : stages[f - t - 1]) {
      if (q.a[t] == 0) {
        continue;
      }
      Fraction rest = q.b;
      for (std::size_t u = 0; u < t; ++u) {
        rest -= q.a[u] * val[u];
      }
      Fraction bound = rest / q.a[t];
      if (q.a[t] > 0) {
        hi = hi ? std::min(*hi, bound) : bound;
      } else {
        lo = lo ? std::max(*lo, bound) : bound;
      }
    }
    val[t] = lo ? *lo : (hi ? std::min(*hi, Fraction(0)) : Fraction(0));
  }

  if (lambda) {
    lambda->assign(m, Fraction(0));
    for (std::size_t t = 0; t < f; ++t) {
      (*lambda)[free_vars[t]] = val[t];
    }
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      Fraction v = A[r][m];
      for (std::size_t t = 0; t < f; ++t) {
        v -= A[r][free_vars[t]] * val[t];
      }
      (*lambda)[pivots[r]] = v;
    }
  }
  return true;
}

}  // namespace monotile
