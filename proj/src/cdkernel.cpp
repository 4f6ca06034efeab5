#include "stepline/cdkernel.hpp"

#include "stepline/moments.hpp"

#include <algorithm>

namespace stepline {

namespace {

using Values = std::vector<std::vector<Rational>>;

Matrix kernel_from_values(const Values& av, const Values& bv, std::size_t n, std::size_t p,
                          std::size_t q) {
  Matrix K(p, q);
  Rational t;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t a = 0; a < p; ++a) {
      if (sgn(av[i][a]) == 0) continue;
      for (std::size_t b = 0; b < q; ++b) {
        t = av[i][a] * bv[i][b];
        K(a, b) += t;
      }
    }
  return K;
}

std::string matrix_text(const Matrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    s += r ? "; " : "";
    for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? " " : "") + to_string(m(r, c));
  }
  return s + "]";
}

std::string pair_text(const Point& x, const Point& y) {
  return "x=(" + to_string(x) + ") y=(" + to_string(y) + ")";
}

} // namespace

Matrix kernel_eval(const FamilyA& A, const FamilyB& B, std::size_t n, const Point& x, const Point& y) {
  if (n >= A.size() || n >= B.size()) throw std::out_of_range("kernel_eval: n exceeds family count");
  return kernel_from_values(evaluate(A, x, n + 1), evaluate(B, y, n + 1), n, A.p, B.q);
}

CheckReport check_reproduction(const FamilyA& A, const FamilyB& B, const MomentCache& moments,
                               std::size_t n, const std::vector<std::pair<Point, Point>>& pairs) {
  CheckReport report{"reproduction"};
  const std::size_t q = B.q;
  const std::size_t p = A.p;
  const std::size_t N = n + 1;

  Matrix Bmat(N, N), Amat(N, N);
  for (std::size_t m = 0; m < N; ++m) {
    for (std::size_t b = 0; b < q; ++b)
      for (const auto& [K, c] : B(m, b).terms()) Bmat(m, K * q + b) = c;
    for (std::size_t a = 0; a < p; ++a)
      for (const auto& [K, c] : A(m, a).terms()) Amat(K * p + a, m) = c;
  }
  MomentTruncation M;
  try {
    M = assemble_moments(moments, N);
  } catch (const MomentRangeError&) {
    report.skip();
    return report;
  }
  const Matrix middle = Bmat * M.data * Amat;
  report.expect(middle == Matrix::identity(N),
                "middle identity fails at n=" + std::to_string(n) + ": " + matrix_text(middle));

  for (const auto& [x, y] : pairs) {
    const Values ax = evaluate(A, x, N);
    const Values by = evaluate(B, y, N);
    // Left kernel as polynomials in t: Kx[a][b'] = sum_i A_i^(a)(x) B_i^(b')(t).
    std::vector<std::vector<BiPoly>> Kx(p, std::vector<BiPoly>(q));
    std::vector<std::vector<BiPoly>> Ky(p, std::vector<BiPoly>(q));
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < q; ++b) {
          if (sgn(ax[i][a]) != 0) Kx[a][b] += ax[i][a] * B(i, b);
          if (sgn(by[i][b]) != 0) Ky[a][b] += by[i][b] * A(i, a);
        }
    bool available = true;
    for (std::size_t a = 0; a < p && available; ++a)
      for (std::size_t b = 0; b < q && available; ++b)
        for (std::size_t bb = 0; bb < q && available; ++bb)
          for (std::size_t aa = 0; aa < p && available; ++aa)
            available = moments.can_integrate(bb, aa, Kx[a][bb], Ky[aa][b]);
    if (!available) {
      report.skip();
      continue;
    }
    Matrix lhs(p, q);
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = 0; b < q; ++b)
        for (std::size_t bb = 0; bb < q; ++bb)
          for (std::size_t aa = 0; aa < p; ++aa) lhs(a, b) += moments.integrate(bb, aa, Kx[a][bb], Ky[aa][b]);
    const Matrix rhs = kernel_from_values(ax, by, n, p, q);
    report.expect(lhs == rhs, "expansion fails at n=" + std::to_string(n) + " " + pair_text(x, y));
  }
  return report;
}

std::string to_string(ProjectionStatus s) {
  switch (s) {
    case ProjectionStatus::holds: return "holds";
    case ProjectionStatus::fails: return "fails";
    case ProjectionStatus::below_threshold: return "below_threshold";
    case ProjectionStatus::unchecked: return "unchecked";
  }
  return "unknown";
}

ProjectionResult check_projection(const FamilyA& A, const FamilyB& B, const MomentCache& moments,
                                  std::size_t n, const PolyMatrix& P, std::size_t I) {
  const std::size_t p = A.p;
  const std::size_t q = B.q;
  if (P.rows() != p || P.cols() != p) throw std::invalid_argument("check_projection: P must be p x p");
  if (n < I * p + p - 1)
    return {ProjectionStatus::below_threshold,
            "n=" + std::to_string(n) + " < Ip+p-1=" + std::to_string(I * p + p - 1)};
  if (n >= A.size()) throw std::out_of_range("check_projection: n exceeds family count");

  PolyMatrix R(p, p);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t c = 0; c < p; ++c) {
      Rational coef = 0;
      for (std::size_t b = 0; b < q; ++b)
        for (std::size_t a = 0; a < p; ++a) {
          if (!moments.can_integrate(b, a, B(i, b), P(a, c))) return {ProjectionStatus::unchecked, "moments unavailable"};
          coef += moments.integrate(b, a, B(i, b), P(a, c));
        }
      if (sgn(coef) == 0) continue;
      for (std::size_t a = 0; a < p; ++a) R(a, c) += coef * A(i, a);
    }
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t c = 0; c < p; ++c)
      if (!(R(a, c) == P(a, c)))
        return {ProjectionStatus::fails, "entry (" + std::to_string(a + 1) + "," + std::to_string(c + 1) +
                                             ") differs at n=" + std::to_string(n)};
  return {ProjectionStatus::holds, ""};
}

ProjectionResult check_projection_dual(const FamilyA& A, const FamilyB& B, const MomentCache& moments,
                                       std::size_t n, const PolyMatrix& P, std::size_t I) {
  const std::size_t p = A.p;
  const std::size_t q = B.q;
  if (P.rows() != q || P.cols() != q) throw std::invalid_argument("check_projection_dual: P must be q x q");
  if (n < I * q + q - 1)
    return {ProjectionStatus::below_threshold,
            "n=" + std::to_string(n) + " < Iq+q-1=" + std::to_string(I * q + q - 1)};
  if (n >= B.size()) throw std::out_of_range("check_projection_dual: n exceeds family count");

  PolyMatrix R(q, q);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t c = 0; c < q; ++c) {
      Rational coef = 0;
      for (std::size_t bb = 0; bb < q; ++bb)
        for (std::size_t a = 0; a < p; ++a) {
          if (!moments.can_integrate(bb, a, P(c, bb), A(i, a))) return {ProjectionStatus::unchecked, "moments unavailable"};
          coef += moments.integrate(bb, a, P(c, bb), A(i, a));
        }
      if (sgn(coef) == 0) continue;
      for (std::size_t b = 0; b < q; ++b) R(c, b) += coef * B(i, b);
    }
  for (std::size_t c = 0; c < q; ++c)
    for (std::size_t b = 0; b < q; ++b)
      if (!(R(c, b) == P(c, b)))
        return {ProjectionStatus::fails, "entry (" + std::to_string(c + 1) + "," + std::to_string(b + 1) +
                                             ") differs at n=" + std::to_string(n)};
  return {ProjectionStatus::holds, ""};
}

std::size_t band_size(const Band& b) { return b.last + 1 - b.first; }

CDBlocks cd_blocks(const RecurrenceMatrix& T, const FamilyA& A, const FamilyB& B, std::size_t n) {
  const std::size_t q = T.q();
  const std::size_t p = T.p();
  const Axis k = T.k();
  CDBlocks blk;
  blk.k = k;
  blk.n = n;
  blk.tgt_rows = {n + 1, n_plus(n, p, k)};
  blk.tgt_cols = {n_minus_big(n + 1, p, k), n};
  blk.src_rows = {n_minus_big(n + 1, q, k), n};
  blk.src_cols = {n + 1, n_plus(n, q, k)};

  if (n >= T.rows_known() || n >= T.cols_known() || blk.tgt_rows.last >= A.size() ||
      blk.src_cols.last >= B.size())
    throw InsufficientDepthError(T.size(), required_depth(n + 1, q, p));

  auto slice = [&](const Band& rows, const Band& cols) {
    Matrix out(band_size(rows), band_size(cols));
    for (std::size_t r = rows.first; r <= rows.last; ++r)
      for (std::size_t c = cols.first; c <= cols.last; ++c) out(r - rows.first, c - cols.first) = T(r, c);
    return out;
  };
  blk.T_tgt = slice(blk.tgt_rows, blk.tgt_cols);
  blk.T_src = slice(blk.src_rows, blk.src_cols);

  auto a_slice = [&](const Band& idx) {
    PolyMatrix out(p, band_size(idx));
    for (std::size_t i = idx.first; i <= idx.last; ++i)
      for (std::size_t a = 0; a < p; ++a) out(a, i - idx.first) = A(i, a);
    return out;
  };
  auto b_slice = [&](const Band& idx) {
    PolyMatrix out(band_size(idx), q);
    for (std::size_t i = idx.first; i <= idx.last; ++i)
      for (std::size_t b = 0; b < q; ++b) out(i - idx.first, b) = B(i, b);
    return out;
  };
  blk.A_tgt = a_slice(blk.tgt_rows);
  blk.B_tgt = b_slice(blk.tgt_cols);
  blk.A_src = a_slice(blk.src_rows);
  blk.B_src = b_slice(blk.src_cols);
  return blk;
}

namespace {

std::size_t x_side_top(const CDBlocks& blk) { return std::max(blk.tgt_rows.last, blk.src_rows.last); }
std::size_t y_side_top(const CDBlocks& blk) { return std::max(blk.src_cols.last, blk.tgt_cols.last); }

// alpha = A_tgt(x) T_tgt and beta = A_src(x) T_src, both p x (columns of the block).
struct XSide {
  Values av;
  Matrix alpha;
  Matrix beta;
};

XSide x_side(const CDBlocks& blk, const FamilyA& A, const Point& x) {
  XSide s;
  s.av = evaluate(A, x, x_side_top(blk) + 1);
  const std::size_t p = A.p;
  auto fold = [&](const Band& rows, const Matrix& T) {
    Matrix out(p, T.cols());
    Rational t;
    for (std::size_t r = 0; r < T.rows(); ++r)
      for (std::size_t a = 0; a < p; ++a) {
        const Rational& v = s.av[rows.first + r][a];
        if (sgn(v) == 0) continue;
        for (std::size_t c = 0; c < T.cols(); ++c) {
          if (sgn(T(r, c)) == 0) continue;
          t = v * T(r, c);
          out(a, c) += t;
        }
      }
    return out;
  };
  s.alpha = fold(blk.tgt_rows, blk.T_tgt);
  s.beta = fold(blk.src_rows, blk.T_src);
  return s;
}

Matrix residual_from(const CDBlocks& blk, const XSide& xs, const Values& bv, const Rational& xk,
                     const Rational& yk) {
  const std::size_t p = xs.alpha.rows();
  const std::size_t q = bv.empty() ? 0 : bv[0].size();
  Matrix res = kernel_from_values(xs.av, bv, blk.n, p, q);
  const Rational diff = xk - yk;
  Rational t;
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < q; ++b) {
      res(a, b) *= diff;
      for (std::size_t c = 0; c < xs.alpha.cols(); ++c) {
        t = xs.alpha(a, c) * bv[blk.tgt_cols.first + c][b];
        res(a, b) -= t;
      }
      for (std::size_t c = 0; c < xs.beta.cols(); ++c) {
        t = xs.beta(a, c) * bv[blk.src_cols.first + c][b];
        res(a, b) += t;
      }
    }
  return res;
}

} // namespace

Matrix cd_residual(const CDBlocks& blk, const FamilyA& A, const FamilyB& B, const Point& x,
                   const Point& y) {
  const XSide xs = x_side(blk, A, x);
  const Values bv = evaluate(B, y, y_side_top(blk) + 1);
  return residual_from(blk, xs, bv, x.coord(blk.k), y.coord(blk.k));
}

bool check_cd_formula(const CDBlocks& blk, const FamilyA& A, const FamilyB& B, const Point& x,
                      const Point& y) {
  return is_zero(cd_residual(blk, A, B, x, y));
}

CheckReport check_cd_grid(const CDBlocks& blk, const FamilyA& A, const FamilyB& B) {
  CheckReport report{"cd"};
  std::size_t dx = 0, dy = 0;
  for (std::size_t i = 0; i <= x_side_top(blk); ++i)
    for (const auto& f : A.cols[i])
      if (auto d = f.total_deg()) dx = std::max(dx, *d);
  for (std::size_t i = 0; i <= y_side_top(blk); ++i)
    for (const auto& f : B.rows[i])
      if (auto d = f.total_deg()) dy = std::max(dy, *d);
  ++dx;  // the factor (x_k - y_k)
  ++dy;

  std::vector<Point> xs_grid, ys_grid;
  for (std::size_t u = 0; u <= dx; ++u)
    for (std::size_t v = 0; v <= dx; ++v) xs_grid.push_back({Rational(static_cast<long>(u)), Rational(static_cast<long>(v))});
  for (std::size_t u = 0; u <= dy; ++u)
    for (std::size_t v = 0; v <= dy; ++v) ys_grid.push_back({Rational(static_cast<long>(u)), Rational(static_cast<long>(v))});

  std::vector<Values> bvs;
  bvs.reserve(ys_grid.size());
  for (const auto& y : ys_grid) bvs.push_back(evaluate(B, y, y_side_top(blk) + 1));

  for (const auto& x : xs_grid) {
    const XSide xs = x_side(blk, A, x);
    for (std::size_t j = 0; j < ys_grid.size(); ++j) {
      const Matrix res = residual_from(blk, xs, bvs[j], x.coord(blk.k), ys_grid[j].coord(blk.k));
      if (is_zero(res)) report.pass();
      else
        report.fail("k=" + std::to_string(axis_index(blk.k)) + " n=" + std::to_string(blk.n) + " " +
                    pair_text(x, ys_grid[j]) + " residual " + matrix_text(res));
    }
  }
  return report;
}

Matrix monomial_row_block(std::size_t width, std::size_t n, const Point& x) {
  Matrix out(width, n + 1);
  for (std::size_t m = 0; m <= n; ++m) out(m % width, m) = BiPoly::monomial(m / width).eval(x);
  return out;
}

CheckReport check_abc(const MomentCache& moments, const FamilyA& A, const FamilyB& B, std::size_t n,
                      const std::vector<std::pair<Point, Point>>& pairs) {
  CheckReport report{"abc"};
  Matrix Minv;
  try {
    Minv = inverse(assemble_moments(moments, n + 1).data);
  } catch (const MomentRangeError&) {
    report.skip();
    return report;
  }
  for (const auto& [x, y] : pairs) {
    const Matrix abc = monomial_row_block(A.p, n, x) * Minv * monomial_row_block(B.q, n, y).transpose();
    const Matrix fam = kernel_eval(A, B, n, x, y);
    report.expect(abc == fam, "n=" + std::to_string(n) + " " + pair_text(x, y) + ": inverse form " +
                                  matrix_text(abc) + ", family sum " + matrix_text(fam));
  }
  return report;
}

} // namespace stepline
