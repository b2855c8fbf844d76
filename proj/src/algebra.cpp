#include "hk/algebra.hpp"

namespace hk {

int GradedAlgebra::total_dim() const {
  int n = 0;
  for (int d : dims) n += d;
  return n;
}

int GradedAlgebra::offset(int i) const {
  int o = 0;
  for (int k = 0; k < i; ++k) o += dims[k];
  return o;
}

const QMat* GradedAlgebra::table(int i, int j) const {
  auto it = mult.find({std::min(i, j), std::max(i, j)});
  return it == mult.end() ? nullptr : &it->second;
}

QVec GradedAlgebra::mult_basis(int i, int alpha, int j, int beta) const {
  QVec out(dim(i + j));
  if (i + j > top_degree || dim(i + j) == 0) return out;
  const QMat* t = table(i, j);
  if (!t) return out;
  // stored row index for the (i <= j) orientation; swap applies the
  // graded-commutativity sign (-1)^{ij}
  Rat sign(1);
  int a = alpha, b = beta, lo = i, hi = j;
  if (i > j) {
    std::swap(a, b);
    std::swap(lo, hi);
    if ((i % 2) && (j % 2)) sign = -1;
  }
  int row = a * dim(hi) + b;
  for (int g = 0; g < dim(i + j); ++g) out[g] = sign * (*t)(row, g);
  return out;
}

QVec GradedAlgebra::mult_vec(int i, const QVec& x, int j, const QVec& y) const {
  QVec out(dim(i + j));
  if (i + j > top_degree || dim(i + j) == 0) return out;
  for (int alpha = 0; alpha < dim(i); ++alpha) {
    if (is_zero(x[alpha])) continue;
    for (int beta = 0; beta < dim(j); ++beta) {
      if (is_zero(y[beta])) continue;
      QVec c = mult_basis(i, alpha, j, beta);
      Rat f = x[alpha] * y[beta];
      for (int g = 0; g < dim(i + j); ++g) out[g] += f * c[g];
    }
  }
  return out;
}

Rat GradedAlgebra::trace_of(const QVec& top) const {
  Rat acc(0);
  for (size_t g = 0; g < top.size(); ++g) acc += trace[g] * top[g];
  return acc;
}

void ValidationReport::add(const std::string& name, bool pass, const std::string& detail) {
  entries.push_back({name, pass, detail});
  ok = ok && pass;
}

ValidationReport validate_algebra(const GradedAlgebra& a) {
  ValidationReport rep;
  int td = a.top_degree;

  rep.add("unit_dimension", a.dim(0) == 1 && a.dim(td) == 1,
          "dim A_0 = " + std::to_string(a.dim(0)) + ", dim A_top = " + std::to_string(a.dim(td)));

  // unit: multiplication by the A_0 basis element is the identity
  bool unit_ok = true;
  for (int j = 0; j <= td && unit_ok; ++j)
    for (int beta = 0; beta < a.dim(j) && unit_ok; ++beta) {
      QVec p = a.mult_basis(0, 0, j, beta);
      for (int g = 0; g < a.dim(j); ++g)
        if (!(p[g] == Rat(g == beta ? 1 : 0))) unit_ok = false;
    }
  rep.add("unit_acts_as_identity", unit_ok);

  // graded commutativity on all basis pairs
  bool comm_ok = true;
  std::string comm_witness;
  for (int i = 0; i <= td && comm_ok; ++i)
    for (int j = i; j + i <= td && comm_ok; ++j)
      for (int alpha = 0; alpha < a.dim(i) && comm_ok; ++alpha)
        for (int beta = 0; beta < a.dim(j); ++beta) {
          QVec xy = a.mult_basis(i, alpha, j, beta);
          QVec yx = a.mult_basis(j, beta, i, alpha);
          Rat sign((i % 2) && (j % 2) ? -1 : 1);
          if (xy != scaled(yx, sign)) {
            comm_ok = false;
            comm_witness = "(" + std::to_string(i) + "," + std::to_string(alpha) + ")x(" +
                           std::to_string(j) + "," + std::to_string(beta) + ")";
            break;
          }
        }
  rep.add("graded_commutativity", comm_ok, comm_witness);

  // associativity on all basis triples
  bool assoc_ok = true;
  std::string witness;
  for (int i = 0; i <= td && assoc_ok; ++i)
    for (int j = 0; i + j <= td && assoc_ok; ++j)
      for (int k = 0; i + j + k <= td && assoc_ok; ++k)
        for (int alpha = 0; alpha < a.dim(i) && assoc_ok; ++alpha)
          for (int beta = 0; beta < a.dim(j) && assoc_ok; ++beta)
            for (int gamma = 0; gamma < a.dim(k); ++gamma) {
              QVec e_g(a.dim(k));
              e_g[gamma] = 1;
              QVec left = a.mult_vec(i + j, a.mult_basis(i, alpha, j, beta), k, e_g);
              QVec e_a(a.dim(i));
              e_a[alpha] = 1;
              QVec right = a.mult_vec(i, e_a, j + k, a.mult_basis(j, beta, k, gamma));
              if (left != right) {
                assoc_ok = false;
                witness = "triple (" + std::to_string(i) + "," + std::to_string(alpha) + ")(" +
                          std::to_string(j) + "," + std::to_string(beta) + ")(" +
                          std::to_string(k) + "," + std::to_string(gamma) + ")";
                break;
              }
            }
  rep.add("associativity", assoc_ok, witness);

  // Poincare pairing non-degenerate between A_i and A_{2d-i}
  bool poincare_ok = true;
  for (int i = 0; i <= td; ++i) {
    if (a.dim(i) != a.dim(td - i)) {
      poincare_ok = false;
      break;
    }
    if (a.dim(i) == 0) continue;
    QMat p(a.dim(i), a.dim(td - i));
    for (int alpha = 0; alpha < a.dim(i); ++alpha)
      for (int beta = 0; beta < a.dim(td - i); ++beta)
        p(alpha, beta) = a.trace_of(a.mult_basis(i, alpha, td - i, beta));
    if (rank_of(p) != a.dim(i)) {
      poincare_ok = false;
      break;
    }
  }
  rep.add("poincare_nondegenerate", poincare_ok);
  return rep;
}

//------------------------------------------------------------------------------

QMat grading_operator(const GradedAlgebra& a) {
  int n = a.total_dim(), d = a.half();
  QMat h(n, n);
  for (int i = 0; i <= a.top_degree; ++i) {
    int o = a.offset(i);
    for (int k = 0; k < a.dim(i); ++k) h(o + k, o + k) = i - d;
  }
  return h;
}

QMat mult_operator(const GradedAlgebra& a, const QVec& a2) {
  int n = a.total_dim();
  QMat l(n, n);
  for (int i = 0; i + 2 <= a.top_degree; ++i) {
    if (a.dim(i) == 0 || a.dim(i + 2) == 0) continue;
    int src = a.offset(i), dst = a.offset(i + 2);
    for (int beta = 0; beta < a.dim(i); ++beta) {
      QVec e(a.dim(i));
      e[beta] = 1;
      QVec col = a.mult_vec(2, a2, i, e);
      for (int g = 0; g < a.dim(i + 2); ++g) l(dst + g, src + beta) = col[g];
    }
  }
  return l;
}

QMat endo_block(const GradedAlgebra& a, const QMat& m, int i, int j) {
  QMat b(a.dim(j), a.dim(i));
  int oi = a.offset(i), oj = a.offset(j);
  for (int r = 0; r < a.dim(j); ++r)
    for (int c = 0; c < a.dim(i); ++c) b(r, c) = m(oj + r, oi + c);
  return b;
}

QMat endo_degree_part(const GradedAlgebra& a, const QMat& m, int delta) {
  int n = a.total_dim();
  QMat out(n, n);
  for (int i = 0; i <= a.top_degree; ++i) {
    int j = i + delta;
    if (j < 0 || j > a.top_degree || a.dim(i) == 0 || a.dim(j) == 0) continue;
    int oi = a.offset(i), oj = a.offset(j);
    for (int r = 0; r < a.dim(j); ++r)
      for (int c = 0; c < a.dim(i); ++c) out(oj + r, oi + c) = m(oj + r, oi + c);
  }
  return out;
}

std::vector<int> endo_degrees(const GradedAlgebra& a, const QMat& m) {
  std::vector<int> degs;
  for (int delta = -a.top_degree; delta <= a.top_degree; ++delta) {
    if (!endo_degree_part(a, m, delta).all_zero()) degs.push_back(delta);
  }
  return degs;
}

QMat embed_block(const GradedAlgebra& a, const QMat& block, int i, int j) {
  int n = a.total_dim();
  QMat out(n, n);
  int oi = a.offset(i), oj = a.offset(j);
  for (int r = 0; r < block.rows(); ++r)
    for (int c = 0; c < block.cols(); ++c) out(oj + r, oi + c) = block(r, c);
  return out;
}

bool lefschetz_type(const GradedAlgebra& a, const QVec& a2) {
  int d = a.half();
  QMat l = mult_operator(a, a2);
  QMat power = QMat::identity(a.total_dim());
  for (int k = 1; k <= d; ++k) {
    power = l * power;
    if (a.dim(d - k) != a.dim(d + k)) return false;
    if (a.dim(d - k) == 0) continue;
    QMat blk = endo_block(a, power, d - k, d + k);
    if (rank_of(blk) != a.dim(d - k)) return false;
  }
  return true;
}

QMat lefschetz_dual(const GradedAlgebra& a, const QVec& a2) {
  int td = a.top_degree, d = a.half();
  QMat l = mult_operator(a, a2);

  // unknowns: blocks Lambda_i : A_i -> A_{i-2}, i = 2..td
  std::vector<int> off(td + 1, -1);
  int nunk = 0;
  for (int i = 2; i <= td; ++i) {
    if (a.dim(i) == 0 || a.dim(i - 2) == 0) continue;
    off[i] = nunk;
    nunk += a.dim(i) * a.dim(i - 2);
  }
  // one matrix equation per degree i on A_i:
  //   Lblk(i-2) Lambda_i - Lambda_{i+2} Lblk(i) = (i - d) Id
  int neq = 0;
  for (int i = 0; i <= td; ++i) neq += a.dim(i) * a.dim(i);
  QMat sys(neq, nunk);
  QVec rhs(neq);
  int row0 = 0;
  for (int i = 0; i <= td; ++i) {
    int ni = a.dim(i);
    if (ni == 0) continue;
    QMat lin = i >= 2 ? endo_block(a, l, i - 2, i) : QMat(0, 0);
    QMat lout = i + 2 <= td ? endo_block(a, l, i, i + 2) : QMat(0, 0);
    for (int r = 0; r < ni; ++r)
      for (int c = 0; c < ni; ++c) {
        int row = row0 + r * ni + c;
        rhs[row] = Rat(i - d) * Rat(r == c ? 1 : 0);
        if (i >= 2 && off[i] >= 0) {
          // (Lblk(i-2) Lambda_i)(r,c) = sum_k lin(r,k) Lambda_i(k,c)
          for (int k = 0; k < a.dim(i - 2); ++k)
            sys(row, off[i] + k * ni + c) += lin(r, k);
        }
        if (i + 2 <= td && off[i + 2] >= 0) {
          // -(Lambda_{i+2} Lblk(i))(r,c) = -sum_k Lambda_{i+2}(r,k) lout(k,c)
          for (int k = 0; k < a.dim(i + 2); ++k)
            sys(row, off[i + 2] + r * a.dim(i + 2) + k) -= lout(k, c);
        }
      }
    row0 += ni * ni;
  }
  bool unique = false;
  auto sol = solve(sys, rhs, &unique);
  if (!sol) throw Error("NotLefschetzType", "no Lefschetz dual for this element");
  if (!unique)
    throw Error("InternalError", "Lefschetz dual not unique; algebra is inconsistent");

  int n = a.total_dim();
  QMat lam(n, n);
  for (int i = 2; i <= td; ++i) {
    if (off[i] < 0) continue;
    int oi = a.offset(i), oj = a.offset(i - 2), ni = a.dim(i);
    for (int r = 0; r < a.dim(i - 2); ++r)
      for (int c = 0; c < ni; ++c) lam(oj + r, oi + c) = (*sol)[off[i] + r * ni + c];
  }
  // re-verify the triple relations
  QMat h = grading_operator(a);
  if (bracket(l, lam) != h || bracket(h, l) != Rat(2) * l ||
      bracket(h, lam) != Rat(-2) * lam)
    throw Error("InternalError", "Lefschetz relations failed verification");
  return lam;
}

}  // namespace hk
