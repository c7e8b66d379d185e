#include "kuelsh/kulshammer.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "kuelsh/errors.hpp"

namespace kuelsh {

FieldElement TraceForm::apply(const AlgebraElement& x) const {
  if (x.size() != psi_.size()) fail(Errc::BadInput, "element size mismatch");
  FieldElement v = FieldElement::zero(psi_.front().spec());
  for (size_t i = 0; i < x.size(); ++i) v = v + psi_[i] * x[i];
  return v;
}

TraceForm TraceForm::rescaled(const FieldElement& factor) const {
  if (factor.is_zero()) fail(Errc::Degenerate, "zero rescaling");
  TraceForm f = *this;
  for (auto& v : f.psi_) v = v * factor;
  for (size_t i = 0; i < f.gram_.rows(); ++i)
    for (size_t j = 0; j < f.gram_.cols(); ++j) f.gram_(i, j) = f.gram_(i, j) * factor;
  return f;
}

void TraceForm::compute_gram(const StructureAlgebra& A) {
  const size_t n = A.dim();
  gram_ = Matrix(A.spec(), n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      FieldElement v = FieldElement::zero(A.spec());
      for (const auto& [m, c] : A.basis_product(i, j)) v = v + psi_[m] * c;
      gram_(i, j) = v;
    }
}

void TraceForm::verify(const StructureAlgebra& A) const {
  const size_t n = A.dim();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (gram_(i, j) != gram_(j, i))
        fail(Errc::FormAsymmetric, "psi(ab) != psi(ba) on basis pair " + A.label(i) + ", " +
                                       A.label(j));
  auto [r, rank] = rref(gram_);
  if (rank != n) fail(Errc::Degenerate, "Gram matrix of the form is singular");
  Subspace comm = A.commutator_subspace();
  for (size_t i = 0; i < comm.dim(); ++i)
    if (!apply(comm.basis().row(i)).is_zero())
      fail(Errc::FormAsymmetric, "form does not vanish on commutators");
}

TraceForm build_trace_form(const StructureAlgebra& A) {
  const size_t n = A.dim();
  const FieldSpec& K = A.spec();
  Subspace soc = A.socle();
  Subspace comm = A.commutator_subspace();

  // one socle element per vertex, supported on e_v A e_v
  const size_t nv = A.vertex_count();
  std::vector<AlgebraElement> socv;
  for (size_t v = 0; v < nv; ++v) {
    std::vector<std::vector<FieldElement>> coords;
    for (size_t i = 0; i < n; ++i)
      if (A.vertex_pair(i) == std::make_pair((int)v, (int)v)) coords.push_back(A.basis_element(i));
    Subspace diag = Subspace::span(K, n, coords);
    Subspace sv = soc.intersect(diag);
    if (sv.dim() != 1)
      fail(Errc::Degenerate, "socle component at vertex " + A.vertex_labels()[v] +
                                 " is not one-dimensional");
    socv.push_back(sv.basis().row(0));
  }

  // connected components of the quiver
  std::vector<size_t> comp(nv);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t x) {
    return comp[x] == x ? x : comp[x] = find(comp[x]);
  };
  for (const auto& a : A.arrows()) comp[find(a.src)] = find(a.dst);
  std::vector<size_t> anchor(nv);
  for (size_t v = 0; v < nv; ++v) {
    size_t a = v;
    for (size_t w = 0; w < nv; ++w)
      if (find(w) == find(v)) {
        a = w;
        break;
      }
    anchor[v] = a;
  }

  // scale so socle elements within one block agree modulo commutators
  std::vector<FieldElement> lambda(nv, FieldElement::one(K));
  for (size_t v = 0; v < nv; ++v) {
    if (v == anchor[v]) continue;
    auto ra = comm.reduce(socv[anchor[v]]);
    auto rv = comm.reduce(socv[v]);
    Matrix sys(K, n, 2);
    for (size_t i = 0; i < n; ++i) {
      sys(i, 0) = ra[i];
      sys(i, 1) = rv[i];
    }
    Matrix ker = kernel(sys);
    if (ker.rows() != 1)
      fail(ker.rows() == 0 ? Errc::NoConsistentScaling : Errc::Degenerate,
           "socle scaling system has no unique solution at vertex " + A.vertex_labels()[v]);
    FieldElement mu = ker(0, 0), nu = ker(0, 1);
    if (mu.is_zero() || nu.is_zero())
      fail(Errc::NoConsistentScaling, "socle elements not commensurable modulo commutators");
    lambda[v] = -(nu / mu);  // s_anchor - lambda_v s_v in [A,A]
  }

  std::vector<AlgebraElement> scaled;
  for (size_t v = 0; v < nv; ++v) {
    AlgebraElement e = socv[v];
    for (auto& c : e) c = c * lambda[v];
    scaled.push_back(std::move(e));
  }

  // psi is a functional on A/[A,A] (that is what symmetry means): 1 on the
  // socle class of each block, 0 on a complement spanned by classes of basis
  // paths, picked greedily in the canonical path order
  std::vector<std::vector<FieldElement>> rows;      // condition vectors
  std::vector<FieldElement> rhs;                    // target values
  for (size_t i = 0; i < comm.dim(); ++i) {
    rows.push_back(comm.basis().row(i));
    rhs.push_back(FieldElement::zero(K));
  }
  Subspace spanned = comm;
  for (size_t v = 0; v < nv; ++v) {
    if (anchor[v] != v) continue;
    if (spanned.contains(scaled[v]))
      fail(Errc::Degenerate, "socle class vanishes modulo commutators");
    rows.push_back(scaled[v]);
    rhs.push_back(FieldElement::one(K));
    spanned = spanned.sum(Subspace::span(K, n, {scaled[v]}));
  }
  for (size_t b = 0; b < n && spanned.dim() < n; ++b) {
    auto e = A.basis_element(b);
    if (spanned.contains(e)) continue;
    rows.push_back(e);
    rhs.push_back(FieldElement::zero(K));
    spanned = spanned.sum(Subspace::span(K, n, {e}));
  }
  if (rows.size() != n) fail(Errc::Internal, "psi conditions do not determine the form");

  Matrix aug(K, n, n + 1);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = rows[i][j];
    aug(i, n) = rhs[i];
  }
  if (rref_in_place(aug) != n) fail(Errc::Internal, "psi condition system is singular");
  TraceForm form;
  form.psi_.assign(n, FieldElement::zero(K));
  for (size_t i = 0; i < n; ++i) {
    size_t col = 0;
    while (col < n && aug(i, col).is_zero()) ++col;
    form.psi_[col] = aug(i, n);
  }
  form.socle_elements_ = std::move(scaled);
  form.scalings_ = std::move(lambda);
  form.compute_gram(A);
  form.verify(A);
  return form;
}

Subspace tn_space(const StructureAlgebra& A, unsigned n) {
  Subspace comm = A.commutator_subspace();
  if (n == 0) return comm;
  const size_t dim = A.dim();
  const FieldSpec& K = A.spec();

  // coset representatives: non-pivot coordinates of [A,A]
  std::vector<bool> is_pivot(dim, false);
  for (size_t i = 0; i < comm.dim(); ++i) {
    size_t col = 0;
    while (col < dim && comm.basis()(i, col).is_zero()) ++col;
    is_pivot[col] = true;
  }
  std::vector<size_t> reps;
  for (size_t j = 0; j < dim; ++j)
    if (!is_pivot[j]) reps.push_back(j);
  if (reps.empty()) return comm;

  uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) q *= (uint64_t)K.characteristic();
  std::vector<std::vector<FieldElement>> images;
  for (size_t r : reps) images.push_back(comm.reduce(A.power(A.basis_element(r), q)));

  Subspace lam = semilinear_kernel(images, n);
  std::vector<std::vector<FieldElement>> lifted;
  for (size_t i = 0; i < lam.dim(); ++i) {
    AlgebraElement x = A.zero_element();
    for (size_t j = 0; j < reps.size(); ++j) x[reps[j]] = lam.basis()(i, j);
    lifted.push_back(std::move(x));
  }
  return comm.sum(Subspace::span(K, dim, lifted));
}

Subspace orthogonal(const StructureAlgebra& A, const TraceForm& form, const Subspace& S) {
  if (S.dim() == 0) return A.full_space();
  Matrix rows = S.basis() * form.gram();
  Matrix k = kernel(rows);
  std::vector<std::vector<FieldElement>> basis;
  for (size_t i = 0; i < k.rows(); ++i) basis.push_back(k.row(i));
  return Subspace::span(A.spec(), A.dim(), basis);
}

unsigned default_ladder_depth(const StructureAlgebra& A) {
  unsigned n = 0;
  uint64_t q = 1;
  while (q < A.loewy_length()) {
    q *= (uint64_t)A.spec().characteristic();
    ++n;
  }
  return n;
}

KulshammerLadder kulshammer_ladder(const StructureAlgebra& A, const TraceForm& form,
                                   unsigned n_max) {
  KulshammerLadder ladder;
  ladder.center = A.center();
  ladder.reynolds = ladder.center.intersect(A.socle());

  for (unsigned n = 0; n <= n_max; ++n) {
    LadderStep step;
    step.n = n;
    step.t = tn_space(A, n);
    step.t_perp = orthogonal(A, form, step.t);
    ladder.steps.push_back(std::move(step));
  }

  // chain, duality, and ideal checks
  for (size_t i = 0; i < ladder.steps.size(); ++i) {
    const auto& st = ladder.steps[i];
    if (st.t.dim() + st.t_perp.dim() != A.dim())
      fail(Errc::Degenerate, "dim T_n + dim T_n^perp != dim A");
    if (i > 0) {
      if (!st.t.contains(ladder.steps[i - 1].t))
        fail(Errc::Internal, "T_n chain is not ascending");
      if (!ladder.steps[i - 1].t_perp.contains(st.t_perp))
        fail(Errc::Internal, "T_n^perp chain is not descending");
    }
    if (!ladder.center.contains(st.t_perp))
      fail(Errc::Internal, "T_n^perp is not contained in the center");
    for (size_t zi = 0; zi < ladder.center.dim(); ++zi)
      for (size_t ti = 0; ti < st.t_perp.dim(); ++ti) {
        auto prod = A.multiply(ladder.center.basis().row(zi), st.t_perp.basis().row(ti));
        if (!st.t_perp.contains(prod))
          fail(Errc::Internal, "T_n^perp is not an ideal of the center");
      }
    if (!st.t_perp.contains(ladder.reynolds))
      fail(Errc::Internal, "T_n^perp does not contain the Reynolds ideal");
  }
  uint64_t q = 1;
  for (unsigned i = 0; i < n_max; ++i) q *= (uint64_t)A.spec().characteristic();
  if (q >= A.loewy_length() && !(ladder.steps.back().t_perp == ladder.reynolds))
    fail(Errc::Internal, "ladder did not stabilize at the Reynolds ideal");
  return ladder;
}

QuotientInvariants quotient_invariants(const StructureAlgebra& A, const Subspace& Z,
                                       const Subspace& I) {
  const FieldSpec& K = A.spec();
  if (!Z.contains(I)) fail(Errc::NotAnIdeal, "I is not contained in Z");
  for (size_t zi = 0; zi < Z.dim(); ++zi)
    for (size_t ti = 0; ti < I.dim(); ++ti)
      if (!I.contains(A.multiply(Z.basis().row(zi), I.basis().row(ti))))
        fail(Errc::NotAnIdeal, "I is not an ideal of Z");

  QuotientInvariants inv;
  const size_t c = Z.dim();
  inv.total_dim = c - I.dim();
  if (inv.total_dim == 0) return inv;

  // Z-coordinates: values at the pivot columns of Z's RREF basis
  std::vector<size_t> zpivots;
  for (size_t i = 0; i < c; ++i) {
    size_t col = 0;
    while (col < Z.ambient_dim() && Z.basis()(i, col).is_zero()) ++col;
    zpivots.push_back(col);
  }
  auto zcoords = [&](const AlgebraElement& v) {
    std::vector<FieldElement> out;
    out.reserve(c);
    for (size_t p : zpivots) out.push_back(v[p]);
    return out;
  };
  auto lift = [&](const std::vector<FieldElement>& zc) {
    AlgebraElement v = A.zero_element();
    for (size_t i = 0; i < c; ++i)
      for (size_t j = 0; j < Z.ambient_dim(); ++j) v[j] = v[j] + zc[i] * Z.basis()(i, j);
    return v;
  };

  std::vector<std::vector<FieldElement>> irows;
  for (size_t i = 0; i < I.dim(); ++i) irows.push_back(zcoords(I.basis().row(i)));
  Subspace Iz = Subspace::span(K, c, irows);

  std::vector<bool> ipivot(c, false);
  for (size_t i = 0; i < Iz.dim(); ++i) {
    size_t col = 0;
    while (col < c && Iz.basis()(i, col).is_zero()) ++col;
    ipivot[col] = true;
  }
  std::vector<size_t> reps;
  for (size_t j = 0; j < c; ++j)
    if (!ipivot[j]) reps.push_back(j);
  const size_t m = reps.size();

  auto qcoords = [&](std::vector<FieldElement> zc) {
    zc = Iz.reduce(std::move(zc));
    std::vector<FieldElement> out;
    out.reserve(m);
    for (size_t r : reps) out.push_back(zc[r]);
    return out;
  };

  // multiplication table of the quotient on coset representatives
  std::vector<std::vector<std::vector<FieldElement>>> table(
      m, std::vector<std::vector<FieldElement>>(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      std::vector<FieldElement> zi(c, FieldElement::zero(K)), zj(c, FieldElement::zero(K));
      zi[reps[i]] = FieldElement::one(K);
      zj[reps[j]] = FieldElement::one(K);
      auto prod = A.multiply(lift(zi), lift(zj));
      auto pz = zcoords(prod);
      // the product of central elements stays central; sanity-check the lift
      if (!Z.contains(prod)) fail(Errc::Internal, "product left the subalgebra");
      table[i][j] = qcoords(std::move(pz));
    }
  auto qmul = [&](const std::vector<FieldElement>& x, const std::vector<FieldElement>& y) {
    std::vector<FieldElement> out(m, FieldElement::zero(K));
    for (size_t i = 0; i < m; ++i) {
      if (x[i].is_zero()) continue;
      for (size_t j = 0; j < m; ++j) {
        if (y[j].is_zero()) continue;
        FieldElement f = x[i] * y[j];
        for (size_t t = 0; t < m; ++t) out[t] = out[t] + f * table[i][j][t];
      }
    }
    return out;
  };

  // radical of the quotient = image of (rad Z + I), rad Z = Z n rad A
  Subspace radZ = Z.intersect(A.radical());
  std::vector<std::vector<FieldElement>> radrows;
  for (size_t i = 0; i < radZ.dim(); ++i) radrows.push_back(qcoords(zcoords(radZ.basis().row(i))));
  Subspace rad = Subspace::span(K, m, radrows);

  Subspace power = rad;
  while (power.dim() > 0) {
    inv.radical_power_dims.push_back(power.dim());
    if (inv.radical_power_dims.size() > inv.total_dim)
      fail(Errc::Internal, "quotient radical fails to be nilpotent");
    std::vector<std::vector<FieldElement>> next;
    for (size_t i = 0; i < power.dim(); ++i)
      for (size_t j = 0; j < rad.dim(); ++j)
        next.push_back(qmul(power.basis().row(i), rad.basis().row(j)));
    power = Subspace::span(K, m, next);
  }
  inv.nilpotency_index = inv.radical_power_dims.size() + 1;

  if (rad.dim() == 0) {
    inv.socle_dim = inv.total_dim;
  } else {
    std::vector<std::vector<FieldElement>> rows;
    for (size_t i = 0; i < rad.dim(); ++i) {
      // x -> x * rad_i, one block of m rows per radical generator
      std::vector<std::vector<FieldElement>> block(m);
      for (size_t b = 0; b < m; ++b) {
        std::vector<FieldElement> e(m, FieldElement::zero(K));
        e[b] = FieldElement::one(K);
        block[b] = qmul(e, rad.basis().row(i));
      }
      for (size_t t = 0; t < m; ++t) {
        std::vector<FieldElement> row(m, FieldElement::zero(K));
        bool nz = false;
        for (size_t b = 0; b < m; ++b) {
          row[b] = block[b][t];
          nz = nz || !row[b].is_zero();
        }
        if (nz) rows.push_back(std::move(row));
      }
    }
    if (rows.empty()) {
      inv.socle_dim = inv.total_dim;
    } else {
      Matrix kmat = kernel(Matrix::from_rows(K, rows));
      inv.socle_dim = kmat.rows();
    }
  }
  return inv;
}

}  // namespace kuelsh
