#include "kuelsh/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "kuelsh/errors.hpp"

namespace kuelsh {

int QuiverPresentation::vertex_index(const std::string& label) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == label) return static_cast<int>(i);
  return -1;
}

int QuiverPresentation::arrow_index(const std::string& label) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].label == label) return static_cast<int>(i);
  return -1;
}

void QuiverPresentation::validate() const {
  if (vertices.empty()) fail(Errc::NonAdmissible, "no vertices");
  for (const auto& a : arrows) {
    if (a.src < 0 || a.src >= (int)vertices.size() || a.dst < 0 || a.dst >= (int)vertices.size())
      fail(Errc::NonAdmissible, "arrow endpoints out of range");
  }
  auto check_side = [&](const PathSum& side, int& src, int& dst) {
    for (const auto& [coeff, seq] : side) {
      if (!coeff.spec().compatible(spec)) fail(Errc::NonAdmissible, "coefficient field mismatch");
      if (seq.size() < 2) fail(Errc::NonAdmissible, "relation monomial of length < 2");
      for (size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] < 0 || seq[i] >= (int)arrows.size())
          fail(Errc::NonAdmissible, "bad arrow in relation");
        if (i > 0 && arrows[seq[i - 1]].dst != arrows[seq[i]].src)
          fail(Errc::NonAdmissible, "non-composable relation monomial");
      }
      int s = arrows[seq.front()].src, d = arrows[seq.back()].dst;
      if (src == -1) {
        src = s;
        dst = d;
      } else if (src != s || dst != d) {
        fail(Errc::NonAdmissible, "relation monomials are not parallel");
      }
    }
  };
  for (const auto& r : relations) {
    int src = -1, dst = -1;
    check_side(r.lhs, src, dst);
    check_side(r.rhs, src, dst);
    if (src == -1) fail(Errc::NonAdmissible, "empty relation");
  }
}

namespace {

constexpr size_t kMaxPaths = 400000;

struct PathInfo {
  int src = 0, dst = 0;
  std::vector<int> arrows;  // empty = trivial path at src
  int len() const { return static_cast<int>(arrows.size()); }
};

using Term = std::pair<int, FieldElement>;
using LinComb = std::vector<Term>;  // sorted descending in the path order

// Saturates the relation ideal inside the window of paths of length <= L by
// triangular elimination: every derived constraint rewrites its
// (length,lex)-greatest path into smaller ones. Materialization is lazy and
// prefix-closed: a path only exists as a single-arrow child of a live path,
// products are evaluated by iterated arrow action through the rule table, and
// a new rule reconciles only children that already exist. Constraints are
// instantiated at every live left factor, which together with the child
// reconciliation spans u*r*v over the window.
class QuotientEngine {
public:
  QuotientEngine(const QuiverPresentation& q, size_t loewy_bound)
      : q_(q), L0_(loewy_bound), L_(2 * loewy_bound) {
    q_.validate();
    if (loewy_bound < 1) fail(Errc::BadInput, "loewy bound must be >= 1");
    for (const auto& r : q_.relations) {
      Rel rel;
      auto absorb = [&](const QuiverPresentation::PathSum& side, bool negate) {
        for (const auto& [coeff, seq] : side) {
          FieldElement c = negate ? -coeff : coeff;
          if (c.is_zero()) continue;
          rel.terms.emplace_back(c, seq);
          rel.maxlen = std::max(rel.maxlen, (int)seq.size());
        }
      };
      absorb(r.lhs, false);
      absorb(r.rhs, true);
      if (rel.terms.empty()) continue;
      rel.src = q_.arrows[rel.terms.front().second.front()].src;
      rels_.push_back(std::move(rel));
    }
    for (size_t v = 0; v < q_.vertices.size(); ++v) {
      PathInfo info;
      info.src = info.dst = (int)v;
      add_path(std::move(info));
    }
  }

  void run() {
    fixpoint();
    // close the frontier of short live paths so every basis-times-arrow
    // product resolves; longer live paths mean saturation failed anyway
    for (;;) {
      bool fresh = false;
      for (size_t id = 0; id < paths_.size(); ++id) {
        if (ruled(id) || paths_[id].len() > (int)L0_) continue;
        for (size_t a = 0; a < q_.arrows.size(); ++a)
          if (q_.arrows[a].src == paths_[id].dst && child_of(id, a) < 0) {
            make_child((int)id, (int)a);
            fresh = true;
          }
      }
      if (!fresh) break;
      fixpoint();
    }
  }

  const std::vector<PathInfo>& paths() const { return paths_; }
  bool ruled(size_t id) const { return rules_.count((int)id) > 0; }

  // image of x under right multiplication by one arrow, over live paths
  LinComb act(LinComb x, int arrow) {
    x = reduce(std::move(x));
    LinComb out;
    for (const auto& [id, c] : x) {
      if (paths_[id].dst != q_.arrows[arrow].src) continue;
      if (paths_[id].len() + 1 > (int)L_)
        fail(Errc::SaturationFailure, "live path hit the window edge; bound too small");
      int f = child_of(id, arrow);
      if (f < 0) f = make_child(id, arrow);
      out.emplace_back(f, c);
    }
    return reduce(std::move(out));
  }

  bool order_less(int a, int b) const {
    const PathInfo& pa = paths_[a];
    const PathInfo& pb = paths_[b];
    if (pa.len() != pb.len()) return pa.len() < pb.len();
    if (pa.arrows != pb.arrows) return pa.arrows < pb.arrows;
    return pa.src < pb.src;
  }

private:
  struct Rel {
    std::vector<std::pair<FieldElement, std::vector<int>>> terms;
    int src = -1;
    int maxlen = 0;
  };

  int add_path(PathInfo info) {
    if (paths_.size() >= kMaxPaths)
      fail(Errc::SaturationFailure, "path window exploded; loewy bound too small?");
    int id = (int)paths_.size();
    paths_.push_back(std::move(info));
    seeded_.push_back(false);
    children_.emplace_back(q_.arrows.size(), -1);
    return id;
  }

  int child_of(size_t id, size_t arrow) const { return children_[id][arrow]; }

  int make_child(int id, int arrow) {
    PathInfo info;
    info.src = paths_[id].src;
    info.dst = q_.arrows[arrow].dst;
    info.arrows = paths_[id].arrows;
    info.arrows.push_back(arrow);
    int f = add_path(std::move(info));
    children_[id][arrow] = f;
    return f;
  }

  void sort_desc(LinComb& c) {
    std::sort(c.begin(), c.end(),
              [&](const Term& x, const Term& y) { return order_less(y.first, x.first); });
  }

  LinComb normalize(LinComb c) {
    sort_desc(c);
    LinComb out;
    for (auto& t : c) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second = out.back().second + t.second;
      else
        out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const Term& t) { return t.second.is_zero(); }),
              out.end());
    return out;
  }

  LinComb reduce(LinComb c) {
    c = normalize(std::move(c));
    for (;;) {
      size_t i = 0;
      for (; i < c.size(); ++i)
        if (rules_.count(c[i].first)) break;
      if (i == c.size()) return c;
      FieldElement coeff = c[i].second;
      const LinComb& r = rules_[c[i].first];
      c.erase(c.begin() + i);
      for (const auto& [id, rc] : r) c.emplace_back(id, coeff * rc);
      c = normalize(std::move(c));
    }
  }

  void seed(int u) {
    const int u_dst = paths_[u].dst;
    const int u_len = paths_[u].len();
    for (const auto& rel : rels_) {
      if (rel.src != u_dst) continue;
      if (u_len + rel.maxlen > (int)L_) continue;
      LinComb c;
      for (const auto& [coeff, seq] : rel.terms) {
        LinComb mon{{u, coeff}};
        for (int a : seq) mon = act(std::move(mon), a);
        for (auto& t : mon) c.push_back(std::move(t));
      }
      pending_.push_back(normalize(std::move(c)));
    }
  }

  void drain() {
    while (!pending_.empty()) {
      LinComb c = reduce(std::move(pending_.front()));
      pending_.pop_front();
      if (c.empty()) continue;
      int pivot = c.front().first;
      if (paths_[pivot].len() < 2)
        fail(Errc::Internal, "admissible ideal eliminated a short path");
      FieldElement inv = c.front().second.inv();
      LinComb rhs;
      for (size_t i = 1; i < c.size(); ++i)
        rhs.emplace_back(c[i].first, -(c[i].second * inv));
      rules_[pivot] = rhs;
      // reconcile children that already exist with the new rule
      for (size_t a = 0; a < q_.arrows.size(); ++a) {
        int f = child_of(pivot, a);
        if (f < 0) continue;
        LinComb ext{{f, FieldElement::one(q_.spec)}};
        LinComb img = act(rhs, (int)a);
        for (auto& [id, rc] : img) ext.emplace_back(id, -rc);
        pending_.push_back(normalize(std::move(ext)));
      }
    }
  }

  // drains eagerly and seeds smallest paths first, so rules from short
  // instances already reduce the evaluation of longer ones
  void fixpoint() {
    for (;;) {
      drain();
      int next = -1;
      for (size_t id = 0; id < paths_.size(); ++id) {
        if (seeded_[id] || ruled(id)) continue;
        if (next < 0 || order_less((int)id, next)) next = (int)id;
      }
      if (next < 0) break;
      seeded_[next] = true;
      seed(next);
    }
  }

  QuiverPresentation q_;
  size_t L0_, L_;
  std::vector<Rel> rels_;
  std::vector<PathInfo> paths_;
  std::vector<std::vector<int>> children_;
  std::vector<char> seeded_;
  std::unordered_map<int, LinComb> rules_;
  std::deque<LinComb> pending_;
};

}  // namespace

StructureAlgebra build_quotient(const QuiverPresentation& q, size_t loewy_bound) {
  QuotientEngine eng(q, loewy_bound);
  eng.run();

  // survivors, in (length, lex) order
  std::vector<int> survivors;
  for (size_t id = 0; id < eng.paths().size(); ++id)
    if (!eng.ruled(id)) survivors.push_back((int)id);
  std::sort(survivors.begin(), survivors.end(),
            [&](int a, int b) { return eng.order_less(a, b); });
  for (int id : survivors)
    if (eng.paths()[id].len() > (int)loewy_bound)
      fail(Errc::SaturationFailure,
           "a path longer than the loewy bound survives; bound too small");

  StructureAlgebra A;
  A.spec_ = q.spec;
  A.vertex_labels_ = q.vertices;
  A.arrows_ = q.arrows;
  A.loewy_bound_ = loewy_bound;

  std::unordered_map<int, int> basis_index;
  for (size_t i = 0; i < survivors.size(); ++i) basis_index[survivors[i]] = (int)i;
  const size_t n = survivors.size();

  A.idempotent_index_.assign(q.vertices.size(), -1);
  A.arrow_basis_index_.assign(q.arrows.size(), -1);
  for (size_t i = 0; i < n; ++i) {
    const PathInfo& p = eng.paths()[survivors[i]];
    A.path_length_.push_back(p.len());
    A.vertex_pair_.emplace_back(p.src, p.dst);
    if (p.arrows.empty()) {
      A.labels_.push_back("e" + q.vertices[p.src]);
      A.idempotent_index_[p.src] = (int)i;
    } else {
      std::string lbl;
      for (size_t j = 0; j < p.arrows.size(); ++j) {
        if (j) lbl += ".";
        lbl += q.arrows[p.arrows[j]].label;
      }
      A.labels_.push_back(lbl);
      if (p.arrows.size() == 1) A.arrow_basis_index_[p.arrows[0]] = (int)i;
    }
  }
  for (int idx : A.idempotent_index_)
    if (idx < 0) fail(Errc::Internal, "trivial path eliminated");
  for (int idx : A.arrow_basis_index_)
    if (idx < 0) fail(Errc::Internal, "arrow eliminated by admissible ideal");

  auto to_coords = [&](const LinComb& comb) {
    StructureAlgebra::SparseVec out;
    for (const auto& [id, c] : comb) {
      auto it = basis_index.find(id);
      if (it == basis_index.end()) fail(Errc::Internal, "reduction left a non-basis path");
      out.emplace_back(it->second, c);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  };

  // right action of each arrow on the basis
  std::vector<std::vector<StructureAlgebra::SparseVec>> act(q.arrows.size());
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    act[a].resize(n);
    for (size_t m = 0; m < n; ++m) {
      const PathInfo& p = eng.paths()[survivors[m]];
      if (p.dst != q.arrows[a].src) continue;
      act[a][m] =
          to_coords(eng.act({{survivors[m], FieldElement::one(q.spec)}}, (int)a));
    }
  }

  // multiplication table: iterated arrow action
  A.mult_.assign(n * n, {});
  auto apply_arrow = [&](const std::vector<FieldElement>& x, size_t a) {
    std::vector<FieldElement> out(n, FieldElement::zero(q.spec));
    for (size_t m = 0; m < n; ++m) {
      if (x[m].is_zero()) continue;
      for (const auto& [idx, c] : act[a][m]) out[idx] = out[idx] + x[m] * c;
    }
    return out;
  };
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      const PathInfo& pj = eng.paths()[survivors[j]];
      std::vector<FieldElement> cur(n, FieldElement::zero(q.spec));
      cur[i] = FieldElement::one(q.spec);
      if (pj.arrows.empty()) {
        // right multiplication by a trivial path projects on its vertex
        std::vector<FieldElement> out(n, FieldElement::zero(q.spec));
        if (A.vertex_pair_[i].second == pj.src) out[i] = cur[i];
        cur = std::move(out);
      } else {
        for (int a : pj.arrows) cur = apply_arrow(cur, (size_t)a);
      }
      StructureAlgebra::SparseVec sv;
      for (size_t m = 0; m < n; ++m)
        if (!cur[m].is_zero()) sv.emplace_back((int)m, cur[m]);
      A.mult_[i * n + j] = std::move(sv);
    }
  }

  A.verify_associativity();

  // nilpotency certificate: rad^(loewy_bound+1) must vanish
  Subspace rad = A.radical();
  Subspace power = rad;
  size_t steps = 1;
  while (power.dim() > 0) {
    if (steps > loewy_bound)
      fail(Errc::SaturationFailure, "radical not nilpotent within the loewy bound");
    std::vector<std::vector<FieldElement>> next;
    for (size_t i = 0; i < power.dim(); ++i)
      for (size_t j = 0; j < rad.dim(); ++j)
        next.push_back(A.multiply(power.basis().row(i), rad.basis().row(j)));
    power = Subspace::span(q.spec, n, next);
    ++steps;
  }
  A.loewy_length_ = steps;
  return A;
}

AlgebraElement StructureAlgebra::zero_element() const {
  return AlgebraElement(dim(), FieldElement::zero(spec_));
}

AlgebraElement StructureAlgebra::unit() const {
  AlgebraElement u = zero_element();
  for (int idx : idempotent_index_) u[idx] = FieldElement::one(spec_);
  return u;
}

AlgebraElement StructureAlgebra::basis_element(size_t i) const {
  AlgebraElement e = zero_element();
  e[i] = FieldElement::one(spec_);
  return e;
}

AlgebraElement StructureAlgebra::multiply(const AlgebraElement& x,
                                          const AlgebraElement& y) const {
  const size_t n = dim();
  if (x.size() != n || y.size() != n) fail(Errc::BadInput, "element size mismatch");
  AlgebraElement out = zero_element();
  for (size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      FieldElement f = x[i] * y[j];
      for (const auto& [m, c] : mult_[i * n + j]) out[m] = out[m] + f * c;
    }
  }
  return out;
}

AlgebraElement StructureAlgebra::power(const AlgebraElement& x, uint64_t e) const {
  AlgebraElement r = unit(), base = x;
  while (e) {
    if (e & 1) r = multiply(r, base);
    base = multiply(base, base);
    e >>= 1;
  }
  return r;
}

void StructureAlgebra::verify_associativity() const {
  const size_t n = dim();
  std::vector<FieldElement> lhs(n, FieldElement::zero(spec_));
  std::vector<FieldElement> rhs(n, FieldElement::zero(spec_));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        std::fill(lhs.begin(), lhs.end(), FieldElement::zero(spec_));
        std::fill(rhs.begin(), rhs.end(), FieldElement::zero(spec_));
        for (const auto& [m, c] : mult_[i * n + j])
          for (const auto& [t, d] : mult_[m * n + k]) lhs[t] = lhs[t] + c * d;
        for (const auto& [m, c] : mult_[j * n + k])
          for (const auto& [t, d] : mult_[i * n + m]) rhs[t] = rhs[t] + c * d;
        if (lhs != rhs)
          fail(Errc::SaturationFailure,
               "multiplication table is not associative; loewy bound too small?");
      }
  // unit and idempotent sanity
  for (size_t i = 0; i < n; ++i) {
    if (multiply(unit(), basis_element(i)) != basis_element(i) ||
        multiply(basis_element(i), unit()) != basis_element(i))
      fail(Errc::Internal, "unit fails");
    auto [s, t] = vertex_pair_[i];
    auto e_s = basis_element(idempotent_index_[s]);
    auto e_t = basis_element(idempotent_index_[t]);
    if (multiply(e_s, multiply(basis_element(i), e_t)) != basis_element(i))
      fail(Errc::Internal, "vertex sandwich fails");
  }
  for (size_t v = 0; v < idempotent_index_.size(); ++v)
    for (size_t w = 0; w < idempotent_index_.size(); ++w) {
      auto prod = multiply(basis_element(idempotent_index_[v]),
                           basis_element(idempotent_index_[w]));
      auto expect = v == w ? basis_element(idempotent_index_[v]) : zero_element();
      if (prod != expect) fail(Errc::Internal, "idempotents not orthogonal");
    }
}

Subspace StructureAlgebra::full_space() const { return Subspace::full(spec_, dim()); }

Subspace StructureAlgebra::commutator_subspace() const {
  const size_t n = dim();
  std::vector<std::vector<FieldElement>> gens;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      std::vector<FieldElement> v(n, FieldElement::zero(spec_));
      bool nonzero = false;
      for (const auto& [m, c] : mult_[i * n + j]) {
        v[m] = v[m] + c;
        nonzero = true;
      }
      for (const auto& [m, c] : mult_[j * n + i]) {
        v[m] = v[m] - c;
        nonzero = true;
      }
      if (nonzero) gens.push_back(std::move(v));
    }
  return Subspace::span(spec_, n, gens);
}

Subspace StructureAlgebra::center() const {
  const size_t n = dim();
  // z central iff for every basis b the row sum_m z_m (b_m b - b b_m) vanishes
  std::vector<std::vector<FieldElement>> rows;
  for (size_t b = 0; b < n; ++b) {
    std::vector<std::vector<FieldElement>> diff(
        n, std::vector<FieldElement>(n, FieldElement::zero(spec_)));
    for (size_t m = 0; m < n; ++m) {
      for (const auto& [t, c] : mult_[m * n + b]) diff[m][t] = diff[m][t] + c;
      for (const auto& [t, c] : mult_[b * n + m]) diff[m][t] = diff[m][t] - c;
    }
    // transpose: one row per output coordinate
    for (size_t t = 0; t < n; ++t) {
      std::vector<FieldElement> row(n, FieldElement::zero(spec_));
      bool nonzero = false;
      for (size_t m = 0; m < n; ++m) {
        row[m] = diff[m][t];
        nonzero = nonzero || !row[m].is_zero();
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) return full_space();
  Matrix k = kernel(Matrix::from_rows(spec_, rows));
  std::vector<std::vector<FieldElement>> basis;
  for (size_t i = 0; i < k.rows(); ++i) basis.push_back(k.row(i));
  return Subspace::span(spec_, n, basis);
}

Subspace StructureAlgebra::radical() const {
  std::vector<std::vector<FieldElement>> gens;
  for (size_t i = 0; i < dim(); ++i)
    if (path_length_[i] >= 1) gens.push_back(basis_element(i));
  return Subspace::span(spec_, dim(), gens);
}

Subspace StructureAlgebra::socle() const {
  const size_t n = dim();
  std::vector<std::vector<FieldElement>> rows;
  for (size_t a = 0; a < arrows_.size(); ++a) {
    int ab = arrow_basis_index_[a];
    for (size_t t = 0; t < n; ++t) {
      std::vector<FieldElement> right(n, FieldElement::zero(spec_));
      std::vector<FieldElement> left(n, FieldElement::zero(spec_));
      bool nr = false, nl = false;
      for (size_t m = 0; m < n; ++m) {
        for (const auto& [tt, c] : mult_[m * n + ab])
          if ((size_t)tt == t) {
            right[m] = right[m] + c;
            nr = true;
          }
        for (const auto& [tt, c] : mult_[ab * n + m])
          if ((size_t)tt == t) {
            left[m] = left[m] + c;
            nl = true;
          }
      }
      if (nr) rows.push_back(std::move(right));
      if (nl) rows.push_back(std::move(left));
    }
  }
  if (rows.empty()) return full_space();
  Matrix k = kernel(Matrix::from_rows(spec_, rows));
  std::vector<std::vector<FieldElement>> basis;
  for (size_t i = 0; i < k.rows(); ++i) basis.push_back(k.row(i));
  return Subspace::span(spec_, n, basis);
}

IntMatrix StructureAlgebra::cartan_matrix() const {
  size_t nv = vertex_labels_.size();
  IntMatrix c(nv, nv);
  for (size_t i = 0; i < dim(); ++i) {
    auto [s, t] = vertex_pair_[i];
    c(s, t) += 1;
  }
  return c;
}

std::string StructureAlgebra::element_to_string(const AlgebraElement& x) const {
  std::string out;
  for (size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (!x[i].is_one()) {
      std::string c = x[i].to_string();
      bool wrap = c.find('+') != std::string::npos || c.find('/') != std::string::npos;
      out += wrap ? "(" + c + ")*" : c + "*";
    }
    out += labels_[i];
  }
  return out.empty() ? "0" : out;
}

namespace {

// parser for path monomials and integer-coefficient sums over an algebra
struct PathExprParser {
  const StructureAlgebra& A;
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void err(const std::string& m) {
    fail(Errc::BadInput, m + " at " + std::to_string(i) + " in '" + s + "'");
  }

  AlgebraElement parse_sum() {
    AlgebraElement v = eat('-') ? negate(parse_term()) : parse_term();
    for (;;) {
      if (eat('+')) {
        auto w = parse_term();
        for (size_t k = 0; k < v.size(); ++k) v[k] = v[k] + w[k];
      } else if (eat('-')) {
        auto w = parse_term();
        for (size_t k = 0; k < v.size(); ++k) v[k] = v[k] - w[k];
      } else {
        return v;
      }
    }
  }

  AlgebraElement negate(AlgebraElement v) {
    for (auto& c : v) c = -c;
    return v;
  }

  AlgebraElement parse_term() {
    skip();
    // optional integer coefficient
    int64_t coeff = 1;
    size_t save = i;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      skip();
      if (i < s.size() && s[i] == '*') {
        coeff = std::stoll(s.substr(start, i - start));
        ++i;
      } else {
        i = save;  // bare "1" is the unit monomial
      }
    }
    AlgebraElement v = parse_monomial();
    if (coeff != 1) {
      FieldElement f = FieldElement::from_integer(A.spec(), coeff);
      for (auto& c : v) c = c * f;
    }
    return v;
  }

  AlgebraElement parse_monomial() {
    AlgebraElement v = parse_factor();
    while (eat('.')) {
      auto w = parse_factor();
      v = A.multiply(v, w);
    }
    return v;
  }

  AlgebraElement parse_factor() {
    AlgebraElement base = parse_atom();
    skip();
    if (i < s.size() && s[i] == '^') {
      ++i;
      skip();
      bool brace = eat('{');
      size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (start == i) err("expected exponent");
      uint64_t e = std::stoull(s.substr(start, i - start));
      if (brace && !eat('}')) err("expected '}'");
      return A.power(base, e);
    }
    return base;
  }

  AlgebraElement parse_atom() {
    skip();
    if (i >= s.size()) err("unexpected end");
    if (s[i] == '(') {
      ++i;
      AlgebraElement v = parse_monomial();
      if (!eat(')')) err("expected ')'");
      return v;
    }
    if (s[i] == '1' && (i + 1 == s.size() || !std::isalnum(static_cast<unsigned char>(s[i + 1])))) {
      ++i;
      return A.unit();
    }
    if (!std::isalpha(static_cast<unsigned char>(s[i]))) err("expected path factor");
    size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
    std::string name = s.substr(start, i - start);
    for (size_t a = 0; a < A.arrows().size(); ++a)
      if (A.arrows()[a].label == name) return A.basis_element(A.arrow_basis_index(a));
    if (name.size() > 1 && name[0] == 'e') {
      std::string vl = name.substr(1);
      for (size_t v = 0; v < A.vertex_labels().size(); ++v)
        if (A.vertex_labels()[v] == vl) return A.basis_element(A.idempotent_index(v));
    }
    err("unknown label '" + name + "'");
  }
};

}  // namespace

AlgebraElement eval_path_expr(const StructureAlgebra& A, const std::string& expr) {
  PathExprParser p{A, expr};
  auto v = p.parse_sum();
  p.skip();
  if (p.i != expr.size()) p.err("trailing input");
  return v;
}

AlgebraElement eval_terms(const StructureAlgebra& A,
                          const std::vector<std::pair<FieldElement, std::string>>& terms) {
  AlgebraElement out = A.zero_element();
  for (const auto& [coeff, mono] : terms) {
    AlgebraElement v = eval_path_expr(A, mono);
    for (size_t i = 0; i < out.size(); ++i) out[i] = out[i] + coeff * v[i];
  }
  return out;
}

FieldSpec parse_field_tag(const std::string& tag) {
  auto colon = tag.find(':');
  if (colon == std::string::npos) fail(Errc::BadInput, "field tag must be kind:value");
  std::string kind = tag.substr(0, colon);
  int64_t v = 0;
  try {
    v = std::stoll(tag.substr(colon + 1));
  } catch (...) {
    fail(Errc::BadInput, "bad field tag number");
  }
  if (kind == "rat") return FieldSpec::rational_function(v);
  if (kind != "gf") fail(Errc::BadInput, "unknown field kind '" + kind + "'");
  // factor v = p^m
  int64_t p = 2;
  while (p * p <= v && v % p != 0) ++p;
  if (v % p != 0) p = v;
  int64_t q = v;
  int m = 0;
  while (q > 1 && q % p == 0) {
    q /= p;
    ++m;
  }
  if (q != 1 || m == 0) fail(Errc::BadInput, "field size is not a prime power");
  if (m == 1) return FieldSpec::prime(p);
  // small built-in irreducible moduli; checked again at construction
  static const std::map<std::pair<int64_t, int>, std::vector<int64_t>> moduli = {
      {{2, 2}, {1, 1, 1}},    {{2, 3}, {1, 1, 0, 1}}, {{2, 4}, {1, 1, 0, 0, 1}},
      {{3, 2}, {1, 0, 1}},    {{3, 3}, {1, 2, 0, 1}}, {{5, 2}, {1, 1, 1}},
      {{7, 2}, {1, 0, 1}},
  };
  auto it = moduli.find({p, m});
  if (it == moduli.end())
    fail(Errc::BadInput, "no built-in modulus for GF(" + std::to_string(v) +
                             "); build the extension spec directly");
  return FieldSpec::extension(p, Poly{it->second});
}

namespace {

std::vector<std::string> split_top_level_terms(const std::string& side,
                                               std::vector<int>& signs) {
  std::vector<std::string> terms;
  std::string cur;
  int depth = 0;
  int sign = 1;
  for (size_t i = 0; i < side.size(); ++i) {
    char ch = side[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == '+' || ch == '-') && !cur.empty()) {
      terms.push_back(cur);
      signs.push_back(sign);
      cur.clear();
      sign = ch == '-' ? -1 : 1;
      continue;
    }
    if (depth == 0 && ch == '-' && cur.empty()) {
      sign = -sign;
      continue;
    }
    cur += ch;
  }
  if (!cur.empty()) {
    terms.push_back(cur);
    signs.push_back(sign);
  }
  return terms;
}

// parse one relation monomial into an arrow sequence; powers allowed
std::vector<int> parse_rel_monomial(const QuiverPresentation& q, const std::string& text) {
  struct P {
    const QuiverPresentation& q;
    const std::string& s;
    size_t i = 0;
    void skip() {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
      skip();
      if (i < s.size() && s[i] == c) {
        ++i;
        return true;
      }
      return false;
    }
    [[noreturn]] void err(const std::string& m) {
      fail(Errc::BadInput, m + " in relation monomial '" + s + "'");
    }
    std::vector<int> seq() {
      std::vector<int> v = factor();
      while (eat('.')) {
        auto w = factor();
        v.insert(v.end(), w.begin(), w.end());
      }
      return v;
    }
    std::vector<int> factor() {
      std::vector<int> base = atom();
      skip();
      if (i < s.size() && s[i] == '^') {
        ++i;
        bool brace = eat('{');
        skip();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) err("expected exponent");
        uint64_t e = std::stoull(s.substr(start, i - start));
        if (brace && !eat('}')) err("expected '}'");
        std::vector<int> out;
        for (uint64_t k = 0; k < e; ++k) out.insert(out.end(), base.begin(), base.end());
        return out;
      }
      return base;
    }
    std::vector<int> atom() {
      skip();
      if (i >= s.size()) err("unexpected end");
      if (s[i] == '(') {
        ++i;
        auto v = seq();
        if (!eat(')')) err("expected ')'");
        return v;
      }
      if (!std::isalpha(static_cast<unsigned char>(s[i]))) err("expected arrow label");
      size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string name = s.substr(start, i - start);
      int a = q.arrow_index(name);
      if (a < 0) err("unknown arrow '" + name + "'");
      return {a};
    }
  } p{q, text};
  auto v = p.seq();
  p.skip();
  if (p.i != text.size()) p.err("trailing input");
  return v;
}

QuiverPresentation::PathSum parse_rel_side(const QuiverPresentation& q, const FieldSpec& spec,
                                           std::string side) {
  // trim
  auto trim = [](std::string s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  side = trim(side);
  QuiverPresentation::PathSum sum;
  if (side == "0") return sum;
  std::vector<int> signs;
  auto terms = split_top_level_terms(side, signs);
  for (size_t t = 0; t < terms.size(); ++t) {
    std::string term = trim(terms[t]);
    // a top-level '*' separates a field coefficient from the monomial
    int depth = 0;
    size_t star = std::string::npos;
    for (size_t i = 0; i < term.size(); ++i) {
      if (term[i] == '(') ++depth;
      if (term[i] == ')') --depth;
      if (term[i] == '*' && depth == 0) {
        star = i;
        break;
      }
    }
    FieldElement coeff = FieldElement::one(spec);
    std::string mono = term;
    if (star != std::string::npos) {
      std::string ctext = trim(term.substr(0, star));
      if (ctext.size() >= 2 && ctext.front() == '(' && ctext.back() == ')')
        ctext = ctext.substr(1, ctext.size() - 2);
      coeff = parse_element(spec, ctext);
      mono = trim(term.substr(star + 1));
    }
    if (signs[t] < 0) coeff = -coeff;
    sum.emplace_back(coeff, parse_rel_monomial(q, mono));
  }
  return sum;
}

}  // namespace

ParsedPresentation parse_presentation(const std::string& text) {
  ParsedPresentation out;
  QuiverPresentation& q = out.presentation;
  bool have_field = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<std::tuple<int, std::string, std::string>> pending_rels;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    auto bad = [&](const std::string& m) {
      fail(Errc::BadInput, "line " + std::to_string(lineno) + ": " + m);
    };
    if (word == "field") {
      std::string tag;
      if (!(ls >> tag)) bad("expected field tag");
      q.spec = parse_field_tag(tag);
      have_field = true;
    } else if (word == "vertex") {
      std::string v;
      while (ls >> v) {
        if (q.vertex_index(v) >= 0) bad("duplicate vertex '" + v + "'");
        q.vertices.push_back(v);
      }
    } else if (word == "arrow") {
      std::string label, s, d;
      if (!(ls >> label >> s >> d)) bad("expected: arrow <label> <src> <dst>");
      int si = q.vertex_index(s), di = q.vertex_index(d);
      if (si < 0 || di < 0) bad("unknown vertex in arrow");
      if (q.arrow_index(label) >= 0) bad("duplicate arrow '" + label + "'");
      q.arrows.push_back({label, si, di});
    } else if (word == "rel") {
      std::string rest;
      std::getline(ls, rest);
      auto eq = rest.find('=');
      if (eq == std::string::npos) bad("relation needs '='");
      pending_rels.emplace_back(lineno, rest.substr(0, eq), rest.substr(eq + 1));
    } else if (word == "loewy") {
      size_t b = 0;
      if (!(ls >> b) || b < 1) bad("expected: loewy <bound>");
      out.loewy_bound = b;
    } else {
      bad("unknown directive '" + word + "'");
    }
  }
  if (!have_field) fail(Errc::BadInput, "presentation needs a 'field' line");
  for (auto& [line, lhs, rhs] : pending_rels) {
    try {
      QuiverPresentation::Relation r;
      r.lhs = parse_rel_side(q, q.spec, lhs);
      r.rhs = parse_rel_side(q, q.spec, rhs);
      q.relations.push_back(std::move(r));
    } catch (const Error& e) {
      fail(e.code(), "line " + std::to_string(line) + ": " + e.what());
    }
  }
  q.validate();
  return out;
}

}  // namespace kuelsh
