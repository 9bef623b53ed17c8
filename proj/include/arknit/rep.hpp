#pragma once

// Quiver representations over an exact field: projectives, injectives,
// simples, morphisms with checked naturality, Hom spaces, first extensions,
// the Euler form, and direct sums with coordinate bookkeeping.
//
// A representation assigns to each vertex a finite-dimensional column space
// and to each arrow a matrix acting source-to-target. The projective at i
// has the paths leaving i as its basis; the injective at i has the paths
// arriving at i. All bases are in (length, lex) path order.

#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "arknit/matrix.hpp"
#include "arknit/quiver.hpp"

namespace arknit {

template <class F>
class Rep {
 public:
  using K = typename F::Elem;

  Rep(Quiver q, F field, std::vector<int> dims)
      : q_(std::move(q)), field_(std::move(field)), dims_(std::move(dims)) {
    ARKNIT_CHECK(static_cast<int>(dims_.size()) == q_.n_vertices(),
                 "dimension vector length mismatch");
    for (int d : dims_) ARKNIT_CHECK(d >= 0, "negative dimension");
    maps_.reserve(q_.n_arrows());
    for (int a = 0; a < q_.n_arrows(); ++a)
      maps_.emplace_back(field_, dims_[q_.arrow(a).tgt],
                         dims_[q_.arrow(a).src]);
  }

  static Rep zero(Quiver q, F field) {
    std::vector<int> dims(q.n_vertices(), 0);
    return Rep(std::move(q), std::move(field), std::move(dims));
  }

  const Quiver& quiver() const { return q_; }
  const F& field() const { return field_; }
  int dim(int v) const { return dims_.at(v); }
  const std::vector<int>& dims() const { return dims_; }
  int total_dim() const {
    return std::accumulate(dims_.begin(), dims_.end(), 0);
  }
  bool is_zero() const { return total_dim() == 0; }

  Matrix<F>& map(int a) { return maps_.at(a); }
  const Matrix<F>& map(int a) const { return maps_.at(a); }

  /// Matrix of the path acting on this representation; the path's first
  /// arrow is applied first. The empty path is the identity at `start`.
  Matrix<F> path_action(int start, const Path& p) const {
    Matrix<F> m = Matrix<F>::identity(field_, dims_.at(start));
    int cur = start;
    for (int a : p) {
      ARKNIT_CHECK(q_.arrow(a).src == cur, "path does not chain");
      m = maps_.at(a) * m;
      cur = q_.arrow(a).tgt;
    }
    return m;
  }

  bool operator==(const Rep& o) const {
    return dims_ == o.dims_ && maps_ == o.maps_;
  }
  bool operator!=(const Rep& o) const { return !(*this == o); }

 private:
  Quiver q_;
  F field_;
  std::vector<int> dims_;
  std::vector<Matrix<F>> maps_;
};

template <class F>
Rep<F> simple_rep(const Quiver& q, const F& field, int v) {
  std::vector<int> dims(q.n_vertices(), 0);
  dims[v] = 1;
  return Rep<F>(q, field, std::move(dims));
}

/// P_i: basis at w is the set of paths i -> w; an arrow acts by appending
/// itself to the traversal sequence.
template <class F>
Rep<F> projective_rep(const Quiver& q, const F& field, int i) {
  PathsFrom paths = paths_from(q, i);
  std::vector<int> dims(q.n_vertices());
  for (int w = 0; w < q.n_vertices(); ++w) dims[w] = paths.count(w);
  Rep<F> rep(q, field, std::move(dims));
  for (int a = 0; a < q.n_arrows(); ++a) {
    int s = q.arrow(a).src, t = q.arrow(a).tgt;
    for (int j = 0; j < paths.count(s); ++j) {
      Path ext = paths.by_target[s][j];
      ext.push_back(a);
      rep.map(a).at(paths.index_of(t, ext), j) = field.one();
    }
  }
  return rep;
}

/// I_i: basis at w is the set of paths w -> i; an arrow acts by the
/// transpose of prepending itself.
template <class F>
Rep<F> injective_rep(const Quiver& q, const F& field, int i) {
  PathsInto paths = paths_into(q, i);
  std::vector<int> dims(q.n_vertices());
  for (int w = 0; w < q.n_vertices(); ++w) dims[w] = paths.count(w);
  Rep<F> rep(q, field, std::move(dims));
  for (int a = 0; a < q.n_arrows(); ++a) {
    int s = q.arrow(a).src, t = q.arrow(a).tgt;
    for (int j = 0; j < paths.count(t); ++j) {
      Path ext = paths.by_source[t][j];
      ext.insert(ext.begin(), a);
      rep.map(a).at(j, paths.index_of(s, ext)) = field.one();
    }
  }
  return rep;
}

template <class F>
class RepMorphism {
 public:
  using K = typename F::Elem;

  RepMorphism(Rep<F> dom, Rep<F> cod, std::vector<Matrix<F>> mats)
      : dom_(std::move(dom)), cod_(std::move(cod)), mats_(std::move(mats)) {
    const Quiver& q = dom_.quiver();
    ARKNIT_CHECK(static_cast<int>(mats_.size()) == q.n_vertices(),
                 "one matrix per vertex required");
    for (int v = 0; v < q.n_vertices(); ++v) {
      ARKNIT_CHECK(mats_[v].rows() == cod_.dim(v) &&
                       mats_[v].cols() == dom_.dim(v),
                   "morphism block has wrong shape at vertex " + q.vertex_id(v));
    }
    for (int a = 0; a < q.n_arrows(); ++a) {
      int s = q.arrow(a).src, t = q.arrow(a).tgt;
      ARKNIT_CHECK(cod_.map(a) * mats_[s] == mats_[t] * dom_.map(a),
                   "morphism is not natural at arrow " + q.arrow(a).id);
    }
  }

  static RepMorphism zero(Rep<F> dom, Rep<F> cod) {
    std::vector<Matrix<F>> mats;
    for (int v = 0; v < dom.quiver().n_vertices(); ++v)
      mats.emplace_back(dom.field(), cod.dim(v), dom.dim(v));
    return RepMorphism(std::move(dom), std::move(cod), std::move(mats));
  }

  static RepMorphism identity(Rep<F> m) {
    std::vector<Matrix<F>> mats;
    for (int v = 0; v < m.quiver().n_vertices(); ++v)
      mats.push_back(Matrix<F>::identity(m.field(), m.dim(v)));
    Rep<F> copy = m;
    return RepMorphism(std::move(copy), std::move(m), std::move(mats));
  }

  const Rep<F>& dom() const { return dom_; }
  const Rep<F>& cod() const { return cod_; }
  const Matrix<F>& mat(int v) const { return mats_.at(v); }

  /// Composition this . other (other applied first).
  RepMorphism operator*(const RepMorphism& other) const {
    ARKNIT_CHECK(dom_ == other.cod_, "composition domains do not meet");
    std::vector<Matrix<F>> mats;
    for (size_t v = 0; v < mats_.size(); ++v)
      mats.push_back(mats_[v] * other.mats_[v]);
    return RepMorphism(other.dom_, cod_, std::move(mats));
  }

  RepMorphism operator+(const RepMorphism& other) const {
    ARKNIT_CHECK(dom_ == other.dom_ && cod_ == other.cod_,
                 "sum of morphisms with different ends");
    std::vector<Matrix<F>> mats;
    for (size_t v = 0; v < mats_.size(); ++v)
      mats.push_back(mats_[v] + other.mats_[v]);
    return RepMorphism(dom_, cod_, std::move(mats));
  }

  RepMorphism operator-(const RepMorphism& other) const {
    return *this + other.scaled(-dom_.field().one());
  }

  RepMorphism scaled(const K& s) const {
    std::vector<Matrix<F>> mats;
    for (const Matrix<F>& m : mats_) mats.push_back(m.scaled(s));
    return RepMorphism(dom_, cod_, std::move(mats));
  }

  bool is_zero() const {
    for (const Matrix<F>& m : mats_)
      if (!m.is_zero()) return false;
    return true;
  }

  bool operator==(const RepMorphism& o) const { return mats_ == o.mats_; }
  bool operator!=(const RepMorphism& o) const { return !(*this == o); }

 private:
  Rep<F> dom_, cod_;
  std::vector<Matrix<F>> mats_;
};

namespace detail {

/// Rows: one naturality constraint per arrow entry. Columns: entries of the
/// per-vertex blocks H_v, vertex-major then row-major.
template <class F>
Matrix<F> hom_constraint_matrix(const Rep<F>& m, const Rep<F>& n) {
  const Quiver& q = m.quiver();
  const F& f = m.field();
  std::vector<int> base(q.n_vertices() + 1, 0);
  for (int v = 0; v < q.n_vertices(); ++v)
    base[v + 1] = base[v] + n.dim(v) * m.dim(v);
  int cols = base[q.n_vertices()];
  int rows = 0;
  for (int a = 0; a < q.n_arrows(); ++a)
    rows += n.dim(q.arrow(a).tgt) * m.dim(q.arrow(a).src);
  Matrix<F> d(f, rows, cols);
  int row = 0;
  for (int a = 0; a < q.n_arrows(); ++a) {
    int s = q.arrow(a).src, t = q.arrow(a).tgt;
    for (int r = 0; r < n.dim(t); ++r)
      for (int c = 0; c < m.dim(s); ++c) {
        // (N_a H_s - H_t M_a)[r, c] = 0
        for (int k = 0; k < n.dim(s); ++k)
          d.at(row, base[s] + k * m.dim(s) + c) += n.map(a).at(r, k);
        for (int k = 0; k < m.dim(t); ++k)
          d.at(row, base[t] + r * m.dim(t) + k) -= m.map(a).at(k, c);
        ++row;
      }
  }
  return d;
}

}  // namespace detail

template <class F>
int hom_dim(const Rep<F>& m, const Rep<F>& n) {
  Matrix<F> d = detail::hom_constraint_matrix(m, n);
  return d.cols() - rref(d).rank();
}

template <class F>
std::vector<RepMorphism<F>> hom_space(const Rep<F>& m, const Rep<F>& n) {
  const Quiver& q = m.quiver();
  const F& f = m.field();
  Matrix<F> d = detail::hom_constraint_matrix(m, n);
  Matrix<F> ker = kernel_basis(d);
  std::vector<RepMorphism<F>> basis;
  for (int j = 0; j < ker.cols(); ++j) {
    std::vector<Matrix<F>> mats;
    int pos = 0;
    for (int v = 0; v < q.n_vertices(); ++v) {
      Matrix<F> h(f, n.dim(v), m.dim(v));
      for (int r = 0; r < n.dim(v); ++r)
        for (int c = 0; c < m.dim(v); ++c) h.at(r, c) = ker.at(pos++, j);
      mats.push_back(std::move(h));
    }
    basis.emplace_back(m, n, std::move(mats));
  }
  return basis;
}

/// dim Ext^1(M, N): cokernel of the same naturality-defect map whose kernel
/// is Hom(M, N), read off the standard projective resolution of M.
template <class F>
int ext1_dim(const Rep<F>& m, const Rep<F>& n) {
  Matrix<F> d = detail::hom_constraint_matrix(m, n);
  return d.rows() - rref(d).rank();
}

/// <d, e> = sum_v d_v e_v - sum_{a: s->t} d_s e_t.
inline long long euler_form(const Quiver& q, const std::vector<int>& d,
                            const std::vector<int>& e) {
  long long out = 0;
  for (int v = 0; v < q.n_vertices(); ++v)
    out += static_cast<long long>(d.at(v)) * e.at(v);
  for (int a = 0; a < q.n_arrows(); ++a)
    out -= static_cast<long long>(d.at(q.arrow(a).src)) * e.at(q.arrow(a).tgt);
  return out;
}

/// Direct sum with remembered summand layout.
template <class F>
struct DirectSum {
  Rep<F> rep;
  std::vector<Rep<F>> parts;
  std::vector<std::vector<int>> offset;  // offset[k][v]

  RepMorphism<F> inclusion(int k) const {
    const Quiver& q = rep.quiver();
    std::vector<Matrix<F>> mats;
    for (int v = 0; v < q.n_vertices(); ++v) {
      Matrix<F> m(rep.field(), rep.dim(v), parts[k].dim(v));
      for (int j = 0; j < parts[k].dim(v); ++j)
        m.at(offset[k][v] + j, j) = rep.field().one();
      mats.push_back(std::move(m));
    }
    return RepMorphism<F>(parts[k], rep, std::move(mats));
  }

  RepMorphism<F> projection(int k) const {
    const Quiver& q = rep.quiver();
    std::vector<Matrix<F>> mats;
    for (int v = 0; v < q.n_vertices(); ++v) {
      Matrix<F> m(rep.field(), parts[k].dim(v), rep.dim(v));
      for (int j = 0; j < parts[k].dim(v); ++j)
        m.at(j, offset[k][v] + j) = rep.field().one();
      mats.push_back(std::move(m));
    }
    return RepMorphism<F>(rep, parts[k], std::move(mats));
  }
};

template <class F>
DirectSum<F> direct_sum(const Quiver& q, const F& field,
                        std::vector<Rep<F>> parts) {
  std::vector<int> dims(q.n_vertices(), 0);
  std::vector<std::vector<int>> offset;
  for (const Rep<F>& p : parts) {
    offset.push_back(dims);
    for (int v = 0; v < q.n_vertices(); ++v) dims[v] += p.dim(v);
  }
  Rep<F> sum(q, field, dims);
  for (int a = 0; a < q.n_arrows(); ++a) {
    int s = q.arrow(a).src, t = q.arrow(a).tgt;
    for (size_t k = 0; k < parts.size(); ++k) {
      const Matrix<F>& block = parts[k].map(a);
      for (int r = 0; r < block.rows(); ++r)
        for (int c = 0; c < block.cols(); ++c)
          sum.map(a).at(offset[k][t] + r, offset[k][s] + c) = block.at(r, c);
    }
  }
  return DirectSum<F>{std::move(sum), std::move(parts), std::move(offset)};
}

}  // namespace arknit
