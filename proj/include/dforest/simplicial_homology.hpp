#pragma once

#include <vector>

#include "dforest/chain_complex.hpp"
#include "dforest/complex.hpp"

namespace dforest {

/// Simplicial chain complex with basis faces(d) in stored order and
/// boundary sum_i (-1)^i (f minus its i-th vertex). With `augmented` the
/// empty face sits in degree -1 and the homology is reduced.
inline ChainComplexZ chain_complex_of(const SimplicialComplex& k, bool augmented = true) {
  const int lo = augmented ? -1 : 0;
  std::vector<std::size_t> ranks;
  std::vector<SparseMatrix> bounds;
  for (int d = lo; d <= k.dimension(); ++d) ranks.push_back(k.face_count(d));
  if (ranks.empty()) return ChainComplexZ(lo, {}, {});
  for (int d = lo + 1; d <= k.dimension(); ++d) {
    SparseMatrix m(k.face_count(d - 1), k.face_count(d));
    const auto& faces = k.faces(d);
    for (std::size_t j = 0; j < faces.size(); ++j) {
      SparseMatrix::Column col;
      for (std::size_t i = 0; i < faces[j].size(); ++i) {
        const long row = k.index_of(SimplicialComplex::without(faces[j], i));
        if (row < 0) throw StructuralError("complex is not closed under taking subfaces");
        col.push_back({static_cast<int>(row), (i % 2 == 0) ? 1 : -1});
      }
      m.set_column(j, std::move(col));
    }
    bounds.push_back(std::move(m));
  }
  return ChainComplexZ(lo, std::move(ranks), std::move(bounds));
}

/// Reduced integer homology of a simplicial complex.
inline Homology reduced_homology(const SimplicialComplex& k) { return homology(chain_complex_of(k)); }

/// H_*(K, L) for a subcomplex L of K on the same vertex set; (K, {∅}) gives
/// unreduced homology of K.
inline Homology relative_homology(const SimplicialComplex& k, const SimplicialComplex& l) {
  for (int d = 0; d <= l.dimension(); ++d)
    for (const auto& f : l.faces(d))
      if (!k.contains(f)) throw InputError("relative homology: L is not a subcomplex of K");
  auto c = chain_complex_of(k, true);
  std::vector<std::vector<bool>> sub;
  for (int d = -1; d <= k.dimension(); ++d) {
    std::vector<bool> flags;
    for (const auto& f : k.faces(d)) flags.push_back(l.contains(f));
    sub.push_back(std::move(flags));
  }
  return relative_homology(c, sub);
}

}  // namespace dforest
