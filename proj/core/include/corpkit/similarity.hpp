#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "corpkit/freq.hpp"

namespace corpkit {

// Union of the corpora's top-k word lists, sorted lexicographically (by
// UTF-8 bytes, i.e. codepoint order). The order is a serialization choice
// only; cosine similarity cannot depend on it.
using FeatureSet = std::vector<std::string>;

FeatureSet feature_union(const std::vector<std::vector<std::string>>& top_lists);

// Per-million frequencies aligned to a FeatureSet. A word scores its
// per-million value only when it is in this corpus's own top-k list;
// everything else is 0, including words the corpus contains at lower ranks.
struct ProfileVector {
  std::string corpus_name;
  std::vector<double> values;
};

ProfileVector profile_vector(const TopProfile& profile,
                             const FeatureSet& features);

// (u·v / ‖u‖‖v‖)^p, computed by iterated multiplication. Inputs are
// nonnegative, so the result lies in [0,1]. Zero vectors are an error
// ("empty profile").
double cosine_pow(std::span<const double> u, std::span<const double> v,
                  int power = 10);

struct SimilarityMatrix {
  std::vector<std::string> names;
  std::vector<double> values;  // row-major, diagonal fixed at 1
  int power = 10;

  double at(std::size_t i, std::size_t j) const {
    return values[i * names.size() + j];
  }
  std::size_t size() const { return names.size(); }
};

// All unordered pairs computed once and mirrored. Requires >= 2 vectors of
// equal length.
SimilarityMatrix similarity_matrix(const std::vector<ProfileVector>& vectors,
                                   int power = 10, int threads = 1);

// Row mean excluding the diagonal.
double row_average(const SimilarityMatrix& m, std::size_t i);
// Mean over all off-diagonal unordered pairs.
double global_average(const SimilarityMatrix& m);

// Corpus names ascending by row average (most unique first); ties
// lexicographic.
std::vector<std::string> uniqueness_ranking(const SimilarityMatrix& m);

// Complete weighted graph in DOT format: node attribute avg (row average),
// edge attribute distance = 1 − similarity, six decimals, deterministic
// ordering. Layout is left to external tools.
void export_graph(const SimilarityMatrix& m, std::ostream& out);

// CSV with a header row and column of corpus names; full-precision values.
void write_matrix_csv(const SimilarityMatrix& m, std::ostream& out);

// CSV: rank,corpus,avg_similarity in uniqueness order.
void write_ranking_csv(const SimilarityMatrix& m, std::ostream& out);

}  // namespace corpkit
