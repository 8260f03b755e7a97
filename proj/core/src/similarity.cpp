#include "corpkit/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "corpkit/error.hpp"
#include "corpkit/io_util.hpp"

namespace corpkit {

FeatureSet feature_union(
    const std::vector<std::vector<std::string>>& top_lists) {
  FeatureSet features;
  for (const auto& list : top_lists)
    features.insert(features.end(), list.begin(), list.end());
  std::sort(features.begin(), features.end());
  features.erase(std::unique(features.begin(), features.end()),
                 features.end());
  return features;
}

ProfileVector profile_vector(const TopProfile& profile,
                             const FeatureSet& features) {
  std::unordered_map<std::string_view, double> in_top;
  in_top.reserve(profile.top.size());
  for (const auto& [word, pm] : profile.top) in_top.emplace(word, pm);

  ProfileVector vec;
  vec.corpus_name = profile.corpus_name;
  vec.values.assign(features.size(), 0.0);
  for (std::size_t i = 0; i < features.size(); ++i) {
    auto it = in_top.find(features[i]);
    if (it != in_top.end()) vec.values[i] = it->second;
  }
  return vec;
}

double cosine_pow(std::span<const double> u, std::span<const double> v,
                  int power) {
  if (u.size() != v.size())
    throw Error("cosine: vectors differ in length");
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) throw Error("empty profile");
  double base = dot / (std::sqrt(uu) * std::sqrt(vv));
  // Nonnegative inputs keep the base in [0,1] up to rounding.
  if (base > 1.0) base = 1.0;
  if (base < 0.0) base = 0.0;
  double result = 1.0;
  for (int i = 0; i < power; ++i) result *= base;
  return result;
}

SimilarityMatrix similarity_matrix(const std::vector<ProfileVector>& vectors,
                                   int power, int threads) {
  if (vectors.size() < 2)
    throw Error("similarity matrix: need at least 2 profiles");
  const std::size_t n = vectors.size();
  for (const ProfileVector& v : vectors) {
    if (v.values.size() != vectors[0].values.size())
      throw Error("similarity matrix: profile vectors differ in length");
  }

  SimilarityMatrix m;
  m.power = power;
  m.names.reserve(n);
  for (const ProfileVector& v : vectors) m.names.push_back(v.corpus_name);
  m.values.assign(n * n, 1.0);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  parallel_for(pairs.size(), threads, [&](std::size_t p) {
    auto [i, j] = pairs[p];
    double sim;
    try {
      sim = cosine_pow(vectors[i].values, vectors[j].values, power);
    } catch (const Error& e) {
      throw Error(std::string(e.what()) + " (" + vectors[i].corpus_name +
                  " vs " + vectors[j].corpus_name + ")");
    }
    m.values[i * n + j] = sim;
    m.values[j * n + i] = sim;
  });
  return m;
}

double row_average(const SimilarityMatrix& m, std::size_t i) {
  const std::size_t n = m.size();
  if (n < 2) throw Error("row average: matrix must be at least 2x2");
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i) sum += m.at(i, j);
  }
  return sum / static_cast<double>(n - 1);
}

double global_average(const SimilarityMatrix& m) {
  const std::size_t n = m.size();
  if (n < 2) throw Error("global average: matrix must be at least 2x2");
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      sum += m.at(i, j);
      ++pairs;
    }
  return sum / static_cast<double>(pairs);
}

std::vector<std::string> uniqueness_ranking(const SimilarityMatrix& m) {
  std::vector<std::pair<double, std::string>> ranked;
  ranked.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    ranked.emplace_back(row_average(m, i), m.names[i]);
  std::sort(ranked.begin(), ranked.end());
  std::vector<std::string> names;
  names.reserve(ranked.size());
  for (auto& [avg, name] : ranked) names.push_back(std::move(name));
  return names;
}

namespace {

std::string dot_quote(std::string_view name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

void export_graph(const SimilarityMatrix& m, std::ostream& out) {
  out << "graph corpus_similarity {\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << "  " << dot_quote(m.names[i]) << " [avg="
        << format_fixed(row_average(m, i), 6) << "];\n";
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      out << "  " << dot_quote(m.names[i]) << " -- " << dot_quote(m.names[j])
          << " [distance=" << format_fixed(1.0 - m.at(i, j), 6) << "];\n";
    }
  }
  out << "}\n";
}

void write_matrix_csv(const SimilarityMatrix& m, std::ostream& out) {
  out << "corpus";
  for (const std::string& name : m.names) out << ',' << csv_field(name);
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << csv_field(m.names[i]);
    for (std::size_t j = 0; j < m.size(); ++j)
      out << ',' << format_double(m.at(i, j));
    out << '\n';
  }
}

void write_ranking_csv(const SimilarityMatrix& m, std::ostream& out) {
  std::unordered_map<std::string_view, double> averages;
  for (std::size_t i = 0; i < m.size(); ++i)
    averages.emplace(m.names[i], row_average(m, i));
  out << "rank,corpus,avg_similarity\n";
  std::vector<std::string> order = uniqueness_ranking(m);
  for (std::size_t r = 0; r < order.size(); ++r) {
    out << (r + 1) << ',' << csv_field(order[r]) << ','
        << format_double(averages.at(order[r])) << '\n';
  }
}

}  // namespace corpkit
