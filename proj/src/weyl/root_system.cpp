#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "pwq/error.hpp"
#include "pwq/weyl.hpp"

namespace pwq::weyl {

namespace {

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

Eigen::MatrixXd reflection_matrix(const Eigen::VectorXd& alpha) {
  const auto n = alpha.size();
  return Eigen::MatrixXd::Identity(n, n) - 2.0 * alpha * alpha.transpose() / alpha.squaredNorm();
}

void close_positive_roots(RootSystemData& rs) {
  std::set<IntVec> seen;
  std::deque<IntVec> queue;
  for (int i = 0; i < rs.rank; ++i) {
    IntVec e(static_cast<std::size_t>(rs.rank), 0);
    e[static_cast<std::size_t>(i)] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    const IntVec beta = queue.front();
    queue.pop_front();
    for (int i = 0; i < rs.rank; ++i) {
      const IntVec img = rs.reflect(i, beta);
      if (std::all_of(img.begin(), img.end(), [](int c) { return c >= 0; }) && seen.insert(img).second) {
        queue.push_back(img);
      }
    }
  }
  rs.positive_roots.assign(seen.begin(), seen.end());
  std::sort(rs.positive_roots.begin(), rs.positive_roots.end(), [](const IntVec& a, const IntVec& b) {
    const int ha = std::accumulate(a.begin(), a.end(), 0);
    const int hb = std::accumulate(b.begin(), b.end(), 0);
    return ha != hb ? ha < hb : a > b;
  });
}

}  // namespace

Eigen::VectorXd RootSystemData::realize(const IntVec& coeffs) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(simple_roots.front().size());
  for (int i = 0; i < rank; ++i) v += coeffs[static_cast<std::size_t>(i)] * simple_roots[static_cast<std::size_t>(i)];
  return v;
}

IntVec RootSystemData::reflect(int i, const IntVec& beta) const {
  int pairing = 0;
  for (int j = 0; j < rank; ++j) {
    pairing += beta[static_cast<std::size_t>(j)] * cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  }
  IntVec out = beta;
  out[static_cast<std::size_t>(i)] -= pairing;
  return out;
}

bool RootSystemData::is_positive_root(const IntVec& beta) const {
  return std::find(positive_roots.begin(), positive_roots.end(), beta) != positive_roots.end();
}

bool RootSystemData::is_negative_root(const IntVec& beta) const {
  IntVec neg = beta;
  for (int& c : neg) c = -c;
  return is_positive_root(neg);
}

Json RootSystemData::to_json() const {
  Json j;
  j["kind"] = kind;
  j["rank"] = rank;
  j["cartan_pairings"] = cartan;
  Json simple = Json::array();
  for (const auto& a : simple_roots) simple.push_back(std::vector<double>(a.data(), a.data() + a.size()));
  j["simple_roots"] = simple;
  j["positive_roots"] = positive_roots;
  return j;
}

RootSystemData build_root_system(const std::string& kind) {
  RootSystemData rs;
  rs.kind = kind;
  if (kind == "A2") {
    rs.simple_roots = {vec2(1.0, 0.0), vec2(-0.5, std::sqrt(3.0) / 2.0)};
  } else if (kind == "B2") {
    rs.simple_roots = {vec2(1.0, -1.0), vec2(0.0, 1.0)};
  } else if (kind == "G2") {
    rs.simple_roots = {vec2(1.0, 0.0), vec2(-1.5, std::sqrt(3.0) / 2.0)};
  } else if (kind == "A1" || kind.rfind("A1^", 0) == 0) {
    int l = 1;
    if (kind != "A1") {
      try {
        std::size_t used = 0;
        l = std::stoi(kind.substr(3), &used);
        if (used != kind.size() - 3) throw std::invalid_argument(kind);
      } catch (const std::exception&) {
        throw Error(ErrorKind::UnsupportedKind, "root system " + kind);
      }
      if (l < 1 || l > 8) throw Error(ErrorKind::UnsupportedKind, "root system " + kind);
    }
    for (int i = 0; i < l; ++i) rs.simple_roots.push_back(Eigen::VectorXd::Unit(l, i));
  } else {
    throw Error(ErrorKind::UnsupportedKind, "root system " + kind);
  }
  rs.rank = static_cast<int>(rs.simple_roots.size());
  rs.cartan.assign(static_cast<std::size_t>(rs.rank), IntVec(static_cast<std::size_t>(rs.rank)));
  for (int i = 0; i < rs.rank; ++i) {
    for (int j = 0; j < rs.rank; ++j) {
      const auto& ai = rs.simple_roots[static_cast<std::size_t>(i)];
      const auto& aj = rs.simple_roots[static_cast<std::size_t>(j)];
      rs.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          static_cast<int>(std::lround(2.0 * ai.dot(aj) / aj.squaredNorm()));
    }
  }
  close_positive_roots(rs);
  return rs;
}

IntVec WeylElement::apply(const IntVec& beta) const {
  IntVec out(beta.size(), 0);
  for (std::size_t j = 0; j < beta.size(); ++j) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += beta[j] * action[j][i];
  }
  return out;
}

SpectralParameter WeylElement::apply(const SpectralParameter& lambda) const {
  const auto n = static_cast<std::size_t>(matrix.rows());
  if (lambda.size() != n) throw Error(ErrorKind::DimensionMismatch, "spectral parameter has wrong rank");
  SpectralParameter out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * lambda[j];
  }
  return out;
}

Json WeylElement::to_json() const {
  Json j;
  j["word"] = word;
  j["action"] = action;
  Json m = Json::array();
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    std::vector<double> row(static_cast<std::size_t>(matrix.cols()));
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) row[static_cast<std::size_t>(c)] = matrix(r, c);
    m.push_back(row);
  }
  j["matrix"] = m;
  return j;
}

WeylElement identity_element(const RootSystemData& rs) {
  WeylElement e;
  for (int i = 0; i < rs.rank; ++i) {
    IntVec col(static_cast<std::size_t>(rs.rank), 0);
    col[static_cast<std::size_t>(i)] = 1;
    e.action.push_back(col);
  }
  const auto n = rs.simple_roots.front().size();
  e.matrix = Eigen::MatrixXd::Identity(n, n);
  return e;
}

WeylElement element_from_word(const std::vector<int>& word, const RootSystemData& rs) {
  WeylElement w = identity_element(rs);
  for (int label : word) {
    if (label < 1 || label > rs.rank) throw Error(ErrorKind::Precondition, "reflection label out of range");
    const int i = label - 1;
    // (w s_i)(alpha_j) = w(s_i alpha_j)
    std::vector<IntVec> action;
    for (int j = 0; j < rs.rank; ++j) {
      IntVec e(static_cast<std::size_t>(rs.rank), 0);
      e[static_cast<std::size_t>(j)] = 1;
      action.push_back(w.apply(rs.reflect(i, e)));
    }
    w.action = std::move(action);
    w.matrix = w.matrix * reflection_matrix(rs.simple_roots[static_cast<std::size_t>(i)]);
  }
  w.word = word;
  return w;
}

WeylElement compose(const WeylElement& a, const WeylElement& b, const RootSystemData& rs) {
  std::vector<int> word = a.word;
  word.insert(word.end(), b.word.begin(), b.word.end());
  return element_from_word(word, rs);
}

WeylElement inverse(const WeylElement& w, const RootSystemData& rs) {
  return element_from_word(std::vector<int>(w.word.rbegin(), w.word.rend()), rs);
}

bool same_element(const WeylElement& a, const WeylElement& b) { return a.action == b.action; }

int inversion_count(const WeylElement& w, const RootSystemData& rs) {
  int count = 0;
  for (const auto& beta : rs.positive_roots) {
    if (rs.is_negative_root(w.apply(beta))) ++count;
  }
  return count;
}

std::vector<WeylElement> generate_weyl(const RootSystemData& rs) {
  if (rs.rank > 3 && rs.kind.rfind("A1", 0) != 0) {
    throw Error(ErrorKind::Precondition, "Weyl group enumeration is limited to rank <= 3");
  }
  std::vector<WeylElement> out{identity_element(rs)};
  std::map<std::vector<IntVec>, std::size_t> index{{out.front().action, 0}};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (int label = 1; label <= rs.rank; ++label) {
      std::vector<int> word = out[head].word;
      word.push_back(label);
      WeylElement w = element_from_word(word, rs);
      if (index.emplace(w.action, out.size()).second) out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<std::vector<int>> reduced_words(const WeylElement& w, const RootSystemData& rs) {
  const int len = inversion_count(w, rs);
  std::vector<std::vector<int>> found;
  // depth-first over words whose prefixes are all reduced
  std::vector<int> word;
  auto dfs = [&](auto&& self, const WeylElement& prefix, int depth) -> void {
    if (depth == len) {
      if (same_element(prefix, w)) found.push_back(word);
      return;
    }
    for (int label = 1; label <= rs.rank; ++label) {
      word.push_back(label);
      WeylElement next = element_from_word(word, rs);
      if (inversion_count(next, rs) == depth + 1) self(self, next, depth + 1);
      word.pop_back();
    }
  };
  dfs(dfs, identity_element(rs), 0);
  return found;
}

std::vector<IntVec> factorization_roots(const std::vector<int>& word, const RootSystemData& rs) {
  const WeylElement w = element_from_word(word, rs);
  if (inversion_count(w, rs) != static_cast<int>(word.size())) {
    throw Error(ErrorKind::NonReducedWord, "word of length " + std::to_string(word.size()) + " is not reduced");
  }
  std::vector<IntVec> roots;
  const std::size_t n = word.size();
  for (std::size_t j = 0; j < n; ++j) {
    IntVec beta(static_cast<std::size_t>(rs.rank), 0);
    beta[static_cast<std::size_t>(word[j] - 1)] = 1;
    // w_j^{-1} = s_{i_n} ... s_{i_{j+1}}: apply s_{i_{j+1}} first
    for (std::size_t k = j + 1; k < n; ++k) beta = rs.reflect(word[k] - 1, beta);
    if (!rs.is_positive_root(beta)) throw Error(ErrorKind::Precondition, "factorization root is not positive");
    if (std::find(roots.begin(), roots.end(), beta) != roots.end()) {
      throw Error(ErrorKind::Precondition, "factorization roots repeat");
    }
    roots.push_back(beta);
  }
  return roots;
}

}  // namespace pwq::weyl
