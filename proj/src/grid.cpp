#include "chainscope/grid.hpp"

#include <algorithm>
#include <cmath>

#include "chainscope/errors.hpp"

namespace chainscope {

GridSpec::GridSpec(Torus torus, std::vector<std::size_t> counts)
    : torus_(std::move(torus)), counts_(std::move(counts)) {
  if (counts_.size() != torus_.dims()) throw ConfigError("grid dimension does not match torus");
  total_ = 1;
  strides_.resize(counts_.size());
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    if (counts_[j] == 0) throw ConfigError("grid axis with zero nodes");
    strides_[j] = total_;
    total_ *= counts_[j];
  }
  if (total_ < 2) throw ConfigError("grid needs at least two nodes");
}

double GridSpec::h_max() const {
  double h = 0.0;
  for (std::size_t j = 0; j < dims(); ++j) h = std::max(h, spacing(j));
  return h;
}

TorusPoint GridSpec::point(std::size_t node) const {
  if (node >= total_) throw InputError("grid node out of range");
  TorusPoint p;
  p.n = dims();
  for (std::size_t j = 0; j < dims(); ++j) {
    const std::size_t i = (node / strides_[j]) % counts_[j];
    p[j] = static_cast<double>(i) * spacing(j);
  }
  return p;
}

std::size_t GridSpec::index(const std::vector<std::size_t>& multi) const {
  if (multi.size() != dims()) throw InputError("multi-index dimension mismatch");
  std::size_t k = 0;
  for (std::size_t j = 0; j < dims(); ++j) {
    if (multi[j] >= counts_[j]) throw InputError("multi-index out of range");
    k += multi[j] * strides_[j];
  }
  return k;
}

std::vector<std::size_t> GridSpec::multi_index(std::size_t node) const {
  std::vector<std::size_t> m(dims());
  for (std::size_t j = 0; j < dims(); ++j) m[j] = (node / strides_[j]) % counts_[j];
  return m;
}

std::size_t GridSpec::nearest(const TorusPoint& x) const {
  if (x.n != dims()) throw InputError("point dimension does not match grid");
  std::size_t k = 0;
  for (std::size_t j = 0; j < dims(); ++j) {
    const auto n = static_cast<long long>(counts_[j]);
    long long i = std::llround(torus_.reduce_coord(x[j], j) / spacing(j)) % n;
    if (i < 0) i += n;
    k += static_cast<std::size_t>(i) * strides_[j];
  }
  return k;
}

std::size_t GridSpec::shift(std::size_t node, std::size_t j, long long step) const {
  const auto n = static_cast<long long>(counts_[j]);
  const auto i = static_cast<long long>((node / strides_[j]) % counts_[j]);
  long long t = (i + step) % n;
  if (t < 0) t += n;
  return node - static_cast<std::size_t>(i) * strides_[j] + static_cast<std::size_t>(t) * strides_[j];
}

void GridSpec::set_mask(std::vector<char> mask) {
  if (!mask.empty() && mask.size() != total_) throw ConfigError("mask size does not match grid");
  mask_ = std::move(mask);
}

bool GridSpec::refines(const GridSpec& coarse) const {
  if (!(coarse.torus() == torus_) || coarse.dims() != dims()) return false;
  for (std::size_t j = 0; j < dims(); ++j)
    if (counts_[j] % coarse.count(j) != 0) return false;
  return true;
}

std::size_t GridSpec::embed(const GridSpec& coarse, std::size_t coarse_node) const {
  if (!refines(coarse)) throw ConfigError("grid ladder is not nested");
  auto m = coarse.multi_index(coarse_node);
  for (std::size_t j = 0; j < dims(); ++j) m[j] *= counts_[j] / coarse.count(j);
  return index(m);
}

}  // namespace chainscope
