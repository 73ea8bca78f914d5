#include "pplab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pplab {

void Window::validate() const {
  if (d < 1 || d > 8) throw std::invalid_argument("window: dimension must be in [1, 8]");
  if (!(side > 0.0) || !std::isfinite(side))
    throw std::invalid_argument("window: side must be finite and > 0");
}

double Window::volume() const { return std::pow(side, d); }

bool Window::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != d) return false;
  const double h = side / 2.0;
  return std::all_of(x.begin(), x.end(), [h](double v) { return v >= -h && v <= h; });
}

double pair_distance_squared(std::span<const double> x, std::span<const double> y,
                             const Window& w) {
  if (x.size() != y.size()) throw std::invalid_argument("pair_distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double diff = std::abs(x[j] - y[j]);
    if (w.boundary == Boundary::torus) diff = std::min(diff, w.side - diff);
    s += diff * diff;
  }
  return s;
}

double pair_distance(std::span<const double> x, std::span<const double> y, const Window& w) {
  return std::sqrt(pair_distance_squared(x, y, w));
}

BoxingSystem::BoxingSystem(std::vector<double> center, double M, double C, double D,
                           double delta, const Window& window, std::size_t max_subboxes)
    : center_(std::move(center)), M_(M), C_(C), D_(D), delta_(delta), window_(window) {
  window_.validate();
  if (static_cast<int>(center_.size()) != window_.d)
    throw std::invalid_argument("boxing: center dimension differs from the window");
  if (!window_.contains(center_)) throw std::invalid_argument("boxing: center outside the window");
  if (!(M > 0.0) || !(C > 1.0) || !(D > 1.0) || !(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("boxing: need M > 0, C > 1, D > 1, delta in (0,1)");
  if (box_side(0) > window_.side)
    throw std::invalid_argument("boxing: Box_0 does not fit in the window (k_star < 0)");

  const int d = window_.d;
  const double half = window_.side / 2.0;
  std::size_t total = 0;
  for (int k = 0; box_side(k) <= window_.side; ++k) {
    Annulus ann;
    ann.box_side = box_side(k);
    ann.sub_side = sub_side(k);
    const double a = ann.sub_side;
    const double inner = k == 0 ? 0.0 : box_side(k - 1);
    ann.anchor.resize(static_cast<std::size_t>(d));
    ann.cells_per_dim.resize(static_cast<std::size_t>(d));
    // Per dimension: contiguous index range [first, last] of cells meeting the open inner box.
    std::vector<std::int64_t> first(static_cast<std::size_t>(d)), last(static_cast<std::size_t>(d));
    bool empty = false;
    for (int j = 0; j < d; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const double lo = std::max(center_[ju] - ann.box_side / 2.0, -half);
      const double hi = std::min(center_[ju] + ann.box_side / 2.0, half);
      ann.anchor[ju] = lo;
      auto m = static_cast<std::int64_t>(std::floor((hi - lo) / a));
      while (m > 0 && lo + static_cast<double>(m) * a > hi) --m;
      ann.cells_per_dim[ju] = std::max<std::int64_t>(m, 0);
      if (m <= 0) empty = true;
      first[ju] = 0;
      last[ju] = -1;
      if (k > 0) {
        const double ilo = center_[ju] - inner / 2.0, ihi = center_[ju] + inner / 2.0;
        for (std::int64_t i = 0; i < m; ++i) {
          const double clo = lo + static_cast<double>(i) * a;
          const double chi = lo + static_cast<double>(i + 1) * a;
          if (clo < ihi && chi > ilo) {
            if (last[ju] < first[ju]) first[ju] = i;
            last[ju] = i;
          }
        }
      }
    }
    if (!empty) {
      // Walk prefixes; along the last dimension skip the cells meeting the inner box
      // whenever every earlier coordinate also meets it.
      std::vector<std::int64_t> idx(static_cast<std::size_t>(d), 0);
      const auto last_dim = static_cast<std::size_t>(d - 1);
      const std::int64_t m_last = ann.cells_per_dim[last_dim];
      while (true) {
        bool all_meet = k > 0;
        std::uint64_t base = 0;
        for (std::size_t j = 0; j < last_dim; ++j) {
          base = base * static_cast<std::uint64_t>(ann.cells_per_dim[j]) +
                 static_cast<std::uint64_t>(idx[j]);
          if (!(idx[j] >= first[j] && idx[j] <= last[j])) all_meet = false;
        }
        base *= static_cast<std::uint64_t>(m_last);
        const bool skip_range = all_meet && last[last_dim] >= first[last_dim];
        for (std::int64_t i = 0; i < m_last; ++i) {
          if (skip_range && i >= first[last_dim] && i <= last[last_dim]) {
            i = last[last_dim];
            continue;
          }
          ann.kept.push_back(base + static_cast<std::uint64_t>(i));
        }
        if (total + ann.kept.size() > max_subboxes)
          throw std::invalid_argument("boxing: sub-box count exceeds the configured cap");
        std::size_t j = last_dim;
        bool done = true;
        while (j-- > 0) {
          if (++idx[j] < ann.cells_per_dim[j]) {
            done = false;
            break;
          }
          idx[j] = 0;
        }
        if (done) break;
      }
    }
    total += ann.kept.size();
    annuli_.push_back(std::move(ann));
    if (k > 200) break;
  }
}

double BoxingSystem::box_side(int k) const {
  return std::exp(M_ * D_ * std::pow(C_, k) / window_.d);
}

double BoxingSystem::sub_side(int k) const {
  return std::exp(M_ * std::pow(C_, k) / window_.d);
}

std::vector<double> BoxingSystem::subbox_lower(int k, std::size_t index) const {
  const Annulus& ann = annulus(k);
  if (index >= ann.count()) throw std::out_of_range("subbox_lower: index out of range");
  std::uint64_t lin = ann.kept[index];
  std::vector<double> lo(ann.anchor.size());
  for (std::size_t j = lo.size(); j-- > 0;) {
    const auto m = static_cast<std::uint64_t>(ann.cells_per_dim[j]);
    const auto i = static_cast<double>(lin % m);
    lin /= m;
    lo[j] = ann.anchor[j] + i * ann.sub_side;
  }
  return lo;
}

std::optional<SubBoxRef> BoxingSystem::locate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != window_.d)
    throw std::invalid_argument("locate: dimension mismatch");
  for (std::size_t k = 0; k < annuli_.size(); ++k) {
    const Annulus& ann = annuli_[k];
    const double a = ann.sub_side;
    std::uint64_t lin = 0;
    bool inside = !ann.kept.empty();
    for (std::size_t j = 0; inside && j < x.size(); ++j) {
      auto i = static_cast<std::int64_t>(std::floor((x[j] - ann.anchor[j]) / a));
      // Agree exactly with the extents reported by subbox_lower.
      if (i >= 0 && ann.anchor[j] + static_cast<double>(i) * a > x[j]) --i;
      if (ann.anchor[j] + static_cast<double>(i + 1) * a <= x[j]) ++i;
      if (i < 0 || i >= ann.cells_per_dim[j]) inside = false;
      lin = lin * static_cast<std::uint64_t>(ann.cells_per_dim[j]) + static_cast<std::uint64_t>(i);
    }
    if (!inside) continue;
    auto it = std::lower_bound(ann.kept.begin(), ann.kept.end(), lin);
    if (it != ann.kept.end() && *it == lin)
      return SubBoxRef{static_cast<int>(k), static_cast<std::size_t>(it - ann.kept.begin())};
  }
  return std::nullopt;
}

std::optional<int> BoxingSystem::box_index(std::span<const double> x) const {
  double norm = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) norm = std::max(norm, std::abs(x[j] - center_[j]));
  for (std::size_t k = 0; k < annuli_.size(); ++k)
    if (norm <= annuli_[k].box_side / 2.0) return static_cast<int>(k);
  return std::nullopt;
}

}  // namespace pplab
