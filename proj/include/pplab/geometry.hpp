#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pplab {

enum class Boundary { hard, torus };

// Axis-aligned cube [-side/2, side/2]^d.
struct Window {
  int d = 1;
  double side = 1.0;
  Boundary boundary = Boundary::hard;

  void validate() const;
  double volume() const;
  bool contains(std::span<const double> x) const;
};

// Euclidean norm of x - y; minimal image on a torus.
double pair_distance(std::span<const double> x, std::span<const double> y, const Window& w);
// Squared version, avoids the square root in hot loops.
double pair_distance_squared(std::span<const double> x, std::span<const double> y,
                             const Window& w);

struct SubBoxRef {
  int annulus = 0;
  std::size_t index = 0;
};

// Grid of equal cubes covering one annulus Gamma_k = Box_k minus the open Box_{k-1}.
struct Annulus {
  double box_side = 0.0;  // side of Box_k
  double sub_side = 0.0;  // side of each sub-box
  std::vector<double> anchor;
  std::vector<std::int64_t> cells_per_dim;
  std::vector<std::uint64_t> kept;  // sorted linear cell indices

  std::size_t count() const { return kept.size(); }
};

class BoxingSystem {
 public:
  BoxingSystem(std::vector<double> center, double M, double C, double D, double delta,
               const Window& window, std::size_t max_subboxes = 50'000'000);

  int k_star() const { return static_cast<int>(annuli_.size()) - 1; }
  const std::vector<double>& center() const { return center_; }
  double M() const { return M_; }
  double C() const { return C_; }
  double D() const { return D_; }
  double delta() const { return delta_; }
  int d() const { return window_.d; }
  const Window& window() const { return window_; }
  const Annulus& annulus(int k) const { return annuli_.at(static_cast<std::size_t>(k)); }
  std::size_t subbox_count(int k) const { return annulus(k).count(); }

  // Lower corner of a sub-box; the box is [lo, lo + sub_side) in each coordinate.
  std::vector<double> subbox_lower(int k, std::size_t index) const;
  std::optional<SubBoxRef> locate(std::span<const double> x) const;
  // Smallest k with x in the closed Box_k, if any.
  std::optional<int> box_index(std::span<const double> x) const;

  // Side of Box_k, e^{M D C^k / d}.
  double box_side(int k) const;
  // Side of the sub-boxes of Gamma_k, e^{M C^k / d}.
  double sub_side(int k) const;

 private:
  std::vector<double> center_;
  double M_, C_, D_, delta_;
  Window window_;
  std::vector<Annulus> annuli_;
};

}  // namespace pplab
