#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace rbffd {

// Static kd-tree over 2-D/3-D points in SoA layout. Exact k-nearest-neighbor
// queries; equal distances break toward the lower point index.
class KdTree {
 public:
  KdTree(int dim, std::vector<double> xs, std::vector<double> ys,
         std::vector<double> zs = {});

  std::size_t size() const { return xs_.size(); }

  // Indices of the n nearest points to q, ascending by (distance, index).
  // Throws std::invalid_argument if n exceeds the point count.
  std::vector<int> knn(const double* q, int n) const;

  // Indices with squared distance <= r2, ascending by index.
  std::vector<int> radius(const double* q, double r2) const;

  // Squared distance from q to the nearest point (infinity if empty).
  double nearest_dist2(const double* q) const;

 private:
  struct Node {
    int axis = -1;       // -1 marks a leaf
    double split = 0.0;  // split coordinate (max of left subtree on axis)
    int begin = 0, end = 0;
    int left = -1, right = -1;
  };

  int build(int begin, int end, std::vector<int>& scratch);
  std::vector<std::pair<double, int>> search(const double* q, int n) const;
  void leaf_scan(const Node& nd, const double* q, int n,
                 std::vector<std::pair<double, int>>& heap) const;

  int dim_;
  std::vector<double> xs_, ys_, zs_;
  std::vector<int> perm_;  // original index per tree slot
  std::vector<Node> nodes_;
  int root_ = -1;
  static constexpr int kLeafSize = 24;
};

}  // namespace rbffd
