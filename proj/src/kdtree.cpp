#include "rbffd/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "rbffd/kernels.hpp"

namespace rbffd {

namespace {

double axis_coord(const std::vector<double>& xs, const std::vector<double>& ys,
                  const std::vector<double>& zs, int axis, int i) {
  return axis == 0 ? xs[i] : (axis == 1 ? ys[i] : zs[i]);
}

}  // namespace

KdTree::KdTree(int dim, std::vector<double> xs, std::vector<double> ys,
               std::vector<double> zs)
    : dim_(dim), xs_(std::move(xs)), ys_(std::move(ys)), zs_(std::move(zs)) {
  const int n = static_cast<int>(xs_.size());
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), 0);
  if (n > 0) {
    std::vector<int> scratch = perm_;
    root_ = build(0, n, scratch);
    // Gather coordinates into slot order so leaf scans are contiguous.
    std::vector<double> gx(n), gy(n), gz(dim_ == 3 ? n : 0);
    for (int s = 0; s < n; ++s) {
      gx[s] = xs_[scratch[s]];
      gy[s] = ys_[scratch[s]];
      if (dim_ == 3) gz[s] = zs_[scratch[s]];
    }
    xs_ = std::move(gx);
    ys_ = std::move(gy);
    zs_ = std::move(gz);
    perm_ = std::move(scratch);
  }
}

int KdTree::build(int begin, int end, std::vector<int>& scratch) {
  Node nd;
  nd.begin = begin;
  nd.end = end;
  const int count = end - begin;
  if (count <= kLeafSize) {
    nodes_.push_back(nd);
    return static_cast<int>(nodes_.size()) - 1;
  }
  double lo[3], hi[3];
  for (int a = 0; a < dim_; ++a) {
    lo[a] = std::numeric_limits<double>::infinity();
    hi[a] = -std::numeric_limits<double>::infinity();
  }
  for (int s = begin; s < end; ++s) {
    const int i = scratch[s];
    for (int a = 0; a < dim_; ++a) {
      const double v = axis_coord(xs_, ys_, zs_, a, i);
      lo[a] = std::min(lo[a], v);
      hi[a] = std::max(hi[a], v);
    }
  }
  int axis = 0;
  for (int a = 1; a < dim_; ++a)
    if (hi[a] - lo[a] > hi[axis] - lo[axis]) axis = a;
  const int mid = begin + count / 2;
  std::nth_element(scratch.begin() + begin, scratch.begin() + mid,
                   scratch.begin() + end, [&](int a, int b) {
                     const double ca = axis_coord(xs_, ys_, zs_, axis, a);
                     const double cb = axis_coord(xs_, ys_, zs_, axis, b);
                     return ca < cb || (ca == cb && a < b);
                   });
  nd.axis = axis;
  nd.split = axis_coord(xs_, ys_, zs_, axis, scratch[mid]);
  const int self = static_cast<int>(nodes_.size());
  nodes_.push_back(nd);
  const int left = build(begin, mid, scratch);
  const int right = build(mid, end, scratch);
  nodes_[self].left = left;
  nodes_[self].right = right;
  return self;
}

void KdTree::leaf_scan(const Node& nd, const double* q, int n,
                       std::vector<std::pair<double, int>>& heap) const {
  double d2[kLeafSize];
  const int count = nd.end - nd.begin;
  if (dim_ == 3)
    kernels::sqdist3(xs_.data() + nd.begin, ys_.data() + nd.begin,
                     zs_.data() + nd.begin, count, q[0], q[1], q[2], d2);
  else
    kernels::sqdist2(xs_.data() + nd.begin, ys_.data() + nd.begin, count, q[0],
                     q[1], d2);
  for (int t = 0; t < count; ++t) {
    const std::pair<double, int> cand{d2[t], perm_[nd.begin + t]};
    if (static_cast<int>(heap.size()) < n) {
      heap.push_back(cand);
      std::push_heap(heap.begin(), heap.end());
    } else if (cand < heap.front()) {
      std::pop_heap(heap.begin(), heap.end());
      heap.back() = cand;
      std::push_heap(heap.begin(), heap.end());
    }
  }
}

std::vector<std::pair<double, int>> KdTree::search(const double* q,
                                                   int n) const {
  std::vector<std::pair<double, int>> heap;
  heap.reserve(n);
  // Iterative depth-first descent, near side first.
  std::vector<int> stack;
  stack.push_back(root_);
  while (!stack.empty()) {
    const Node& nd = nodes_[stack.back()];
    stack.pop_back();
    if (nd.axis < 0) {
      leaf_scan(nd, q, n, heap);
      continue;
    }
    const double delta = q[nd.axis] - nd.split;
    const int near = delta < 0.0 ? nd.left : nd.right;
    const int far = delta < 0.0 ? nd.right : nd.left;
    const bool full = static_cast<int>(heap.size()) == n;
    if (!full || delta * delta <= heap.front().first) stack.push_back(far);
    stack.push_back(near);
  }
  std::sort(heap.begin(), heap.end());
  return heap;
}

std::vector<int> KdTree::knn(const double* q, int n) const {
  if (n < 0 || static_cast<std::size_t>(n) > size())
    throw std::invalid_argument("knn: requested more neighbors than points");
  if (n == 0) return {};
  const auto heap = search(q, n);
  std::vector<int> out(heap.size());
  for (std::size_t i = 0; i < heap.size(); ++i) out[i] = heap[i].second;
  return out;
}

std::vector<int> KdTree::radius(const double* q, double r2) const {
  std::vector<int> out;
  if (root_ < 0) return out;
  std::vector<int> stack{root_};
  double d2[kLeafSize];
  while (!stack.empty()) {
    const Node& nd = nodes_[stack.back()];
    stack.pop_back();
    if (nd.axis < 0) {
      const int count = nd.end - nd.begin;
      if (dim_ == 3)
        kernels::sqdist3(xs_.data() + nd.begin, ys_.data() + nd.begin,
                         zs_.data() + nd.begin, count, q[0], q[1], q[2], d2);
      else
        kernels::sqdist2(xs_.data() + nd.begin, ys_.data() + nd.begin, count,
                         q[0], q[1], d2);
      for (int t = 0; t < count; ++t)
        if (d2[t] <= r2) out.push_back(perm_[nd.begin + t]);
      continue;
    }
    const double delta = q[nd.axis] - nd.split;
    if (delta < 0.0) {
      stack.push_back(nd.left);
      if (delta * delta <= r2) stack.push_back(nd.right);
    } else {
      stack.push_back(nd.right);
      if (delta * delta <= r2) stack.push_back(nd.left);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double KdTree::nearest_dist2(const double* q) const {
  if (size() == 0) return std::numeric_limits<double>::infinity();
  return search(q, 1).front().first;
}

}  // namespace rbffd
