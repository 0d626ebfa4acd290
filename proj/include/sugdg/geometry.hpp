#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>

#include "sugdg/point_cloud.hpp"

namespace sugdg {

// Sum of squared nearest-neighbor distances in both directions:
//   sum_{x in X} min_{y in Y} |x-y|^2 + sum_{y in Y} min_{x in X} |x-y|^2
// No averaging. Works on any 3xN expressions with a common scalar type.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar chamfer_distance(const Eigen::MatrixBase<DerivedA>& xs,
                                           const Eigen::MatrixBase<DerivedB>& ys) {
    using Scalar = typename DerivedA::Scalar;
    static_assert(DerivedA::RowsAtCompileTime == 3 || DerivedA::RowsAtCompileTime == Eigen::Dynamic);
    if (xs.cols() == 0 || ys.cols() == 0)
        throw std::invalid_argument("chamfer_distance: empty point cloud");
    const Eigen::Matrix<Scalar, 3, Eigen::Dynamic> a = xs;
    const Eigen::Matrix<Scalar, 3, Eigen::Dynamic> b = ys;
    const auto one_way = [](const Eigen::Matrix<Scalar, 3, Eigen::Dynamic>& from,
                            const Eigen::Matrix<Scalar, 3, Eigen::Dynamic>& to) {
        Scalar sum = 0;
        for (Eigen::Index i = 0; i < from.cols(); ++i) {
            Scalar best = std::numeric_limits<Scalar>::infinity();
            for (Eigen::Index j = 0; j < to.cols(); ++j) {
                const Scalar dx = from(0, i) - to(0, j);
                const Scalar dy = from(1, i) - to(1, j);
                const Scalar dz = from(2, i) - to(2, j);
                const Scalar d = dx * dx + dy * dy + dz * dz;
                if (d < best) best = d;
            }
            sum += best;
        }
        return sum;
    };
    return one_way(a, b) + one_way(b, a);
}

inline double chamfer_distance(const PointCloud& x, const PointCloud& y) {
    return chamfer_distance(x.points, y.points);
}

struct IcpResult {
    double residual = 0.0;      // bidirectional mean-squared NN distance after alignment
    RigidTransform transform;   // maps X into Y's frame
    bool degenerate = false;    // rank-deficient correspondence hit; rotation fell back to identity
    int iterations = 0;
};

// Point-to-point ICP: nearest-neighbor correspondence + SVD rigid fit,
// iterated until the mean-squared correspondence residual improves by less
// than tol. Seeded from identity plus PCA-frame candidates so exact rigid
// copies are recovered regardless of the rotation magnitude.
IcpResult icp_score(const PointCloud& x, const PointCloud& y, int max_iters = 30,
                    double tol = 1e-6);

// Least-squares rigid fit mapping src column i onto dst column i (Kabsch).
// Collinear/rank-deficient input sets degenerate and returns identity
// rotation with centroid-difference translation.
RigidTransform fit_rigid(const Eigen::Matrix3Xd& src, const Eigen::Matrix3Xd& dst,
                         bool* degenerate = nullptr);

// Centers the cloud at the origin and scales it so the farthest point sits on
// the unit sphere. All-identical clouds are centered only.
PointCloud normalize(const PointCloud& x);

struct AugmentParams {
    double jitter_sigma = 0.01;     // per-coordinate Gaussian noise
    double rotation_range = 3.141592653589793;  // z-rotation drawn from [-range, range]
};

// Jitter + rotation about the gravity (z) axis. Same n and label; pure
// function of (cloud, params, seed).
PointCloud augment(const PointCloud& x, const AugmentParams& params, std::uint64_t seed);

}  // namespace sugdg
