#include "sugdg/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <array>
#include <cmath>

#include "sugdg/rng.hpp"

namespace sugdg {

namespace {

// index of the nearest column of `to` for every column of `from`
std::vector<Eigen::Index> nearest_indices(const Eigen::Matrix3Xd& from,
                                          const Eigen::Matrix3Xd& to) {
    std::vector<Eigen::Index> nn(static_cast<std::size_t>(from.cols()));
    for (Eigen::Index i = 0; i < from.cols(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        Eigen::Index best_j = 0;
        for (Eigen::Index j = 0; j < to.cols(); ++j) {
            const double d = (from.col(i) - to.col(j)).squaredNorm();
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        nn[static_cast<std::size_t>(i)] = best_j;
    }
    return nn;
}

double one_way_mse(const Eigen::Matrix3Xd& from, const Eigen::Matrix3Xd& to) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < from.cols(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < to.cols(); ++j) {
            const double d = (from.col(i) - to.col(j)).squaredNorm();
            if (d < best) best = d;
        }
        sum += best;
    }
    return sum;
}

double bidirectional_residual(const Eigen::Matrix3Xd& a, const Eigen::Matrix3Xd& b) {
    return (one_way_mse(a, b) + one_way_mse(b, a)) / static_cast<double>(a.cols() + b.cols());
}

// descending-eigenvalue principal frame, right-handed
Eigen::Matrix3d principal_frame(const Eigen::Matrix3Xd& pts) {
    const Eigen::Vector3d c = centroid(pts);
    const Eigen::Matrix3Xd centered = pts.colwise() - c;
    const Eigen::Matrix3d cov = centered * centered.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
    Eigen::Matrix3d frame;
    frame.col(0) = es.eigenvectors().col(2);
    frame.col(1) = es.eigenvectors().col(1);
    frame.col(2) = es.eigenvectors().col(0);
    if (frame.determinant() < 0.0) frame.col(2) = -frame.col(2);
    return frame;
}

struct RefineOutcome {
    RigidTransform transform;
    double residual = std::numeric_limits<double>::infinity();
    bool degenerate = false;
    int iterations = 0;
};

RefineOutcome refine_from(const Eigen::Matrix3Xd& x, const Eigen::Matrix3Xd& y,
                          RigidTransform init, int max_iters, double tol) {
    RefineOutcome out;
    out.transform = init;
    double prev_mse = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < max_iters; ++iter) {
        const Eigen::Matrix3Xd moved = out.transform.apply(x);
        const std::vector<Eigen::Index> nn = nearest_indices(moved, y);
        double mse = 0.0;
        for (Eigen::Index i = 0; i < moved.cols(); ++i)
            mse += (moved.col(i) - y.col(nn[static_cast<std::size_t>(i)])).squaredNorm();
        mse /= static_cast<double>(moved.cols());
        out.iterations = iter + 1;
        if (prev_mse - mse < tol) break;
        prev_mse = mse;

        Eigen::Matrix3Xd matched(3, x.cols());
        for (Eigen::Index i = 0; i < x.cols(); ++i)
            matched.col(i) = y.col(nn[static_cast<std::size_t>(i)]);
        bool degenerate = false;
        const RigidTransform fitted = fit_rigid(x, matched, &degenerate);
        if (degenerate) {
            out.degenerate = true;
            out.transform = fitted;
            break;
        }
        out.transform = fitted;
    }
    out.residual = bidirectional_residual(out.transform.apply(x), y);
    return out;
}

}  // namespace

RigidTransform fit_rigid(const Eigen::Matrix3Xd& src, const Eigen::Matrix3Xd& dst,
                         bool* degenerate) {
    const Eigen::Vector3d cs = centroid(src);
    const Eigen::Vector3d cd = centroid(dst);
    const Eigen::Matrix3d h =
        (src.colwise() - cs) * (dst.colwise() - cd).transpose();
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Vector3d s = svd.singularValues();
    if (s(1) <= 1e-12 * std::max(1.0, s(0))) {
        // collinear or point-like correspondence: rotation is not determined
        if (degenerate) *degenerate = true;
        return {Eigen::Matrix3d::Identity(), cd - cs};
    }
    if (degenerate) *degenerate = false;
    Eigen::Matrix3d v = svd.matrixV();
    if ((v * svd.matrixU().transpose()).determinant() < 0.0) v.col(2) = -v.col(2);
    const Eigen::Matrix3d r = v * svd.matrixU().transpose();
    return {r, cd - r * cs};
}

IcpResult icp_score(const PointCloud& x, const PointCloud& y, int max_iters, double tol) {
    if (x.size() < 3 || y.size() < 3)
        throw std::invalid_argument("icp_score: clouds need at least 3 points");

    const Eigen::Vector3d cx = centroid(x.points);
    const Eigen::Vector3d cy = centroid(y.points);
    const Eigen::Matrix3d fx = principal_frame(x.points);
    const Eigen::Matrix3d fy = principal_frame(y.points);

    // identity start plus the four proper-rotation PCA alignments; exact
    // copies under large rotations land on the right basin this way
    std::array<RigidTransform, 5> inits;
    inits[0] = RigidTransform{};
    static const std::array<Eigen::Vector3d, 4> signs = {
        Eigen::Vector3d(1, 1, 1), Eigen::Vector3d(1, -1, -1),
        Eigen::Vector3d(-1, 1, -1), Eigen::Vector3d(-1, -1, 1)};
    for (std::size_t k = 0; k < signs.size(); ++k) {
        const Eigen::Matrix3d r = fy * signs[k].asDiagonal() * fx.transpose();
        inits[k + 1] = RigidTransform{r, cy - r * cx};
    }

    RefineOutcome best;
    for (const RigidTransform& init : inits) {
        const RefineOutcome candidate = refine_from(x.points, y.points, init, max_iters, tol);
        if (candidate.residual < best.residual) best = candidate;
        if (best.residual < 1e-14) break;
    }
    return IcpResult{best.residual, best.transform, best.degenerate, best.iterations};
}

PointCloud normalize(const PointCloud& x) {
    if (x.size() == 0) throw std::invalid_argument("normalize: empty point cloud");
    if (!x.points.allFinite()) throw std::invalid_argument("normalize: non-finite coordinates");
    PointCloud out = x;
    out.points = x.points.colwise() - centroid(x.points);
    const double max_norm = out.points.colwise().norm().maxCoeff();
    if (max_norm > 1e-12) out.points /= max_norm;
    return out;
}

PointCloud augment(const PointCloud& x, const AugmentParams& params, std::uint64_t seed) {
    Rng rng(seed);
    PointCloud out = x;
    const double angle = rng.uniform(-params.rotation_range, params.rotation_range);
    Eigen::Matrix3d rz;
    rz << std::cos(angle), -std::sin(angle), 0.0,
          std::sin(angle),  std::cos(angle), 0.0,
          0.0,              0.0,             1.0;
    out.points = rz * x.points;
    if (params.jitter_sigma > 0.0) {
        for (Eigen::Index i = 0; i < out.points.cols(); ++i)
            for (Eigen::Index r = 0; r < 3; ++r)
                out.points(r, i) += rng.gaussian(0.0, params.jitter_sigma);
    }
    return out;
}

}  // namespace sugdg
