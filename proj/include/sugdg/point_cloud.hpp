#pragma once

#include <Eigen/Dense>
#include <optional>

namespace sugdg {

// One 3D object: points are stored one per column. Coordinates are unitless
// model coordinates; label indexes into the owning manifest's class list.
struct PointCloud {
    Eigen::Matrix3Xd points;
    int label = 0;
    std::optional<int> source_tag;  // sub-domain index, when assigned

    Eigen::Index size() const { return points.cols(); }
};

struct RigidTransform {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return rotation * p + translation; }

    Eigen::Matrix3Xd apply(const Eigen::Matrix3Xd& pts) const {
        return (rotation * pts).colwise() + translation;
    }

    RigidTransform compose(const RigidTransform& inner) const {
        // (*this) after inner: x -> R_outer (R_inner x + t_inner) + t_outer
        return {rotation * inner.rotation, rotation * inner.translation + translation};
    }

    RigidTransform inverse() const {
        return {rotation.transpose(), -(rotation.transpose() * translation)};
    }

    // R orthonormal with det +1, within tol
    bool is_valid(double tol = 1e-9) const {
        const Eigen::Matrix3d err = rotation * rotation.transpose() - Eigen::Matrix3d::Identity();
        return err.cwiseAbs().maxCoeff() <= tol && std::abs(rotation.determinant() - 1.0) <= tol;
    }
};

inline Eigen::Vector3d centroid(const Eigen::Matrix3Xd& pts) { return pts.rowwise().mean(); }

}  // namespace sugdg
