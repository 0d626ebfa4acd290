#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sugdg/point_cloud.hpp"

namespace sugdg {

struct SampleRecord {
    PointCloud cloud;     // normalized at load time
    std::string path;     // relative to the manifest file; empty until saved
    int label = 0;
    std::optional<int> subdomain;
};

// An indexed collection of point clouds with split assignments. Samples keep
// manifest order; labels index class_names.
struct DatasetManifest {
    std::vector<std::string> class_names;
    std::vector<SampleRecord> samples;

    int num_classes() const { return static_cast<int>(class_names.size()); }
};

// exact per-class histogram, length C
Eigen::VectorXi class_counts(const DatasetManifest& manifest);

// number of sub-domains K when every sample is tagged with indices forming
// {0..K-1}; 0 when no sample is tagged. Partial or ill-formed tagging throws.
int subdomain_count(const DatasetManifest& manifest);

// checks the sub-domain invariant: tags form {0..K-1} and every sub-domain
// contains every class
void validate_subdomains(const DatasetManifest& manifest);

// "SUGDG-PC v1": header line, then one "x y z" triple per line
void save_point_cloud(const Eigen::Matrix3Xd& points, const std::filesystem::path& path);
Eigen::Matrix3Xd load_point_cloud(const std::filesystem::path& path);

// "SUGDG-MANIFEST v1" + classes line + one sample line each. Clouds are
// written to <manifest dir>/clouds/ and sample paths updated in place.
void save_manifest(DatasetManifest& manifest, const std::filesystem::path& manifest_path);
DatasetManifest load_manifest(const std::filesystem::path& manifest_path);

// "SUGDG-SPLIT v1" then lines "sample_index subdomain_index"
void save_split_file(const std::vector<int>& assignment, const std::filesystem::path& path);
std::vector<int> load_split_file(const std::filesystem::path& path);

// tags every sample with its assigned sub-domain
void apply_split(DatasetManifest& manifest, const std::vector<int>& assignment);

}  // namespace sugdg
