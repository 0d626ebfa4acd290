#include "sugdg/manifest.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sugdg/geometry.hpp"

namespace sugdg {

namespace {

constexpr const char* kCloudHeader = "SUGDG-PC v1";
constexpr const char* kManifestHeader = "SUGDG-MANIFEST v1";
constexpr const char* kSplitHeader = "SUGDG-SPLIT v1";

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ifstream open_checked(const std::filesystem::path& path, const char* header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != header)
        throw std::runtime_error(path.string() + ": bad or missing header, expected \"" +
                                 header + "\"");
    return in;
}

std::string sanitize_name(const std::string& name) {
    std::string out;
    for (char c : name) out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    if (out.empty()) out = "class";
    return out;
}

}  // namespace

Eigen::VectorXi class_counts(const DatasetManifest& manifest) {
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(manifest.num_classes());
    for (const SampleRecord& s : manifest.samples) {
        if (s.label < 0 || s.label >= manifest.num_classes())
            throw std::runtime_error("class_counts: label out of range");
        counts[s.label] += 1;
    }
    return counts;
}

int subdomain_count(const DatasetManifest& manifest) {
    bool any = false, all = true;
    int max_tag = -1;
    for (const SampleRecord& s : manifest.samples) {
        if (s.subdomain) {
            any = true;
            max_tag = std::max(max_tag, *s.subdomain);
        } else {
            all = false;
        }
    }
    if (!any) return 0;
    if (!all) throw std::runtime_error("manifest has partially tagged sub-domains");
    return max_tag + 1;
}

void validate_subdomains(const DatasetManifest& manifest) {
    const int k = subdomain_count(manifest);
    if (k == 0) throw std::runtime_error("manifest has no sub-domain tags");
    const int c = manifest.num_classes();
    Eigen::MatrixXi cells = Eigen::MatrixXi::Zero(k, c);
    for (const SampleRecord& s : manifest.samples) {
        if (*s.subdomain < 0 || *s.subdomain >= k)
            throw std::runtime_error("sub-domain tag out of range");
        cells(*s.subdomain, s.label) += 1;
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < c; ++j)
            if (cells(i, j) == 0)
                throw std::runtime_error("sub-domain " + std::to_string(i) +
                                         " is missing class " + std::to_string(j));
}

void save_point_cloud(const Eigen::Matrix3Xd& points, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << kCloudHeader << "\n";
    for (Eigen::Index i = 0; i < points.cols(); ++i)
        out << fmt_double(points(0, i)) << ' ' << fmt_double(points(1, i)) << ' '
            << fmt_double(points(2, i)) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

Eigen::Matrix3Xd load_point_cloud(const std::filesystem::path& path) {
    std::ifstream in = open_checked(path, kCloudHeader);
    std::vector<Eigen::Vector3d> pts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Eigen::Vector3d p;
        if (!(ls >> p.x() >> p.y() >> p.z()))
            throw std::runtime_error(path.string() + ": malformed point line \"" + line + "\"");
        pts.push_back(p);
    }
    Eigen::Matrix3Xd out(3, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = pts[i];
    return out;
}

void save_manifest(DatasetManifest& manifest, const std::filesystem::path& manifest_path) {
    const std::filesystem::path dir = manifest_path.parent_path();
    const std::filesystem::path cloud_dir = dir / "clouds";
    std::filesystem::create_directories(cloud_dir);

    for (std::size_t i = 0; i < manifest.samples.size(); ++i) {
        SampleRecord& s = manifest.samples[i];
        char name[128];
        std::snprintf(name, sizeof(name), "%s_%06zu.xyz",
                      sanitize_name(manifest.class_names[static_cast<std::size_t>(s.label)]).c_str(), i);
        s.path = (std::filesystem::path("clouds") / name).generic_string();
        save_point_cloud(s.cloud.points, dir / s.path);
    }

    std::ofstream out(manifest_path);
    if (!out) throw std::runtime_error("cannot write " + manifest_path.string());
    out << kManifestHeader << "\n";
    out << "classes " << manifest.num_classes();
    for (const std::string& name : manifest.class_names) {
        if (name.find_first_of(" \t") != std::string::npos)
            throw std::runtime_error("class name contains whitespace: " + name);
        out << ' ' << name;
    }
    out << "\n";
    for (const SampleRecord& s : manifest.samples) {
        out << "sample " << s.path << ' ' << s.label;
        if (s.subdomain) out << ' ' << *s.subdomain;
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + manifest_path.string());
}

DatasetManifest load_manifest(const std::filesystem::path& manifest_path) {
    std::ifstream in = open_checked(manifest_path, kManifestHeader);
    const std::filesystem::path dir = manifest_path.parent_path();

    DatasetManifest manifest;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(manifest_path.string() + ": truncated");
    {
        std::istringstream ls(line);
        std::string tag;
        int c = 0;
        if (!(ls >> tag >> c) || tag != "classes" || c < 1)
            throw std::runtime_error(manifest_path.string() + ": bad classes line");
        manifest.class_names.resize(static_cast<std::size_t>(c));
        for (std::string& name : manifest.class_names)
            if (!(ls >> name))
                throw std::runtime_error(manifest_path.string() + ": bad classes line");
    }

    std::size_t index = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag, rel;
        int label = 0;
        if (!(ls >> tag >> rel >> label) || tag != "sample")
            throw std::runtime_error(manifest_path.string() + ": bad sample line \"" + line + "\"");
        SampleRecord rec;
        rec.path = rel;
        rec.label = label;
        int sub = 0;
        if (ls >> sub) rec.subdomain = sub;
        if (label < 0 || label >= manifest.num_classes())
            throw std::runtime_error(manifest_path.string() + ": sample " + std::to_string(index) +
                                     " (" + rel + "): label " + std::to_string(label) +
                                     " out of range");
        Eigen::Matrix3Xd pts;
        try {
            pts = load_point_cloud(dir / rel);
        } catch (const std::exception& e) {
            throw std::runtime_error(manifest_path.string() + ": sample " + std::to_string(index) +
                                     ": " + e.what());
        }
        if (pts.cols() == 0)
            throw std::runtime_error(manifest_path.string() + ": sample " + std::to_string(index) +
                                     " (" + rel + "): empty point cloud");
        rec.cloud.points = pts;
        rec.cloud.label = label;
        rec.cloud = normalize(rec.cloud);
        rec.cloud.source_tag = rec.subdomain;
        manifest.samples.push_back(std::move(rec));
        ++index;
    }
    if (subdomain_count(manifest) > 0) validate_subdomains(manifest);
    return manifest;
}

void save_split_file(const std::vector<int>& assignment, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << kSplitHeader << "\n";
    for (std::size_t i = 0; i < assignment.size(); ++i)
        out << i << ' ' << assignment[i] << "\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<int> load_split_file(const std::filesystem::path& path) {
    std::ifstream in = open_checked(path, kSplitHeader);
    std::vector<int> assignment;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::size_t idx = 0;
        int sub = 0;
        if (!(ls >> idx >> sub))
            throw std::runtime_error(path.string() + ": bad split line \"" + line + "\"");
        if (idx != assignment.size())
            throw std::runtime_error(path.string() + ": split lines out of order");
        assignment.push_back(sub);
    }
    return assignment;
}

void apply_split(DatasetManifest& manifest, const std::vector<int>& assignment) {
    if (assignment.size() != manifest.samples.size())
        throw std::runtime_error("apply_split: assignment size mismatch");
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        manifest.samples[i].subdomain = assignment[i];
        manifest.samples[i].cloud.source_tag = assignment[i];
    }
    validate_subdomains(manifest);
}

}  // namespace sugdg
