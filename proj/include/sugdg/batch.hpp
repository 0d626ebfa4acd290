#pragma once

#include <cstdint>
#include <vector>

#include "sugdg/manifest.hpp"

namespace sugdg {

struct Batch {
    std::vector<PointCloud> clouds;
    std::vector<int> labels;
    std::vector<int> subdomains;  // -1 when untagged
    std::vector<int> indices;     // positions in the source manifest
    int size() const { return static_cast<int>(clouds.size()); }
};

// One epoch of sub-domain batches: each batch draws batch_size/K samples from
// every sub-domain loader, shuffled per epoch. The epoch length follows the
// largest loader; shorter loaders re-shuffle and restart so every batch sees
// all K sub-domains. Within one shuffle cycle no sample repeats.
std::vector<Batch> make_batches(const DatasetManifest& manifest, int batch_size,
                                std::uint64_t epoch_seed);

// One epoch of plain shuffled batches of batch_size (partial tail dropped).
std::vector<Batch> make_plain_batches(const DatasetManifest& manifest, int batch_size,
                                      std::uint64_t epoch_seed);

}  // namespace sugdg
