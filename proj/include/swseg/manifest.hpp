#pragma once

#include <optional>
#include <string>
#include <vector>

namespace swseg {

/// One dataset image: the image file, an optional external fine partition and
/// an optional judgment file for WHDR scoring. Paths are stored resolved.
struct ManifestEntry {
    std::string id;
    std::string image_path;
    std::optional<std::string> labels_path;
    std::optional<std::string> judgments_path;
};

/// JSON array of {image, id?, labels?, judgments?}; relative paths are
/// resolved against the manifest's directory.
std::vector<ManifestEntry> load_manifest(const std::string& path);

}  // namespace swseg
