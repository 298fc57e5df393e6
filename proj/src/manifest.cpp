#include "swseg/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "swseg/common.hpp"

namespace swseg {

std::vector<ManifestEntry> load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open manifest '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("'" + path + "': " + e.what());
    }
    if (!doc.is_array()) throw DataError("'" + path + "': manifest must be a JSON array");

    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return (fp.is_absolute() ? fp : base / fp).string();
    };

    std::vector<ManifestEntry> entries;
    std::set<std::string> ids;
    for (const auto& item : doc) {
        ManifestEntry entry;
        try {
            entry.image_path = resolve(item.at("image").get<std::string>());
            if (item.contains("id"))
                entry.id = item.at("id").get<std::string>();
            else
                entry.id = std::filesystem::path(entry.image_path).stem().string();
            if (item.contains("labels"))
                entry.labels_path = resolve(item.at("labels").get<std::string>());
            if (item.contains("judgments"))
                entry.judgments_path = resolve(item.at("judgments").get<std::string>());
        } catch (const nlohmann::json::exception& e) {
            throw DataError("'" + path + "': " + e.what());
        }
        if (!ids.insert(entry.id).second)
            throw DataError("'" + path + "': duplicate image id '" + entry.id + "'");
        entries.push_back(std::move(entry));
    }
    if (entries.empty()) throw DataError("'" + path + "': manifest is empty");
    return entries;
}

}  // namespace swseg
