#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace tvs::cli {

/// SHA-1 of "blob <size>\0<content>", the object id git assigns to a file.
std::string git_blob_sha1(std::string_view content);
std::string git_blob_sha1_file(const std::filesystem::path& file);

/// Writes manifest.json into dir: the given run description plus size and
/// content hash of every other regular file in dir.
void write_manifest(const std::filesystem::path& dir, nlohmann::json run);

} // namespace tvs::cli
