#include "manifest.hpp"

#include "tvs/error.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <vector>

namespace tvs::cli {

std::string git_blob_sha1(std::string_view content)
{
    const std::string header = "blob " + std::to_string(content.size()) + '\0';
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha1(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), header.data(), header.size()) != 1 ||
        EVP_DigestUpdate(ctx.get(), content.data(), content.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
        throw Error(ErrorKind::Io, "SHA-1 digest failed");
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i)
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return hex.str();
}

std::string git_blob_sha1_file(const std::filesystem::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Io, "cannot read " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string content = buf.str();
    return git_blob_sha1(std::string_view(content));
}

void write_manifest(const std::filesystem::path& dir, nlohmann::json run)
{
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().filename() != "manifest.json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    nlohmann::json outputs = nlohmann::json::array();
    for (const auto& f : files)
        outputs.push_back({{"file", f.filename().string()},
                           {"bytes", std::filesystem::file_size(f)},
                           {"git_blob_sha1", git_blob_sha1_file(f)}});
    run["outputs"] = outputs;
    std::ofstream out(dir / "manifest.json");
    if (!out)
        throw Error(ErrorKind::Io, "cannot write manifest in " + dir.string());
    out << run.dump(2) << '\n';
}

} // namespace tvs::cli
