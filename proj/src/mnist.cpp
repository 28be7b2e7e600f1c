#include "qte/mnist.hpp"

#include <zlib.h>

#include <cstdint>
#include <fstream>
#include <map>
#include <set>

#include "qte/errors.hpp"

namespace qte {

namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;

// gzread handles both gzip-compressed and raw files transparently.
std::vector<std::uint8_t> read_whole(const std::string& path) {
    gzFile f = gzopen(path.c_str(), "rb");
    if (!f) throw IngestError("cannot open " + path);
    std::vector<std::uint8_t> data;
    std::uint8_t buf[1 << 16];
    int n;
    while ((n = gzread(f, buf, sizeof buf)) > 0) data.insert(data.end(), buf, buf + n);
    const bool bad = n < 0;
    gzclose(f);
    if (bad) throw IngestError("decompression failed for " + path);
    return data;
}

std::uint32_t be32(const std::vector<std::uint8_t>& d, std::size_t off) {
    return (std::uint32_t{d[off]} << 24) | (std::uint32_t{d[off + 1]} << 16) |
           (std::uint32_t{d[off + 2]} << 8) | std::uint32_t{d[off + 3]};
}

} // namespace

std::vector<Sample> load_mnist(const std::string& images_path, const std::string& labels_path,
                               bool drop_contradictions) {
    const auto img = read_whole(images_path);
    const auto lbl = read_whole(labels_path);
    if (img.size() < 16 || be32(img, 0) != kImageMagic)
        throw IngestError(images_path + ": not an IDX image file");
    if (lbl.size() < 8 || be32(lbl, 0) != kLabelMagic)
        throw IngestError(labels_path + ": not an IDX label file");
    const std::uint32_t count = be32(img, 4);
    const std::uint32_t rows = be32(img, 8);
    const std::uint32_t cols = be32(img, 12);
    if (be32(lbl, 4) != count)
        throw IngestError("image/label counts differ (" + std::to_string(count) + " vs " +
                          std::to_string(be32(lbl, 4)) + ")");
    if (rows != 28 || cols != 28)
        throw IngestError(images_path + ": expected 28x28 images, got " +
                          std::to_string(rows) + "x" + std::to_string(cols));
    if (img.size() != 16 + std::size_t{count} * rows * cols)
        throw IngestError(images_path + ": truncated image data");
    if (lbl.size() != 8 + std::size_t{count})
        throw IngestError(labels_path + ": truncated label data");

    std::vector<Sample> kept;
    for (std::uint32_t i = 0; i < count; ++i) {
        const int digit = lbl[8 + i];
        if (digit != 3 && digit != 6) continue;
        const std::uint8_t* px = img.data() + 16 + std::size_t{i} * 784;
        std::string bits(16, '0');
        for (int br = 0; br < 4; ++br)
            for (int bc = 0; bc < 4; ++bc) {
                // block-center pixel: bilinear resize at half-pixel centers
                // lands exactly on (7*br + 3, 7*bc + 3) for the 28 -> 4 ratio
                const double v = px[(br * 7 + 3) * 28 + (bc * 7 + 3)];
                if (v / 255.0 > 0.5) bits[static_cast<std::size_t>(br * 4 + bc)] = '1';
            }
        Sample s;
        s.bits = std::move(bits);
        s.label = digit == 6 ? 1 : 0;
        kept.push_back(std::move(s));
    }
    if (!drop_contradictions) return kept;

    // drop every image whose binarized pattern occurs with both labels
    std::map<std::string, std::set<int>> labels_seen;
    for (const Sample& s : kept) labels_seen[s.bits].insert(s.label);
    std::vector<Sample> out;
    for (Sample& s : kept)
        if (labels_seen[s.bits].size() == 1) out.push_back(std::move(s));
    return out;
}

void write_bits_corpus(const std::string& path, const std::vector<Sample>& samples) {
    std::ofstream f(path);
    if (!f) throw IngestError("cannot write " + path);
    for (const Sample& s : samples) f << s.bits << ',' << s.label << '\n';
    if (!f) throw IngestError("write failed for " + path);
}

std::vector<Sample> read_bits_corpus(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IngestError("cannot open " + path);
    std::vector<Sample> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || comma + 2 != line.size() ||
            (line[comma + 1] != '0' && line[comma + 1] != '1'))
            throw IngestError(path + ": bad record at line " + std::to_string(lineno));
        Sample s;
        s.bits = line.substr(0, comma);
        for (char c : s.bits)
            if (c != '0' && c != '1')
                throw IngestError(path + ": bad bit at line " + std::to_string(lineno));
        s.label = line[comma + 1] - '0';
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace qte
