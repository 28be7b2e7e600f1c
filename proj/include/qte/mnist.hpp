#pragma once

#include <string>
#include <vector>

#include "qte/dataset.hpp"

namespace qte {

// Loads an IDX image/label pair (gzip or raw), keeps digits 3 and 6,
// downscales 28x28 -> 4x4 and relabels 3 -> 0, 6 -> 1. The downscale is a
// bilinear resize with half-pixel centers, which at this exact 7:1 ratio
// reduces to sampling the pixel at each block center; the sample is then
// binarized at half of the maximum intensity. With drop_contradictions set,
// binarized images that occur with both labels are removed entirely (the
// treatment of training data; evaluation sets keep them).
std::vector<Sample> load_mnist(const std::string& images_path, const std::string& labels_path,
                               bool drop_contradictions = true);

// Processed-corpus cache: newline-delimited `bits,label` records.
void write_bits_corpus(const std::string& path, const std::vector<Sample>& samples);
std::vector<Sample> read_bits_corpus(const std::string& path);

} // namespace qte
