#include <algorithm>
#include <map>
#include <set>

#include "qte/csv.hpp"
#include "qte/errors.hpp"
#include "qte/tabular.hpp"

namespace qte {

namespace {

// column indices in breast-cancer.data (class label first)
constexpr int kColClass = 0;
constexpr int kColAge = 1;
constexpr int kColTumorSize = 3;
constexpr int kColDegMalig = 6;
constexpr int kColBreastQuad = 8;
constexpr int kColumns = 10;

// feature-importance order: tumor-size, breast-quad, deg-malig, age
const std::vector<std::pair<std::string, int>> kSelected = {
    {"tumor-size", kColTumorSize},
    {"breast-quad", kColBreastQuad},
    {"deg-malig", kColDegMalig},
    {"age", kColAge},
};

std::string mode_of(const std::vector<std::string>& values) {
    std::map<std::string, int> counts;
    for (const auto& v : values) ++counts[v];
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it)
        if (it->second > best->second) best = it;
    return best->first;
}

} // namespace

LoadedDataset load_breast_cancer(const std::string& path) {
    auto rows = read_csv(path);
    if (rows.empty()) throw IngestError(path + " is empty");

    for (std::size_t r = 0; r < rows.size(); ++r)
        if (rows[r].size() != kColumns)
            throw IngestError(path + ": row " + std::to_string(r + 1) + " has " +
                              std::to_string(rows[r].size()) + " columns, expected 10");

    // impute '?' with the per-feature mode, then build lexicographic vocabularies
    LoadedDataset out;
    std::vector<std::vector<std::string>> values(kSelected.size());
    for (std::size_t f = 0; f < kSelected.size(); ++f) {
        std::vector<std::string> present;
        for (const auto& row : rows)
            if (row[kSelected[f].second] != "?") present.push_back(row[kSelected[f].second]);
        if (present.empty())
            throw IngestError(path + ": feature " + kSelected[f].first + " has no values");
        const std::string mode = mode_of(present);
        for (const auto& row : rows) {
            const std::string& raw = row[kSelected[f].second];
            values[f].push_back(raw == "?" ? mode : raw);
        }
        Feature feat;
        feat.name = kSelected[f].first;
        feat.kind = FeatureKind::Categorical;
        std::set<std::string> vocab(values[f].begin(), values[f].end());
        feat.vocabulary.assign(vocab.begin(), vocab.end());
        out.codec.features.push_back(std::move(feat));
    }

    if (out.codec.total_bits() != 12)
        throw IngestError(path + ": selected features encode to " +
                          std::to_string(out.codec.total_bits()) +
                          " bits, expected 12; vocabulary sizes differ from the published file");

    for (std::size_t r = 0; r < rows.size(); ++r) {
        Sample s;
        const std::string& cls = rows[r][kColClass];
        if (cls == "recurrence-events")
            s.label = 1;
        else if (cls == "no-recurrence-events")
            s.label = 0;
        else
            throw IngestError(path + ": row " + std::to_string(r + 1) +
                              " has unknown class '" + cls + "'");
        for (std::size_t f = 0; f < kSelected.size(); ++f) {
            const Feature& feat = out.codec.features[f];
            s.bits += ordinal_to_bits(feat.ordinal_of(values[f][r]), feat.bit_width());
        }
        out.samples.push_back(std::move(s));
    }
    return out;
}

} // namespace qte
