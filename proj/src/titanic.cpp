#include <algorithm>
#include <cmath>
#include <set>

#include "qte/csv.hpp"
#include "qte/errors.hpp"
#include "qte/tabular.hpp"

namespace qte {

namespace {

int column_index(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    throw IngestError("missing column '" + name + "' in Titanic header");
}

double parse_double(const std::string& raw, std::size_t row, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw IngestError("row " + std::to_string(row) + ": bad " + what + " value '" + raw +
                          "'");
    }
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// nearest-rank quartile thresholds q1, q2, q3
std::vector<double> quartile_edges(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    std::vector<double> edges;
    for (int k = 1; k <= 3; ++k) edges.push_back(v[std::min(n - 1, n * k / 4)]);
    return edges;
}

} // namespace

LoadedDataset load_titanic(const std::string& train_csv, TitanicMode mode) {
    auto rows = read_csv(train_csv);
    if (rows.size() < 2) throw IngestError(train_csv + " has no data rows");
    const auto header = rows.front();
    const int col_survived = column_index(header, "Survived");
    const int col_pclass = column_index(header, "Pclass");
    const int col_sex = column_index(header, "Sex");
    const int col_age = column_index(header, "Age");
    const int col_fare = column_index(header, "Fare");

    struct Row {
        int label;
        std::string sex, pclass;
        double age, fare;
        bool age_missing;
    };
    std::vector<Row> parsed;
    std::vector<double> ages_present, fares;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != header.size())
            throw IngestError(train_csv + ": row " + std::to_string(r + 1) + " has " +
                              std::to_string(row.size()) + " columns, expected " +
                              std::to_string(header.size()));
        Row p;
        const std::string& surv = row[col_survived];
        if (surv != "0" && surv != "1")
            throw IngestError("row " + std::to_string(r + 1) + ": bad Survived value '" +
                              surv + "'");
        p.label = surv == "1";
        p.sex = row[col_sex];
        p.pclass = row[col_pclass];
        p.age_missing = row[col_age].empty();
        p.age = p.age_missing ? 0.0 : parse_double(row[col_age], r + 1, "Age");
        p.fare = parse_double(row[col_fare], r + 1, "Fare");
        if (!p.age_missing) ages_present.push_back(p.age);
        fares.push_back(p.fare);
        parsed.push_back(std::move(p));
    }
    if (ages_present.empty()) throw IngestError(train_csv + ": every Age value is missing");

    const double age_median = median_of(ages_present);
    std::vector<double> ages;
    for (auto& p : parsed) {
        if (p.age_missing) p.age = age_median;
        ages.push_back(p.age);
    }

    LoadedDataset out;
    auto categorical = [&](const std::string& name, auto accessor) {
        Feature f;
        f.name = name;
        f.kind = FeatureKind::Categorical;
        std::set<std::string> vocab;
        for (const auto& p : parsed) vocab.insert(accessor(p));
        f.vocabulary.assign(vocab.begin(), vocab.end());
        return f;
    };
    auto binned = [&](const std::string& name, const std::vector<double>& values) {
        Feature f;
        f.name = name;
        f.kind = FeatureKind::BinnedContinuous;
        f.bin_edges = quartile_edges(values);
        return f;
    };
    auto rescaled = [&](const std::string& name, const std::vector<double>& values) {
        Feature f;
        f.name = name;
        f.kind = FeatureKind::RescaledContinuous;
        f.min = *std::min_element(values.begin(), values.end());
        f.max = *std::max_element(values.begin(), values.end());
        return f;
    };

    // feature-importance order: sex, age, pclass, fare
    if (mode == TitanicMode::DiscreteOnly) {
        out.codec.features.push_back(categorical("sex", [](const Row& p) { return p.sex; }));
        out.codec.features.push_back(binned("age", ages));
        out.codec.features.push_back(categorical("pclass", [](const Row& p) { return p.pclass; }));
        out.codec.features.push_back(binned("fare", fares));
    } else {
        out.codec.features.push_back(categorical("sex", [](const Row& p) { return p.sex; }));
        out.codec.features.push_back(categorical("pclass", [](const Row& p) { return p.pclass; }));
        out.codec.features.push_back(rescaled("age", ages));
        out.codec.features.push_back(rescaled("fare", fares));
    }

    for (const auto& p : parsed) {
        Sample s;
        s.label = p.label;
        for (const Feature& f : out.codec.features) {
            switch (f.kind) {
            case FeatureKind::Categorical: {
                const std::string& raw = (f.name == "sex") ? p.sex : p.pclass;
                s.bits += ordinal_to_bits(f.ordinal_of(raw), f.bit_width());
                break;
            }
            case FeatureKind::BinnedContinuous: {
                const double v = (f.name == "age") ? p.age : p.fare;
                s.bits += ordinal_to_bits(f.bin_of(v), f.bit_width());
                break;
            }
            case FeatureKind::RescaledContinuous: {
                const double v = (f.name == "age") ? p.age : p.fare;
                s.reals.push_back(f.rescale(v));
                break;
            }
            }
        }
        out.samples.push_back(std::move(s));
    }
    return out;
}

} // namespace qte
