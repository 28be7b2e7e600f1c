#pragma once

#include <string>
#include <vector>

#include "qte/codec.hpp"
#include "qte/dataset.hpp"

namespace qte {

struct LoadedDataset {
    std::vector<Sample> samples;
    FeatureCodec codec;
};

// UCI breast-cancer.data (Ljubljana recurrence set): 286 comma-separated
// rows, class label first. Keeps tumor-size, breast-quad, deg-malig and age;
// label 1 = recurrence-events. Missing '?' values take the feature's mode.
LoadedDataset load_breast_cancer(const std::string& path);

enum class TitanicMode {
    // sex/pclass as categorical bits, age/fare min-max rescaled to [0, 2pi)
    Mixed,
    // age/fare quartile-binned to 2 bits each: 1+2+2+2 = 7 bits
    DiscreteOnly,
};

// Kaggle-format train.csv with a header row (Survived, Pclass, Sex, Age,
// Fare columns). Missing ages take the median. The unlabelled test.csv is
// not used; all evaluation is cross-validated on the training file.
LoadedDataset load_titanic(const std::string& train_csv, TitanicMode mode);

} // namespace qte
