#include "qte/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <bit>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>

#include "json.hpp"

#include "qte/encoding.hpp"
#include "qte/errors.hpp"
#include "qte/mnist.hpp"
#include "qte/parallel.hpp"
#include "qte/param_shift.hpp"
#include "qte/qnn.hpp"
#include "qte/rng.hpp"
#include "qte/spread.hpp"
#include "qte/tabular.hpp"
#include "qte/vqc.hpp"
#include "qte/zz_feature_map.hpp"

namespace qte {

using nlohmann::json;

// ---------------------------------------------------------------------------
// enum names

std::string to_string(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::Parity: return "parity";
    case ExperimentKind::BreastCancer: return "bc";
    case ExperimentKind::Titanic: return "titanic";
    case ExperimentKind::Mnist: return "mnist";
    case ExperimentKind::OptimizerSelftest: return "optimizer-selftest";
    }
    return "?";
}

std::string to_string(EmbeddingKind k) {
    switch (k) {
    case EmbeddingKind::Naive: return "naive";
    case EmbeddingKind::Qrac: return "qrac";
    case EmbeddingKind::NCopiesQrac: return "ncopies-qrac";
    case EmbeddingKind::TE: return "te";
    case EmbeddingKind::RegTE: return "reg-te";
    case EmbeddingKind::ZZ: return "zz";
    case EmbeddingKind::QracZZ: return "qrac+zz";
    case EmbeddingKind::TeZZ: return "te+zz";
    case EmbeddingKind::ConvQrac: return "conv-qrac";
    case EmbeddingKind::ConvTE: return "conv-te";
    case EmbeddingKind::Conv41TE: return "conv41-te";
    }
    return "?";
}

std::string to_string(OptimizerKind k) { return k == OptimizerKind::Spsa ? "spsa" : "adam"; }
std::string to_string(Entanglement e) { return e == Entanglement::Full ? "full" : "linear"; }
std::string to_string(TeInit m) { return m == TeInit::Random ? "random" : "qrac-corners"; }

namespace {
template <typename T>
T enum_from(const std::string& s, std::initializer_list<T> values, const char* what) {
    for (T v : values)
        if (to_string(v) == s) return v;
    throw ConfigError(std::string("unknown ") + what + " '" + s + "'");
}
} // namespace

ExperimentKind experiment_from_string(const std::string& s) {
    return enum_from(s,
                     {ExperimentKind::Parity, ExperimentKind::BreastCancer,
                      ExperimentKind::Titanic, ExperimentKind::Mnist,
                      ExperimentKind::OptimizerSelftest},
                     "experiment");
}
EmbeddingKind embedding_from_string(const std::string& s) {
    return enum_from(s,
                     {EmbeddingKind::Naive, EmbeddingKind::Qrac, EmbeddingKind::NCopiesQrac,
                      EmbeddingKind::TE, EmbeddingKind::RegTE, EmbeddingKind::ZZ,
                      EmbeddingKind::QracZZ, EmbeddingKind::TeZZ, EmbeddingKind::ConvQrac,
                      EmbeddingKind::ConvTE, EmbeddingKind::Conv41TE},
                     "embedding");
}
OptimizerKind optimizer_from_string(const std::string& s) {
    return enum_from(s, {OptimizerKind::Spsa, OptimizerKind::Adam}, "optimizer");
}
Entanglement entanglement_from_string(const std::string& s) {
    return enum_from(s, {Entanglement::Full, Entanglement::Linear}, "entanglement");
}
TeInit te_init_from_string(const std::string& s) {
    return enum_from(s, {TeInit::Random, TeInit::QracCorners}, "te-init mode");
}

// ---------------------------------------------------------------------------
// config

namespace {

bool uses_table(EmbeddingKind e) {
    return e == EmbeddingKind::TE || e == EmbeddingKind::RegTE || e == EmbeddingKind::TeZZ ||
           e == EmbeddingKind::ConvTE || e == EmbeddingKind::Conv41TE;
}

bool uses_zz(EmbeddingKind e) {
    return e == EmbeddingKind::ZZ || e == EmbeddingKind::QracZZ || e == EmbeddingKind::TeZZ;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

void ExperimentConfig::resolve() {
    if (epochs == 0) {
        switch (experiment) {
        case ExperimentKind::Parity: epochs = 400; break;
        case ExperimentKind::BreastCancer: epochs = 200; break;
        case ExperimentKind::Titanic: epochs = 300; break;
        case ExperimentKind::Mnist: epochs = 10; break;
        case ExperimentKind::OptimizerSelftest: epochs = 400; break;
        }
    }
    if (lambda < 0) lambda = (embedding == EmbeddingKind::RegTE) ? 0.02 : 0.0;
    if (experiment == ExperimentKind::Mnist) optimizer = OptimizerKind::Adam;
    if (embedding == EmbeddingKind::QracZZ || embedding == EmbeddingKind::TeZZ)
        titanic_mixed = true;
    if (data_dir.empty()) {
        const char* env = std::getenv("QTE_DATA_DIR");
        data_dir = env ? env : "data";
    }
    auto fill = [&](std::string& path, const char* rel) {
        if (path.empty()) path = data_dir + "/" + rel;
    };
    fill(bc_file, "breast-cancer.data");
    fill(titanic_file, "titanic/train.csv");
    fill(mnist_train_images, "mnist/train-images-idx3-ubyte.gz");
    fill(mnist_train_labels, "mnist/train-labels-idx1-ubyte.gz");
    fill(mnist_test_images, "mnist/t10k-images-idx3-ubyte.gz");
    fill(mnist_test_labels, "mnist/t10k-labels-idx1-ubyte.gz");
}

void ExperimentConfig::validate() const {
    if (epochs < 1) throw ConfigError("epochs must be >= 1");
    if (depth < 0) throw ConfigError("depth must be >= 0");
    if (repeats < 1) throw ConfigError("repeats must be >= 1");
    if (shots < 0) throw ConfigError("shots must be >= 0");
    if (copies < 1) throw ConfigError("copies must be >= 1");
    if (lambda < 0) throw ConfigError("lambda must be >= 0");
    if (batch_size < 1) throw ConfigError("batch size must be >= 1");
    if (embedding == EmbeddingKind::RegTE && lambda == 0)
        throw ConfigError("reg-te needs lambda > 0");

    const bool conv = embedding == EmbeddingKind::ConvQrac || embedding == EmbeddingKind::ConvTE ||
                      embedding == EmbeddingKind::Conv41TE;
    switch (experiment) {
    case ExperimentKind::Parity:
        if (parity_bits < 1 || parity_bits > 12)
            throw ConfigError("parity width must be in [1, 12]");
        if (conv || uses_zz(embedding))
            throw ConfigError("embedding '" + to_string(embedding) +
                              "' is not defined for parity inputs");
        if (optimizer != OptimizerKind::Spsa)
            throw ConfigError("parity VQCs train with SPSA");
        break;
    case ExperimentKind::BreastCancer:
        if (conv || embedding == EmbeddingKind::QracZZ || embedding == EmbeddingKind::TeZZ)
            throw ConfigError("embedding '" + to_string(embedding) +
                              "' is not defined for the BC dataset");
        if (optimizer != OptimizerKind::Spsa) throw ConfigError("BC VQCs train with SPSA");
        break;
    case ExperimentKind::Titanic:
        if (conv)
            throw ConfigError("convolutional embeddings are for 4x4 images only");
        if (folds < 2) throw ConfigError("cross validation needs at least 2 folds");
        if (optimizer != OptimizerKind::Spsa) throw ConfigError("TS VQCs train with SPSA");
        break;
    case ExperimentKind::Mnist:
        if (uses_zz(embedding) || embedding == EmbeddingKind::NCopiesQrac)
            throw ConfigError("embedding '" + to_string(embedding) +
                              "' is not defined for the MNIST pipeline");
        if (optimizer != OptimizerKind::Adam) throw ConfigError("the MNIST QNN trains with Adam");
        break;
    case ExperimentKind::OptimizerSelftest:
        break;
    }
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    auto get = [&](const char* key, auto& target) {
        if (j.contains(key)) target = j.at(key).template get<std::decay_t<decltype(target)>>();
    };
    if (j.contains("experiment")) c.experiment = experiment_from_string(j.at("experiment"));
    if (j.contains("embedding")) c.embedding = embedding_from_string(j.at("embedding"));
    if (j.contains("entanglement"))
        c.entanglement = entanglement_from_string(j.at("entanglement"));
    if (j.contains("optimizer")) c.optimizer = optimizer_from_string(j.at("optimizer"));
    if (j.contains("te_init")) c.te_init_mode = te_init_from_string(j.at("te_init"));
    get("copies", c.copies);
    get("lambda", c.lambda);
    get("epochs", c.epochs);
    get("depth", c.depth);
    get("seed", c.seed);
    get("shots", c.shots);
    get("repeats", c.repeats);
    get("parity_bits", c.parity_bits);
    get("folds", c.folds);
    get("batch_size", c.batch_size);
    get("sample_cap_train", c.sample_cap_train);
    get("sample_cap_test", c.sample_cap_test);
    get("titanic_mixed", c.titanic_mixed);
    get("data_dir", c.data_dir);
    get("bc_file", c.bc_file);
    get("titanic_file", c.titanic_file);
    get("mnist_train_images", c.mnist_train_images);
    get("mnist_train_labels", c.mnist_train_labels);
    get("mnist_test_images", c.mnist_test_images);
    get("mnist_test_labels", c.mnist_test_labels);
    get("mnist_train_corpus", c.mnist_train_corpus);
    get("mnist_test_corpus", c.mnist_test_corpus);
    get("out_dir", c.out_dir);
    get("verbose", c.verbose);
    if (j.contains("spsa")) {
        const json& s = j.at("spsa");
        if (s.contains("a")) c.spsa.a = s.at("a");
        if (s.contains("c")) c.spsa.c = s.at("c");
        if (s.contains("alpha")) c.spsa.alpha = s.at("alpha");
        if (s.contains("gamma")) c.spsa.gamma = s.at("gamma");
        if (s.contains("A")) c.spsa.A = s.at("A");
    }
    if (j.contains("adam")) {
        const json& a = j.at("adam");
        if (a.contains("lr")) c.adam.lr = a.at("lr");
        if (a.contains("beta1")) c.adam.beta1 = a.at("beta1");
        if (a.contains("beta2")) c.adam.beta2 = a.at("beta2");
        if (a.contains("eps")) c.adam.eps = a.at("eps");
    }
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    return json{
        {"experiment", to_string(c.experiment)},
        {"embedding", to_string(c.embedding)},
        {"copies", c.copies},
        {"lambda", c.lambda},
        {"epochs", c.epochs},
        {"depth", c.depth},
        {"entanglement", to_string(c.entanglement)},
        {"seed", c.seed},
        {"shots", c.shots},
        {"repeats", c.repeats},
        {"parity_bits", c.parity_bits},
        {"folds", c.folds},
        {"te_init", to_string(c.te_init_mode)},
        {"optimizer", to_string(c.optimizer)},
        {"spsa",
         {{"a", c.spsa.a},
          {"c", c.spsa.c},
          {"alpha", c.spsa.alpha},
          {"gamma", c.spsa.gamma},
          {"A", c.spsa.A}}},
        {"adam",
         {{"lr", c.adam.lr}, {"beta1", c.adam.beta1}, {"beta2", c.adam.beta2}, {"eps", c.adam.eps}}},
        {"batch_size", c.batch_size},
        {"sample_cap_train", c.sample_cap_train},
        {"sample_cap_test", c.sample_cap_test},
        {"titanic_mixed", c.titanic_mixed},
        {"data_dir", c.data_dir},
        {"bc_file", c.bc_file},
        {"titanic_file", c.titanic_file},
        {"mnist_train_images", c.mnist_train_images},
        {"mnist_train_labels", c.mnist_train_labels},
        {"mnist_test_images", c.mnist_test_images},
        {"mnist_test_labels", c.mnist_test_labels},
        {"mnist_train_corpus", c.mnist_train_corpus},
        {"mnist_test_corpus", c.mnist_test_corpus},
        {"out_dir", c.out_dir},
        {"verbose", c.verbose},
    };
}

std::vector<int> decode_ordinals(const FeatureCodec& codec, const std::string& bits) {
    std::vector<int> out;
    std::size_t pos = 0;
    for (const Feature& f : codec.features) {
        const int w = f.bit_width();
        if (w == 0) {
            out.push_back(-1);
            continue;
        }
        if (pos + static_cast<std::size_t>(w) > bits.size())
            throw std::invalid_argument("bitstring shorter than the codec");
        out.push_back(bits_to_ordinal(std::string_view(bits).substr(pos, w)));
        pos += static_cast<std::size_t>(w);
    }
    return out;
}

// ---------------------------------------------------------------------------
// shared training machinery

namespace {

struct TableShape {
    int chunk_bits = 0;
    int slots = 0;
    std::size_t param_count() const {
        return static_cast<std::size_t>(slots) * (std::size_t{1} << chunk_bits) * 2;
    }
};

double shot_probability(const StateVector& s, bool parity_readout, int readout_qubit, int shots,
                        std::uint64_t seed) {
    auto counts = s.sample_counts(shots, seed);
    std::int64_t hits = 0;
    for (const auto& [idx, n] : counts) {
        const bool one = parity_readout ? (std::popcount(idx) & 1)
                                        : ((idx >> readout_qubit) & 1);
        if (one) hits += n;
    }
    return static_cast<double>(hits) / shots;
}

// One VQC training run: SPSA over [ansatz | table] on the regularized loss.
struct VqcTask {
    std::vector<Sample> train;
    const std::vector<Sample>* eval_train = nullptr;
    const std::vector<Sample>* eval_test = nullptr;
    std::optional<EncodingScheme> scheme;
    bool use_table = false;
    bool use_zz = false;
    int zz_offset = 0;
    int num_qubits = 0;
    RyRzAnsatz ansatz;
    double lambda = 0;
    int epochs = 1;
    SpsaGains gains;
    int shots = 0;
    std::uint64_t seed = 1;
    TeInit init_mode = TeInit::Random;
    bool verbose = false;
    std::string tag;
};

Circuit vqc_embedding(const Sample& s, const VqcTask& t, const EmbeddingTable* table) {
    Circuit c(t.num_qubits);
    if (t.scheme) c.append_shifted(embed_bitstring(s.bits, *t.scheme, table), 0);
    if (t.use_zz) c.append_shifted(zz_feature_map(s.reals), t.zz_offset);
    return c;
}

RunResult train_vqc(const VqcTask& t) {
    const int na = t.ansatz.param_count();
    TableShape shape;
    if (t.use_table) shape = {t.scheme->chunk_bits, t.scheme->slots()};
    const std::size_t nt = t.use_table ? shape.param_count() : 0;

    std::vector<double> params(static_cast<std::size_t>(na) + nt);
    Rng rng(mix_seed(t.seed, 0x5acc));
    for (int i = 0; i < na; ++i)
        params[static_cast<std::size_t>(i)] = uniform_double(rng, -std::numbers::pi, std::numbers::pi);
    EmbeddingTable table(t.use_table ? shape.chunk_bits : 3, t.use_table ? shape.slots : 1);
    if (t.use_table) {
        table = te_init(shape.chunk_bits, shape.slots, t.init_mode, mix_seed(t.seed, 0x7ab1e));
        std::copy(table.params().begin(), table.params().end(), params.begin() + na);
    }

    // fixed embeddings never change, so their states are built once
    std::vector<StateVector> cache;
    if (!t.use_table) {
        cache.reserve(t.train.size());
        for (const Sample& s : t.train) cache.push_back(run_circuit(vqc_embedding(s, t, nullptr)));
    }

    std::uint64_t eval_calls = 0;
    struct Components {
        double data, spread;
    };
    std::vector<Components> step_evals;

    auto loss_fn = [&](std::span<const double> p) -> double {
        EmbeddingTable* tbl = nullptr;
        if (t.use_table) {
            table.load(p.subspan(static_cast<std::size_t>(na)));
            tbl = &table;
        }
        Circuit w(t.num_qubits);
        t.ansatz.append_to(w, p.first(static_cast<std::size_t>(na)));
        const std::uint64_t call = eval_calls++;
        const double data =
            parallel_sum(t.train.size(),
                         [&](std::size_t i) {
                             double p1;
                             if (!t.use_table) {
                                 StateVector s = cache[i];
                                 s.apply(w);
                                 p1 = t.shots > 0
                                          ? shot_probability(s, true, 0, t.shots,
                                                             mix_seed(t.seed ^ call, i))
                                          : parity_probability(s);
                             } else {
                                 StateVector s = run_circuit(vqc_embedding(t.train[i], t, tbl));
                                 s.apply(w);
                                 p1 = t.shots > 0
                                          ? shot_probability(s, true, 0, t.shots,
                                                             mix_seed(t.seed ^ call, i))
                                          : parity_probability(s);
                             }
                             return bce_loss(p1, t.train[i].label);
                         }) /
            static_cast<double>(t.train.size());
        const double spread = t.use_table ? spread_loss(table) : 0.0;
        step_evals.push_back({data, spread});
        return data + t.lambda * spread;
    };

    RunResult out;
    out.seed = t.seed;
    Spsa spsa(t.gains, mix_seed(t.seed, 0x5b5a));
    for (int k = 0; k < t.epochs; ++k) {
        step_evals.clear();
        auto res = spsa.step(params, k, loss_fn);
        if (res.skipped) ++out.skipped_steps;
        const double data = (step_evals[0].data + step_evals[1].data) / 2;
        const double spread = (step_evals[0].spread + step_evals[1].spread) / 2;
        out.epochs.push_back(make_loss_report(k, data, spread, t.lambda));
        if (t.verbose)
            std::fprintf(stderr, "[%s] epoch %d total=%.6f data=%.6f spread=%.6f\n",
                         t.tag.c_str(), k, out.epochs.back().total, data, spread);
    }

    // final predictions
    EmbeddingTable* tbl = nullptr;
    if (t.use_table) {
        table.load(std::span<const double>(params).subspan(static_cast<std::size_t>(na)));
        tbl = &table;
        out.trained_te.assign(table.params().begin(), table.params().end());
    }
    Circuit w(t.num_qubits);
    t.ansatz.append_to(w, std::span<const double>(params).first(static_cast<std::size_t>(na)));
    auto predict_all = [&](const std::vector<Sample>& set) {
        std::vector<int> preds(set.size());
        parallel_for(set.size(), [&](std::size_t i) {
            StateVector s = run_circuit(vqc_embedding(set[i], t, tbl));
            s.apply(w);
            const double p1 = t.shots > 0
                                  ? shot_probability(s, true, 0, t.shots,
                                                     mix_seed(t.seed ^ 0xe4a1, i))
                                  : parity_probability(s);
            preds[i] = vqc_label(p1);
        });
        return preds;
    };
    auto labels_of = [](const std::vector<Sample>& set) {
        std::vector<int> l(set.size());
        for (std::size_t i = 0; i < set.size(); ++i) l[i] = set[i].label;
        return l;
    };
    auto train_preds = predict_all(*t.eval_train);
    auto train_labels = labels_of(*t.eval_train);
    out.train = compute_metrics(train_preds, train_labels);
    auto test_preds = predict_all(*t.eval_test);
    auto test_labels = labels_of(*t.eval_test);
    out.test = compute_metrics(test_preds, test_labels);
    return out;
}

// One QNN training run: Adam with parameter-shift gradients over
// [readout | table].
struct QnnTask {
    std::vector<Sample> train;
    const std::vector<Sample>* eval_train = nullptr;
    const std::vector<Sample>* eval_test = nullptr;
    EncodingScheme scheme;
    bool use_table = false;
    double lambda = 0;
    int epochs = 10;
    AdamConfig adam;
    int batch_size = 32;
    int shots = 0;
    std::uint64_t seed = 1;
    TeInit init_mode = TeInit::Random;
    bool verbose = false;
    std::string tag;
};

RunResult train_qnn(const QnnTask& t) {
    const QnnReadout readout{t.scheme.num_qubits()};
    const int nr = readout.param_count();
    TableShape shape;
    if (t.use_table) shape = {t.scheme.chunk_bits, t.scheme.slots()};
    const std::size_t nt = t.use_table ? shape.param_count() : 0;
    const std::size_t np = static_cast<std::size_t>(nr) + nt;

    std::vector<double> params(np);
    Rng rng(mix_seed(t.seed, 0xada0));
    for (int i = 0; i < nr; ++i)
        params[static_cast<std::size_t>(i)] = uniform_double(rng, 0.0, 2.0 * std::numbers::pi);
    EmbeddingTable table(t.use_table ? shape.chunk_bits : 3, t.use_table ? shape.slots : 1);
    if (t.use_table) {
        table = te_init(shape.chunk_bits, shape.slots, t.init_mode, mix_seed(t.seed, 0x7ab1e));
        std::copy(table.params().begin(), table.params().end(),
                  params.begin() + static_cast<std::size_t>(nr));
    }

    // forward pass on a scratch parameter vector
    auto forward = [&](const Sample& s, std::span<const double> p,
                       std::uint64_t shot_seed) -> double {
        Circuit emb;
        if (t.use_table) {
            EmbeddingTable local(shape.chunk_bits, shape.slots);
            local.load(p.subspan(static_cast<std::size_t>(nr)));
            emb = embed_bitstring(s.bits, t.scheme, &local);
        } else {
            emb = embed_bitstring(s.bits, t.scheme);
        }
        if (t.shots > 0) {
            StateVector sv(readout.total_qubits());
            sv.apply(emb);
            Circuit w(readout.total_qubits());
            readout.append_to(w, p.first(static_cast<std::size_t>(nr)));
            sv.apply(w);
            return shot_probability(sv, false, readout.num_inputs, t.shots, shot_seed);
        }
        return qnn_label1_probability(emb, readout, p.first(static_cast<std::size_t>(nr)));
    };

    RunResult out;
    out.seed = t.seed;
    AdamState state;
    std::vector<std::size_t> order(t.train.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::uint64_t eval_calls = 0;
    for (int epoch = 0; epoch < t.epochs; ++epoch) {
        shuffle_in_place(order, rng);
        double epoch_loss = 0;
        std::size_t seen = 0;
        for (std::size_t start = 0; start < order.size();
             start += static_cast<std::size_t>(t.batch_size)) {
            const std::size_t stop =
                std::min(order.size(), start + static_cast<std::size_t>(t.batch_size));
            const std::size_t bn = stop - start;
            const std::uint64_t call = eval_calls++;

            // grad buffer carries the batch loss in its last slot
            std::vector<double> acc;
            parallel_accumulate(
                bn, np + 1,
                [&](std::size_t bi, std::vector<double>& local) {
                    const Sample& s = t.train[order[start + bi]];
                    std::vector<double> scratch(params);
                    const std::uint64_t shot_seed = mix_seed(t.seed ^ call, bi);
                    const double p = forward(s, scratch, shot_seed);
                    local[np] += bce_loss(p, s.label);
                    const double dldp = bce_grad(p, s.label);
                    auto shift_grad = [&](std::size_t j) {
                        const double orig = scratch[j];
                        scratch[j] = orig + std::numbers::pi / 2;
                        const double fp = forward(s, scratch, shot_seed);
                        scratch[j] = orig - std::numbers::pi / 2;
                        const double fm = forward(s, scratch, shot_seed);
                        scratch[j] = orig;
                        return (fp - fm) / 2.0;
                    };
                    for (int j = 0; j < nr; ++j)
                        local[static_cast<std::size_t>(j)] +=
                            dldp * shift_grad(static_cast<std::size_t>(j));
                    if (t.use_table) {
                        for (int slot = 0; slot < t.scheme.slots(); ++slot) {
                            const int e = scheme_entry(t.scheme, slot, s.bits);
                            const std::size_t base =
                                static_cast<std::size_t>(nr) +
                                (static_cast<std::size_t>(slot) *
                                     (std::size_t{1} << shape.chunk_bits) +
                                 static_cast<std::size_t>(e)) *
                                    2;
                            local[base] += dldp * shift_grad(base);
                            local[base + 1] += dldp * shift_grad(base + 1);
                        }
                    }
                },
                acc);

            for (std::size_t j = 0; j < np; ++j) acc[j] /= static_cast<double>(bn);
            epoch_loss += acc[np];
            seen += bn;
            if (t.use_table && t.lambda > 0) {
                table.load(std::span<const double>(params).subspan(static_cast<std::size_t>(nr)));
                add_spread_grad(table, t.lambda,
                                std::span<double>(acc).subspan(static_cast<std::size_t>(nr), nt));
            }
            adam_step(params, std::span<const double>(acc).first(np), state, t.adam);
        }
        double spread = 0;
        if (t.use_table) {
            table.load(std::span<const double>(params).subspan(static_cast<std::size_t>(nr)));
            spread = spread_loss(table);
        }
        const double data = epoch_loss / static_cast<double>(seen);
        out.epochs.push_back(make_loss_report(epoch, data, spread, t.lambda));
        if (t.verbose)
            std::fprintf(stderr, "[%s] epoch %d total=%.6f data=%.6f spread=%.6f\n",
                         t.tag.c_str(), epoch, out.epochs.back().total, data, spread);
    }

    if (t.use_table) {
        table.load(std::span<const double>(params).subspan(static_cast<std::size_t>(nr)));
        out.trained_te.assign(table.params().begin(), table.params().end());
    }
    auto predict_all = [&](const std::vector<Sample>& set) {
        std::vector<int> preds(set.size());
        parallel_for(set.size(), [&](std::size_t i) {
            preds[i] = qnn_label(forward(set[i], params, mix_seed(t.seed ^ 0xe4a1, i)));
        });
        return preds;
    };
    auto labels_of = [](const std::vector<Sample>& set) {
        std::vector<int> l(set.size());
        for (std::size_t i = 0; i < set.size(); ++i) l[i] = set[i].label;
        return l;
    };
    auto train_preds = predict_all(*t.eval_train);
    auto train_labels = labels_of(*t.eval_train);
    out.train = compute_metrics(train_preds, train_labels);
    auto test_preds = predict_all(*t.eval_test);
    auto test_labels = labels_of(*t.eval_test);
    out.test = compute_metrics(test_preds, test_labels);
    return out;
}

Aggregate aggregate_runs(const std::vector<RunResult>& runs) {
    Aggregate a;
    if (runs.empty()) return a;
    std::map<std::uint64_t, std::vector<const RunResult*>> by_seed;
    for (const RunResult& r : runs) by_seed[r.seed].push_back(&r);

    double sum_train_acc = 0, sum_test_acc = 0, sum_train_f1 = 0, sum_test_f1 = 0;
    for (const RunResult& r : runs) {
        sum_train_acc += r.train.accuracy;
        sum_test_acc += r.test.accuracy;
        sum_train_f1 += r.train.f1;
        sum_test_f1 += r.test.f1;
    }
    const double n = static_cast<double>(runs.size());
    a.mean_train_accuracy = sum_train_acc / n;
    a.mean_test_accuracy = sum_test_acc / n;
    a.mean_train_f1 = sum_train_f1 / n;
    a.mean_test_f1 = sum_test_f1 / n;

    a.best_test_accuracy = 0;
    bool has_ratio = false;
    double ratio_sum = 0, ratio_best = 0;
    for (const auto& [seed, group] : by_seed) {
        double acc = 0, ratio = 0;
        bool group_ratio = true;
        for (const RunResult* r : group) {
            acc += r->test.accuracy;
            if (r->classified_ratio >= 0)
                ratio += r->classified_ratio;
            else
                group_ratio = false;
        }
        acc /= static_cast<double>(group.size());
        a.best_test_accuracy = std::max(a.best_test_accuracy, acc);
        if (group_ratio) {
            ratio /= static_cast<double>(group.size());
            ratio_sum += ratio;
            ratio_best = std::max(ratio_best, ratio);
            has_ratio = true;
        }
    }
    if (has_ratio) {
        a.mean_classified_ratio = ratio_sum / static_cast<double>(by_seed.size());
        a.best_classified_ratio = ratio_best;
    }
    return a;
}

std::vector<Sample> capped(std::vector<Sample> samples, int cap, std::uint64_t seed) {
    if (cap <= 0 || static_cast<std::size_t>(cap) >= samples.size()) return samples;
    Rng rng(seed);
    shuffle_in_place(samples, rng);
    samples.resize(static_cast<std::size_t>(cap));
    return samples;
}

} // namespace

// ---------------------------------------------------------------------------
// runners

namespace {

// scheme for the discrete part of a VQC experiment, if any
std::optional<EncodingScheme> discrete_scheme(const ExperimentConfig& c, int input_bits) {
    switch (c.embedding) {
    case EmbeddingKind::Naive:
        return EncodingScheme::naive(input_bits);
    case EmbeddingKind::Qrac:
        return EncodingScheme::sequential(SchemeKind::Qrac, input_bits, 3);
    case EmbeddingKind::NCopiesQrac:
        return EncodingScheme::n_copies_qrac(input_bits, c.copies);
    case EmbeddingKind::TE:
    case EmbeddingKind::RegTE:
        return EncodingScheme::sequential(SchemeKind::TE, input_bits, 3);
    case EmbeddingKind::QracZZ:
        return EncodingScheme::sequential(SchemeKind::Qrac, input_bits, 3);
    case EmbeddingKind::TeZZ:
        return EncodingScheme::sequential(SchemeKind::TE, input_bits, 3);
    case EmbeddingKind::ZZ:
        return std::nullopt;
    default:
        throw ConfigError("embedding '" + to_string(c.embedding) +
                          "' has no VQC scheme for this experiment");
    }
}

RunReport finish_report(RunReport report,
                        const std::chrono::steady_clock::time_point& started) {
    report.aggregate = aggregate_runs(report.runs);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

} // namespace

RunReport run_parity(const ExperimentConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    auto samples = parity_dataset(config.parity_bits);

    VqcTask base;
    base.scheme = discrete_scheme(config, config.parity_bits);
    base.use_table = uses_table(config.embedding);
    base.num_qubits = base.scheme->num_qubits();
    base.ansatz = {base.num_qubits, config.depth, config.entanglement};
    base.lambda = config.lambda;
    base.epochs = config.epochs;
    base.gains = config.spsa;
    base.shots = config.shots;
    base.init_mode = config.te_init_mode;
    base.verbose = config.verbose;

    RunReport report;
    report.config = config;
    report.qubits = base.num_qubits;
    report.parameter_count = static_cast<std::size_t>(base.ansatz.param_count()) +
                             (base.use_table ? TableShape{3, base.scheme->slots()}.param_count()
                                             : 0);
    for (int r = 0; r < config.repeats; ++r) {
        VqcTask task = base;
        task.train = samples;
        task.eval_train = &samples;
        task.eval_test = &samples;
        task.seed = config.seed + static_cast<std::uint64_t>(r);
        task.tag = to_string(config.embedding) + " parity" + std::to_string(config.parity_bits) +
                   " seed=" + std::to_string(task.seed);
        RunResult res = train_vqc(task);
        res.fold = 0;
        res.classified_ratio = res.test.accuracy; // complete truth table
        report.runs.push_back(std::move(res));
    }
    return finish_report(std::move(report), started);
}

namespace {

// shared by BC and TS: cross-validated VQC over a loaded tabular dataset
RunReport run_tabular_vqc(const ExperimentConfig& config, const LoadedDataset& data,
                          bool oversample, int discrete_bits,
                          const std::function<std::vector<double>(const Sample&)>& zz_features) {
    const auto started = std::chrono::steady_clock::now();

    VqcTask base;
    if (discrete_bits > 0) base.scheme = discrete_scheme(config, discrete_bits);
    base.use_table = uses_table(config.embedding);
    base.use_zz = uses_zz(config.embedding);
    const int scheme_qubits = base.scheme ? base.scheme->num_qubits() : 0;
    int zz_qubits = 0;
    if (base.use_zz) zz_qubits = static_cast<int>(zz_features(data.samples.front()).size());
    base.zz_offset = scheme_qubits;
    base.num_qubits = scheme_qubits + zz_qubits;
    base.ansatz = {base.num_qubits, config.depth, config.entanglement};
    base.lambda = config.lambda;
    base.epochs = config.epochs;
    base.gains = config.spsa;
    base.shots = config.shots;
    base.init_mode = config.te_init_mode;
    base.verbose = config.verbose;

    // materialize the ZZ features once
    std::vector<Sample> samples = data.samples;
    if (base.use_zz)
        for (Sample& s : samples) s.reals = zz_features(s);

    RunReport report;
    report.config = config;
    report.qubits = base.num_qubits;
    report.parameter_count =
        static_cast<std::size_t>(base.ansatz.param_count()) +
        (base.use_table
             ? TableShape{base.scheme->chunk_bits, base.scheme->slots()}.param_count()
             : 0);

    auto folds = kfold_split(samples, config.folds, config.seed);
    for (int r = 0; r < config.repeats; ++r) {
        const std::uint64_t seed_r = config.seed + static_cast<std::uint64_t>(r);
        for (int f = 0; f < config.folds; ++f) {
            VqcTask task = base;
            SplitPart train_part = folds[static_cast<std::size_t>(f)].train;
            if (oversample)
                train_part = oversample_positive(train_part, mix_seed(seed_r, 0xf01d + f));
            task.train = train_part.samples;
            task.eval_train = &folds[static_cast<std::size_t>(f)].train.samples;
            task.eval_test = &folds[static_cast<std::size_t>(f)].validation.samples;
            task.seed = mix_seed(seed_r, 0xc5 + static_cast<std::uint64_t>(f));
            task.tag = to_string(config.experiment) + " " + to_string(config.embedding) +
                       " seed=" + std::to_string(seed_r) + " fold=" + std::to_string(f);
            RunResult res = train_vqc(task);
            res.seed = seed_r;
            res.fold = f;
            report.runs.push_back(std::move(res));
        }
    }
    return finish_report(std::move(report), started);
}

} // namespace

RunReport run_breast_cancer(const ExperimentConfig& config) {
    LoadedDataset data = load_breast_cancer(config.bc_file);
    // ordinal value of each feature scaled to [0, 2pi), distinct mod 2pi
    auto zz_features = [codec = data.codec](const Sample& s) {
        std::vector<double> x;
        const auto ords = decode_ordinals(codec, s.bits);
        for (std::size_t f = 0; f < codec.features.size(); ++f)
            x.push_back(2.0 * std::numbers::pi * ords[f] / codec.features[f].categories());
        return x;
    };
    const bool zz_only = config.embedding == EmbeddingKind::ZZ;
    return run_tabular_vqc(config, data, /*oversample=*/true, zz_only ? 0 : 12, zz_features);
}

RunReport run_titanic(const ExperimentConfig& config) {
    const bool mixed = config.titanic_mixed;
    LoadedDataset data =
        load_titanic(config.titanic_file, mixed ? TitanicMode::Mixed : TitanicMode::DiscreteOnly);

    std::function<std::vector<double>(const Sample&)> zz_features;
    int discrete_bits = 0;
    if (!mixed) {
        // ZZ(dis.): all four ordinal features on their own qubits
        zz_features = [codec = data.codec](const Sample& s) {
            std::vector<double> x;
            const auto ords = decode_ordinals(codec, s.bits);
            for (std::size_t f = 0; f < codec.features.size(); ++f)
                x.push_back(2.0 * std::numbers::pi * ords[f] / codec.features[f].categories());
            return x;
        };
        discrete_bits = config.embedding == EmbeddingKind::ZZ ? 0 : data.codec.total_bits();
    } else if (config.embedding == EmbeddingKind::ZZ) {
        // ZZ over all four features: ordinal sex/pclass plus rescaled age/fare
        zz_features = [codec = data.codec](const Sample& s) {
            const auto ords = decode_ordinals(codec, s.bits);
            return std::vector<double>{2.0 * std::numbers::pi * ords[0] / codec.features[0].categories(),
                                       s.reals[0],
                                       2.0 * std::numbers::pi * ords[1] / codec.features[1].categories(),
                                       s.reals[1]};
        };
        discrete_bits = 0;
    } else {
        // QRAC/TE on sex+pclass bits, age/fare through the ZZ map
        zz_features = [](const Sample& s) { return s.reals; };
        discrete_bits = data.codec.total_bits(); // 3 bits -> 1 qubit
    }
    return run_tabular_vqc(config, data, /*oversample=*/false, discrete_bits, zz_features);
}

RunReport run_mnist(const ExperimentConfig& config) {
    const auto started = std::chrono::steady_clock::now();

    // contradictions are dropped from the training data only; the evaluation
    // set keeps every image, so ambiguous patterns count against accuracy
    std::vector<Sample> train =
        config.mnist_train_corpus.empty()
            ? load_mnist(config.mnist_train_images, config.mnist_train_labels,
                         /*drop_contradictions=*/false)
            : read_bits_corpus(config.mnist_train_corpus);
    std::vector<Sample> test =
        config.mnist_test_corpus.empty()
            ? load_mnist(config.mnist_test_images, config.mnist_test_labels,
                         /*drop_contradictions=*/false)
            : read_bits_corpus(config.mnist_test_corpus);
    train = capped(std::move(train), config.sample_cap_train, mix_seed(config.seed, 0xca9));
    test = capped(std::move(test), config.sample_cap_test, mix_seed(config.seed, 0xcaa));

    QnnTask base;
    switch (config.embedding) {
    case EmbeddingKind::Naive:
        base.scheme = EncodingScheme::naive(16);
        break;
    case EmbeddingKind::Qrac:
        base.scheme = EncodingScheme::sequential(SchemeKind::Qrac, 16, 3);
        break;
    case EmbeddingKind::TE:
    case EmbeddingKind::RegTE:
        base.scheme = EncodingScheme::sequential(SchemeKind::TE, 16, 3);
        break;
    case EmbeddingKind::ConvQrac:
    case EmbeddingKind::ConvTE:
        base.scheme = EncodingScheme::conv_row_col31();
        break;
    case EmbeddingKind::Conv41TE:
        base.scheme = EncodingScheme::conv_block41();
        break;
    default:
        throw ConfigError("embedding '" + to_string(config.embedding) +
                          "' is not defined for the MNIST pipeline");
    }
    base.use_table = uses_table(config.embedding);
    base.lambda = config.lambda;
    base.epochs = config.epochs;
    base.adam = config.adam;
    base.batch_size = config.batch_size;
    base.shots = config.shots;
    base.init_mode = config.te_init_mode;
    base.verbose = config.verbose;

    RunReport report;
    report.config = config;
    report.qubits = base.scheme.num_qubits() + 1; // readout qubit
    report.parameter_count =
        static_cast<std::size_t>(2 * base.scheme.num_qubits()) +
        (base.use_table ? TableShape{base.scheme.chunk_bits, base.scheme.slots()}.param_count()
                        : 0);

    for (int r = 0; r < config.repeats; ++r) {
        QnnTask task = base;
        task.train = train;
        task.eval_train = &train;
        task.eval_test = &test;
        task.seed = config.seed + static_cast<std::uint64_t>(r);
        task.tag = "mnist " + to_string(config.embedding) + " seed=" + std::to_string(task.seed);
        RunResult res = train_qnn(task);
        res.fold = 0;
        report.runs.push_back(std::move(res));
    }
    return finish_report(std::move(report), started);
}

RunReport run_optimizer_selftest(const ExperimentConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    RunReport report;
    report.config = config;

    // SPSA on ||theta||^2 from (1, 1): most seeds must land inside 0.1
    auto quadratic = [](std::span<const double> p) {
        double acc = 0;
        for (double v : p) acc += v * v;
        return acc;
    };
    int converged = 0;
    for (int s = 0; s < 100; ++s) {
        std::vector<double> p{1.0, 1.0};
        Spsa spsa(config.spsa, config.seed + static_cast<std::uint64_t>(s));
        for (int k = 0; k < 400; ++k) spsa.step(p, k, quadratic);
        if (std::sqrt(p[0] * p[0] + p[1] * p[1]) < 0.1) ++converged;
    }
    std::fprintf(stderr, "selftest: SPSA quadratic converged %d/100 seeds\n", converged);

    // Adam on the same bowl with exact gradients
    std::vector<double> p{1.0, 1.0};
    AdamState st;
    for (int k = 0; k < 500; ++k) {
        std::vector<double> g{2 * p[0], 2 * p[1]};
        adam_step(p, g, st, config.adam);
    }
    const double adam_final = p[0] * p[0] + p[1] * p[1];
    std::fprintf(stderr, "selftest: Adam quadratic final loss %.3e\n", adam_final);

    // parameter shift against the analytic d<Z>/dtheta = -sin(theta) of RY
    double max_err = 0;
    for (int i = 0; i < 20; ++i) {
        const double theta = -3.0 + 6.0 * i / 19.0;
        auto f = [&](double th) {
            StateVector s(1);
            s.apply(Gate::ry(0, th));
            return s.marginal_probability(0, 0) - s.marginal_probability(0, 1); // <Z>
        };
        max_err = std::max(max_err, std::abs(parameter_shift_grad(f, theta) + std::sin(theta)));
    }
    std::fprintf(stderr, "selftest: parameter-shift max error %.3e\n", max_err);

    if (converged < 90 || adam_final > 1e-3 || max_err > 1e-9)
        throw NumericError("optimizer selftest failed");
    return finish_report(std::move(report), started);
}

RunReport run_experiment(const ExperimentConfig& config) {
    switch (config.experiment) {
    case ExperimentKind::Parity: return run_parity(config);
    case ExperimentKind::BreastCancer: return run_breast_cancer(config);
    case ExperimentKind::Titanic: return run_titanic(config);
    case ExperimentKind::Mnist: return run_mnist(config);
    case ExperimentKind::OptimizerSelftest: return run_optimizer_selftest(config);
    }
    throw ConfigError("unknown experiment");
}

// ---------------------------------------------------------------------------
// reporting

void export_bloch(const EmbeddingTable& table, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IngestError("cannot write " + path);
    f << "slot,bits,x,y,z,theta,phi\n";
    char line[256];
    for (int s = 0; s < table.slots(); ++s)
        for (int e = 0; e < table.entries_per_slot(); ++e) {
            const BlochVector r = table.bloch_of(s, e);
            std::snprintf(line, sizeof line, "%d,%s,%.12g,%.12g,%.12g,%.12g,%.12g\n", s,
                          ordinal_to_bits(e, table.chunk_bits()).c_str(), r.x, r.y, r.z,
                          table.theta(s, e), table.phi(s, e));
            f << line;
        }
    if (!f) throw IngestError("write failed for " + path);
}

namespace {

json metrics_json(const Metrics& m) {
    return json{{"accuracy", m.accuracy}, {"f1", m.f1}};
}

const RunResult* best_run(const RunReport& report) {
    const RunResult* best = nullptr;
    for (const RunResult& r : report.runs) {
        const double score = r.classified_ratio >= 0 ? r.classified_ratio : r.test.accuracy;
        const double best_score =
            best ? (best->classified_ratio >= 0 ? best->classified_ratio : best->test.accuracy)
                 : -1;
        if (!best || score > best_score) best = &r;
    }
    return best;
}

TableShape report_table_shape(const RunReport& report) {
    for (const RunResult& r : report.runs) {
        if (r.trained_te.empty()) continue;
        const int m = report.config.embedding == EmbeddingKind::Conv41TE ? 4 : 3;
        const auto entries = std::size_t{1} << m;
        return {m, static_cast<int>(r.trained_te.size() / (entries * 2))};
    }
    return {};
}

} // namespace

json report_to_json(const RunReport& report) {
    json runs = json::array();
    for (const RunResult& r : report.runs) {
        json epochs = json::array();
        for (const LossReport& e : r.epochs)
            epochs.push_back(json{{"epoch", e.epoch},
                                  {"total", e.total},
                                  {"data", e.data},
                                  {"spread", e.spread},
                                  {"lambda", e.lambda}});
        json run{{"seed", r.seed},
                 {"fold", r.fold},
                 {"train", metrics_json(r.train)},
                 {"test", metrics_json(r.test)},
                 {"skipped_steps", r.skipped_steps},
                 {"epochs", std::move(epochs)}};
        run["classified_ratio"] =
            r.classified_ratio >= 0 ? json(r.classified_ratio) : json(nullptr);
        runs.push_back(std::move(run));
    }

    json aggregate{{"mean_train_accuracy", report.aggregate.mean_train_accuracy},
                   {"mean_test_accuracy", report.aggregate.mean_test_accuracy},
                   {"mean_train_f1", report.aggregate.mean_train_f1},
                   {"mean_test_f1", report.aggregate.mean_test_f1},
                   {"best_test_accuracy", report.aggregate.best_test_accuracy}};
    aggregate["mean_classified_ratio"] = report.aggregate.mean_classified_ratio >= 0
                                             ? json(report.aggregate.mean_classified_ratio)
                                             : json(nullptr);
    aggregate["best_classified_ratio"] = report.aggregate.best_classified_ratio >= 0
                                             ? json(report.aggregate.best_classified_ratio)
                                             : json(nullptr);

    json out{{"experiment", to_string(report.config.experiment)},
             {"config", config_to_json(report.config)},
             {"qubits", report.qubits},
             {"parameter_count", report.parameter_count},
             {"wall_seconds", report.wall_seconds},
             {"runs", std::move(runs)},
             {"aggregate", std::move(aggregate)}};
    out["bloch_csv"] = report.bloch_csv.empty() ? json(nullptr) : json(report.bloch_csv);

    const RunResult* best = best_run(report);
    if (best && !best->trained_te.empty()) {
        const TableShape shape = report_table_shape(report);
        out["embedding_table"] = json{{"chunk_bits", shape.chunk_bits},
                                      {"slots", shape.slots},
                                      {"params", best->trained_te}};
    } else {
        out["embedding_table"] = json(nullptr);
    }
    return out;
}

std::string write_report_files(RunReport& report) {
    namespace fs = std::filesystem;
    const fs::path dir = report.config.out_dir.empty() ? fs::path(".")
                                                       : fs::path(report.config.out_dir);
    fs::create_directories(dir);

    // bloch.csv for the best trainable run
    const RunResult* best = best_run(report);
    if (best && !best->trained_te.empty()) {
        const TableShape shape = report_table_shape(report);
        EmbeddingTable table(shape.chunk_bits, shape.slots);
        table.load(best->trained_te);
        const fs::path bloch = dir / "bloch.csv";
        export_bloch(table, bloch.string());
        report.bloch_csv = bloch.string();
    }

    // losses.csv: per-epoch mean over runs
    {
        std::ofstream f(dir / "losses.csv");
        if (!f) throw IngestError("cannot write losses.csv in " + dir.string());
        f << "epoch,total,data,spread\n";
        std::size_t max_epochs = 0;
        for (const RunResult& r : report.runs) max_epochs = std::max(max_epochs, r.epochs.size());
        char line[160];
        for (std::size_t e = 0; e < max_epochs; ++e) {
            double total = 0, data = 0, spread = 0;
            int n = 0;
            for (const RunResult& r : report.runs)
                if (e < r.epochs.size()) {
                    total += r.epochs[e].total;
                    data += r.epochs[e].data;
                    spread += r.epochs[e].spread;
                    ++n;
                }
            std::snprintf(line, sizeof line, "%zu,%.10g,%.10g,%.10g\n", e, total / n, data / n,
                          spread / n);
            f << line;
        }
    }

    const fs::path report_path = dir / "report.json";
    std::ofstream f(report_path);
    if (!f) throw IngestError("cannot write " + report_path.string());
    f << report_to_json(report).dump(2) << "\n";
    if (!f) throw IngestError("write failed for " + report_path.string());
    return report_path.string();
}

} // namespace qte
