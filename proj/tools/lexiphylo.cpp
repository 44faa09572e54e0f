/*
 * Copyright 2026 the lexiphylo authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: seeded, resumable pipeline stages with plain-text
// artifacts and a manifest next to each one.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "lexiphylo/corpus.hpp"
#include "lexiphylo/distance.hpp"
#include "lexiphylo/divergence.hpp"
#include "lexiphylo/embeddings.hpp"
#include "lexiphylo/etymology.hpp"
#include "lexiphylo/focus.hpp"
#include "lexiphylo/io_util.hpp"
#include "lexiphylo/linkage.hpp"
#include "lexiphylo/manifest.hpp"
#include "lexiphylo/synthgen.hpp"
#include "lexiphylo/text.hpp"
#include "lexiphylo/tree.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lexiphylo;

namespace {

std::string g_stage = "cli";

struct IngestOptions {
    std::string corpus;
    std::string out;
    std::string trigrams, unigrams;
    std::string spans, gazetteer, lexicon;
    std::string rank_table, aoa_table, stats_out;
    bool abstract_before_truecase = false;
    double max_unk_fraction = 0.5;
    std::uint64_t seed = 1;
};

json ingest_config_json(const IngestOptions& opt) {
    json j;
    j["truecasing"] = !opt.trigrams.empty();
    j["entity_spans"] = !opt.spans.empty();
    j["gazetteer_fallback"] = !opt.gazetteer.empty();
    j["lexicon_unk"] = !opt.lexicon.empty();
    j["abstract_before_truecase"] = opt.abstract_before_truecase;
    j["max_unk_fraction"] = opt.max_unk_fraction;
    return j;
}

int run_ingest(const IngestOptions& opt) {
    NgramTable ngrams;
    if (!opt.trigrams.empty()) ngrams.load_trigrams(opt.trigrams);
    if (!opt.unigrams.empty()) ngrams.load_unigrams(opt.unigrams);

    EnglishLexicon lexicon;
    if (!opt.lexicon.empty()) lexicon.load(opt.lexicon);
    Gazetteer gazetteer;
    if (!opt.gazetteer.empty()) gazetteer.load(opt.gazetteer);

    std::map<std::string, std::vector<EntitySpan>> span_file;
    if (!opt.spans.empty()) span_file = load_entity_spans(opt.spans);

    const auto raw = LabeledCorpus::load_jsonl(opt.corpus);

    AbstractOptions abstract_opts;
    abstract_opts.lexicon = opt.lexicon.empty() ? nullptr : &lexicon;

    LabeledCorpus cleaned;
    std::size_t dropped_unk = 0;
    for (const auto& sentence : raw.sentences()) {
        std::vector<std::string> tokens;
        tokens.reserve(sentence.tokens.size());
        for (const auto id : sentence.tokens) tokens.push_back(raw.token_text(id));

        const auto apply_truecase = [&] {
            if (!ngrams.empty()) truecase_sentence(tokens, ngrams);
        };
        const auto apply_abstract = [&] {
            std::vector<EntitySpan> spans;
            if (const auto it = span_file.find(sentence.source_id);
                it != span_file.end()) {
                spans = it->second;
            } else if (!gazetteer.empty()) {
                spans = fallback_entity_spans(tokens, gazetteer);
            }
            tokens = abstract_sentence(tokens, std::move(spans), abstract_opts);
        };

        if (opt.abstract_before_truecase) {
            apply_abstract();
            apply_truecase();
        } else {
            apply_truecase();
            apply_abstract();
        }

        if (unk_fraction(tokens) > opt.max_unk_fraction) {
            ++dropped_unk;
            continue;
        }
        cleaned.add_sentence(raw.labels()[sentence.label], tokens,
                             sentence.source_id);
    }
    cleaned.save_jsonl(opt.out);

    Manifest manifest("ingest", opt.seed);
    manifest.add_input(opt.corpus);
    for (const auto& path : {opt.trigrams, opt.unigrams, opt.spans, opt.gazetteer,
                             opt.lexicon, opt.rank_table, opt.aoa_table}) {
        if (!path.empty()) manifest.add_input(path);
    }
    auto config = ingest_config_json(opt);
    config["sentences_in"] = raw.sentences().size();
    config["sentences_out"] = cleaned.sentences().size();
    config["dropped_unk"] = dropped_unk;
    manifest.set_config(config);
    manifest.add_output(opt.out);

    if (!opt.stats_out.empty()) {
        ValueTable ranks, aoa;
        if (!opt.rank_table.empty()) ranks.load(opt.rank_table);
        if (!opt.aoa_table.empty()) aoa.load(opt.aoa_table);
        const auto stats = lexical_stats(cleaned, ranks, aoa);
        json js;
        js["ttr"] = stats.ttr;
        js["mean_word_rank"] = stats.mean_word_rank;
        js["mean_aoa"] = stats.mean_aoa;
        js["token_count"] = stats.token_count;
        js["type_count"] = stats.type_count;
        auto out = open_output(opt.stats_out);
        out << js.dump(2) << '\n';
        manifest.add_output(opt.stats_out);
    }
    manifest.save(opt.out + ".manifest.json");
    return 0;
}

struct FocusOptions {
    std::string corpus;
    std::string etymology, senses, pos_counts;
    std::string out;
    double dominance_threshold = 0.9;
    double logodds_threshold = 5.0;
    double alpha0 = 1000.0;
    int random_control = 0;
    std::string wordlist;
    std::uint64_t seed = 1;
};

int run_focus(const FocusOptions& opt) {
    const auto corpus = LabeledCorpus::load_jsonl(opt.corpus);
    Manifest manifest("focus-set", opt.seed);
    manifest.add_input(opt.corpus);

    FocusSet focus;
    json config;
    if (opt.random_control > 0) {
        std::vector<std::string> pool;
        if (!opt.wordlist.empty()) {
            for_each_line(opt.wordlist, [&](std::size_t, std::string_view line) {
                if (!line.empty()) pool.emplace_back(line);
            });
            manifest.add_input(opt.wordlist);
        } else {
            for (const auto& [word, count] : corpus.folded_counts()) {
                if (count >= 5 && contains_alpha(word)) pool.push_back(word);
            }
        }
        focus = random_control_focus_set(std::move(pool),
                                         static_cast<std::size_t>(opt.random_control),
                                         opt.seed);
        config["random_control"] = opt.random_control;
    } else {
        const auto graph = EtymologyGraph::load_tsv(opt.etymology);
        const auto inventory = SenseInventory::load_jsonl(opt.senses);
        const auto pos = PosCountTable::load_tsv(opt.pos_counts);
        manifest.add_input(opt.etymology);
        manifest.add_input(opt.senses);
        manifest.add_input(opt.pos_counts);

        const auto candidates = build_candidate_synsets(inventory, pos, graph);
        FocusBuildParams params;
        params.dominance_threshold = opt.dominance_threshold;
        params.cultural.threshold = opt.logodds_threshold;
        params.cultural.alpha0 = opt.alpha0;
        auto outcome = build_focus_set(candidates, corpus, params);
        focus = std::move(outcome.focus);

        config["candidates"] = candidates.size();
        config["eliminated_words"] = outcome.eliminated.size();
        config["dominance_threshold"] = opt.dominance_threshold;
        config["logodds_threshold"] = opt.logodds_threshold;
        config["alpha0"] = opt.alpha0;
    }
    config["synsets"] = focus.synsets.size();
    config["words"] = focus.words.size();

    focus.save_json(opt.out);
    manifest.set_config(config);
    manifest.add_output(opt.out);
    manifest.save(opt.out + ".manifest.json");
    std::cerr << "focus set: " << focus.synsets.size() << " synsets, "
              << focus.words.size() << " words\n";
    return 0;
}

struct EmbedOptions {
    std::string corpus;
    std::string out;
    EmbedConfig config;
    bool deterministic = false;
};

int run_embed(const EmbedOptions& opt) {
    const auto corpus = LabeledCorpus::load_jsonl(opt.corpus);
    EmbedConfig cfg = opt.config;
    if (opt.deterministic) cfg.threads = 1;

    TrainReport report;
    const auto model = train_situated(corpus, cfg, &report);
    model.save(opt.out);

    Manifest manifest("embed", cfg.seed);
    manifest.add_input(opt.corpus);
    json config;
    config["dim"] = cfg.dim;
    config["window"] = cfg.window;
    config["negatives"] = cfg.negatives;
    config["epochs"] = cfg.epochs;
    config["initial_lr"] = cfg.initial_lr;
    config["min_count"] = cfg.min_count;
    config["subsample_threshold"] = cfg.subsample_threshold;
    config["threads"] = cfg.threads;
    config["vocab"] = report.vocab_size;
    config["epoch_mean_loss"] = report.epoch_mean_loss;
    manifest.set_config(config);
    manifest.add_output(opt.out);
    manifest.save(opt.out + ".manifest.json");
    std::cerr << "embeddings: |V|=" << report.vocab_size << " dim=" << cfg.dim
              << " labels=" << model.labels().size() << '\n';
    return 0;
}

struct DistanceOptions {
    std::string corpus;
    std::string focus;
    std::string model;
    std::string out_matrix;
    std::string out_freqs;
    std::string mode = "combined";
    double constant_weight = -1.0;  // <0 keeps the word-probability scheme
    std::uint64_t seed = 1;
};

DistanceParams distance_params(const DistanceOptions& opt) {
    DistanceParams params;
    if (opt.mode == "combined") {
        params.mode = DistanceMode::Combined;
    } else if (opt.mode == "frequency_only") {
        params.mode = DistanceMode::FrequencyOnly;
    } else {
        throw std::invalid_argument("mode must be combined or frequency_only, got '" +
                                    opt.mode + "'");
    }
    if (opt.constant_weight >= 0.0) {
        params.weights.constant = true;
        params.weights.constant_weight = opt.constant_weight;
    }
    return params;
}

int run_distance(const DistanceOptions& opt) {
    const auto corpus = LabeledCorpus::load_jsonl(opt.corpus);
    const auto focus = FocusSet::load_json(opt.focus);
    const auto freqs = FrequencyTable::from_corpus(corpus);
    const auto params = distance_params(opt);

    std::optional<SituatedEmbeddings> model;
    if (params.mode == DistanceMode::Combined) {
        if (opt.model.empty()) {
            throw std::invalid_argument("combined mode needs --model");
        }
        model = SituatedEmbeddings::load(opt.model);
    }

    const auto matrix =
        distance_matrix(freqs, focus, model ? &*model : nullptr, params);
    matrix.save_csv(opt.out_matrix);

    Manifest manifest("distance", opt.seed);
    manifest.add_input(opt.corpus);
    manifest.add_input(opt.focus);
    if (!opt.model.empty()) manifest.add_input(opt.model);
    json config;
    config["mode"] = opt.mode;
    config["constant_weight"] =
        opt.constant_weight >= 0.0 ? json(opt.constant_weight) : json(nullptr);
    config["labels"] = matrix.labels;
    manifest.set_config(config);
    manifest.add_output(opt.out_matrix);
    if (!opt.out_freqs.empty()) {
        freqs.save_tsv(opt.out_freqs);
        manifest.add_output(opt.out_freqs);
    }
    manifest.save(opt.out_matrix + ".manifest.json");
    return 0;
}

struct ClusterOptions {
    std::string matrix;
    std::string out_tree;
    std::string out_clusters;
    double flat_threshold = 1.15;
    int flat_depth = 2;
    bool precomputed = false;
    std::uint64_t seed = 1;
};

int run_cluster(const ClusterOptions& opt) {
    const auto matrix = DistanceMatrix::load_csv(opt.matrix);
    const auto steps = opt.precomputed ? ward_linkage_precomputed(matrix)
                                       : ward_linkage(matrix);
    const auto tree = tree_from_linkage(steps, matrix.labels);
    save_newick(tree, opt.out_tree);

    Manifest manifest("cluster", opt.seed);
    manifest.add_input(opt.matrix);
    json config;
    config["flat_threshold"] = opt.flat_threshold;
    config["flat_depth"] = opt.flat_depth;
    config["precomputed"] = opt.precomputed;
    manifest.set_config(config);
    manifest.add_output(opt.out_tree);

    if (!opt.out_clusters.empty()) {
        const auto clusters = flat_clusters(tree, opt.flat_threshold, opt.flat_depth);
        auto out = open_output(opt.out_clusters);
        for (const auto& [label, cluster] : clusters) {
            out << label << '\t' << cluster << '\n';
        }
        manifest.add_output(opt.out_clusters);
    }
    manifest.save(opt.out_tree + ".manifest.json");
    return 0;
}

struct EvaluateOptions {
    std::string tree;
    std::string gold;
    std::string out;
    int n_random = 100;
    std::uint64_t seed = 1;
};

int run_evaluate(const EvaluateOptions& opt) {
    const auto tau = load_newick(opt.tree);
    const auto gold = load_newick(opt.gold);
    const auto eval = normalized_tree_distance(tau, gold, opt.n_random, opt.seed);

    json j;
    j["raw"] = eval.raw;
    j["normalized"] = eval.normalized;
    j["n_random"] = eval.n_random;
    j["seed"] = eval.seed;
    auto out = open_output(opt.out);
    out << j.dump(2) << '\n';

    Manifest manifest("evaluate", opt.seed);
    manifest.add_input(opt.tree);
    manifest.add_input(opt.gold);
    json config;
    config["n_random"] = opt.n_random;
    manifest.set_config(config);
    manifest.add_output(opt.out);
    manifest.save(opt.out + ".manifest.json");
    std::cerr << "evaluation: raw=" << eval.raw << " normalized=" << eval.normalized
              << '\n';
    return 0;
}

struct DivergeOptions {
    std::string corpus;
    std::string focus;
    std::string label_i, label_j;
    std::string out;
    std::string out_json;
    std::int64_t min_support = 20;
    std::uint64_t seed = 1;
};

int run_diverge(const DivergeOptions& opt) {
    const auto corpus = LabeledCorpus::load_jsonl(opt.corpus);
    const auto focus = FocusSet::load_json(opt.focus);
    const auto freqs = FrequencyTable::from_corpus(corpus);

    const auto report = rank_synsets(corpus.label_id(opt.label_i),
                                     corpus.label_id(opt.label_j), focus, freqs,
                                     opt.min_support);
    report.save_tsv(opt.out);
    if (!opt.out_json.empty()) report.save_json(opt.out_json);

    Manifest manifest("diverge", opt.seed);
    manifest.add_input(opt.corpus);
    manifest.add_input(opt.focus);
    json config;
    config["label_i"] = opt.label_i;
    config["label_j"] = opt.label_j;
    config["min_support"] = opt.min_support;
    config["rows"] = report.rows.size();
    manifest.set_config(config);
    manifest.add_output(opt.out);
    if (!opt.out_json.empty()) manifest.add_output(opt.out_json);
    manifest.save(opt.out + ".manifest.json");
    return 0;
}

struct SynthOptions {
    std::string spec;
    std::string out_dir;
};

int run_synth(const SynthOptions& opt) {
    const auto spec = PlantedSpec::load_json(opt.spec);
    const auto prefs = drift_preferences(spec);
    const auto corpus = generate_corpus(spec, prefs);

    fs::create_directories(opt.out_dir);
    const auto corpus_path = (fs::path(opt.out_dir) / "corpus.jsonl").string();
    corpus.save_jsonl(corpus_path);
    write_support_files(spec, opt.out_dir);

    Manifest manifest("synth", spec.seed);
    manifest.add_input(opt.spec);
    json config;
    config["labels"] = prefs.labels;
    config["synsets"] = spec.synsets.size();
    config["sentences_per_label"] = spec.sentences_per_label;
    config["context_signature"] = spec.context_signature;
    manifest.set_config(config);
    for (const auto* name : {"corpus.jsonl", "gold.nwk", "etymology.tsv",
                             "senses.jsonl", "pos_counts.tsv", "filler_words.txt"}) {
        manifest.add_output((fs::path(opt.out_dir) / name).string());
    }
    manifest.save((fs::path(opt.out_dir) / "synth.manifest.json").string());
    std::cerr << "synthetic corpus: " << corpus.sentences().size() << " sentences, "
              << corpus.labels().size() << " labels\n";
    return 0;
}

struct PipelineOptions {
    std::string config_path;
    std::string out_dir;
    // flag overrides; empty/negative means "use the config file"
    std::optional<std::string> mode;
    std::optional<double> dominance_threshold, logodds_threshold, alpha0;
    std::optional<double> flat_threshold;
    std::optional<std::int64_t> min_support;
    std::optional<int> n_random;
    std::optional<std::uint64_t> seed;
    bool deterministic = false;
};

int run_pipeline(const PipelineOptions& opt) {
    json cfg = json::parse(read_file(opt.config_path));
    const auto get_str = [&](const char* key) -> std::string {
        return cfg.contains(key) && !cfg[key].is_null()
                   ? cfg[key].get<std::string>()
                   : std::string();
    };

    fs::create_directories(opt.out_dir);
    const auto at = [&](const char* name) {
        return (fs::path(opt.out_dir) / name).string();
    };

    const std::uint64_t seed = opt.seed.value_or(cfg.value("seed", std::uint64_t(1)));
    std::string mode = cfg.value("mode", std::string("combined"));
    if (opt.mode) mode = *opt.mode;

    // ingest
    g_stage = "ingest";
    IngestOptions ingest;
    ingest.corpus = get_str("corpus");
    if (ingest.corpus.empty()) throw std::invalid_argument("config needs 'corpus'");
    ingest.out = at("corpus.clean.jsonl");
    ingest.trigrams = get_str("trigrams");
    ingest.unigrams = get_str("unigrams");
    ingest.spans = get_str("spans");
    ingest.gazetteer = get_str("gazetteer");
    ingest.lexicon = get_str("lexicon");
    ingest.rank_table = get_str("rank_table");
    ingest.aoa_table = get_str("aoa_table");
    if (!ingest.rank_table.empty() || !ingest.aoa_table.empty()) {
        ingest.stats_out = at("stats.json");
    }
    ingest.seed = seed;
    run_ingest(ingest);

    // focus set
    g_stage = "focus-set";
    FocusOptions focus;
    focus.corpus = ingest.out;
    focus.etymology = get_str("etymology");
    focus.senses = get_str("senses");
    focus.pos_counts = get_str("pos_counts");
    focus.out = at("focus.json");
    focus.dominance_threshold =
        opt.dominance_threshold.value_or(cfg.value("dominance_threshold", 0.9));
    focus.logodds_threshold =
        opt.logodds_threshold.value_or(cfg.value("logodds_threshold", 5.0));
    focus.alpha0 = opt.alpha0.value_or(cfg.value("alpha0", 1000.0));
    focus.random_control = cfg.value("random_control", 0);
    focus.wordlist = get_str("control_wordlist");
    focus.seed = seed;
    run_focus(focus);

    // embeddings (combined mode only)
    g_stage = "embed";
    std::string model_path;
    if (mode == "combined") {
        EmbedOptions embed;
        embed.corpus = ingest.out;
        embed.out = at("model.txt");
        if (cfg.contains("embed")) {
            const auto& je = cfg["embed"];
            embed.config.dim = je.value("dim", 100);
            embed.config.window = je.value("window", 5);
            embed.config.negatives = je.value("negatives", 5);
            embed.config.epochs = je.value("epochs", 5);
            embed.config.initial_lr = je.value("lr", 0.025f);
            embed.config.min_count = je.value("min_count", 10);
            embed.config.subsample_threshold = je.value("subsample", 1e-4);
            embed.config.threads = je.value("threads", 1);
        }
        embed.config.seed = seed;
        embed.deterministic = opt.deterministic || cfg.value("deterministic", false);
        run_embed(embed);
        model_path = embed.out;
    }

    // distances
    g_stage = "distance";
    DistanceOptions distance;
    distance.corpus = ingest.out;
    distance.focus = focus.out;
    distance.model = model_path;
    distance.out_matrix = at("dist.csv");
    distance.out_freqs = at("freqs.tsv");
    distance.mode = mode;
    distance.seed = seed;
    run_distance(distance);

    // clustering
    g_stage = "cluster";
    ClusterOptions cluster;
    cluster.matrix = distance.out_matrix;
    cluster.out_tree = at("tree.nwk");
    cluster.out_clusters = at("clusters.tsv");
    cluster.flat_threshold =
        opt.flat_threshold.value_or(cfg.value("flat_threshold", 1.15));
    cluster.flat_depth = cfg.value("flat_depth", 2);
    cluster.seed = seed;
    run_cluster(cluster);

    // evaluation
    g_stage = "evaluate";
    const auto gold = get_str("gold_tree");
    if (!gold.empty()) {
        EvaluateOptions evaluate;
        evaluate.tree = cluster.out_tree;
        evaluate.gold = gold;
        evaluate.out = at("eval.json");
        evaluate.n_random = opt.n_random.value_or(cfg.value("n_random", 100));
        evaluate.seed = seed;
        run_evaluate(evaluate);
    }

    // divergence report
    g_stage = "diverge";
    if (cfg.contains("diverge")) {
        DivergeOptions diverge;
        diverge.corpus = ingest.out;
        diverge.focus = focus.out;
        diverge.label_i = cfg["diverge"].at("label_i").get<std::string>();
        diverge.label_j = cfg["diverge"].at("label_j").get<std::string>();
        diverge.min_support =
            opt.min_support.value_or(cfg.value("min_support", std::int64_t(20)));
        diverge.out = at("divergence.tsv");
        diverge.out_json = at("divergence.json");
        diverge.seed = seed;
        run_diverge(diverge);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"native-language signal detection and phylogeny reconstruction"};
    app.require_subcommand(1);

    IngestOptions ingest;
    auto* cmd_ingest = app.add_subcommand(
        "ingest", "tokenize, truecase and abstract a labeled corpus");
    cmd_ingest->add_option("--corpus", ingest.corpus)->required();
    cmd_ingest->add_option("--out", ingest.out)->required();
    cmd_ingest->add_option("--trigrams", ingest.trigrams);
    cmd_ingest->add_option("--unigrams", ingest.unigrams);
    cmd_ingest->add_option("--spans", ingest.spans);
    cmd_ingest->add_option("--gazetteer", ingest.gazetteer);
    cmd_ingest->add_option("--lexicon", ingest.lexicon);
    cmd_ingest->add_option("--rank-table", ingest.rank_table);
    cmd_ingest->add_option("--aoa-table", ingest.aoa_table);
    cmd_ingest->add_option("--stats", ingest.stats_out);
    cmd_ingest->add_flag("--abstract-before-truecase",
                         ingest.abstract_before_truecase);
    cmd_ingest->add_option("--max-unk-fraction", ingest.max_unk_fraction);
    cmd_ingest->add_option("--seed", ingest.seed);

    FocusOptions focus;
    auto* cmd_focus = app.add_subcommand(
        "focus-set", "build the filtered focus set (or a random control)");
    cmd_focus->add_option("--corpus", focus.corpus)->required();
    cmd_focus->add_option("--etymology", focus.etymology);
    cmd_focus->add_option("--senses", focus.senses);
    cmd_focus->add_option("--pos-counts", focus.pos_counts);
    cmd_focus->add_option("--out", focus.out)->required();
    cmd_focus->add_option("--dominance-threshold", focus.dominance_threshold);
    cmd_focus->add_option("--logodds-threshold", focus.logodds_threshold);
    cmd_focus->add_option("--alpha0", focus.alpha0);
    cmd_focus->add_option("--random-control", focus.random_control);
    cmd_focus->add_option("--from-wordlist", focus.wordlist);
    cmd_focus->add_option("--seed", focus.seed);

    EmbedOptions embed;
    auto* cmd_embed =
        app.add_subcommand("embed", "train situated word embeddings");
    cmd_embed->add_option("--corpus", embed.corpus)->required();
    cmd_embed->add_option("--out", embed.out)->required();
    cmd_embed->add_option("--dim", embed.config.dim);
    cmd_embed->add_option("--window", embed.config.window);
    cmd_embed->add_option("--negatives", embed.config.negatives);
    cmd_embed->add_option("--epochs", embed.config.epochs);
    cmd_embed->add_option("--lr", embed.config.initial_lr);
    cmd_embed->add_option("--min-count", embed.config.min_count);
    cmd_embed->add_option("--subsample", embed.config.subsample_threshold);
    cmd_embed->add_option("--threads", embed.config.threads);
    cmd_embed->add_option("--seed", embed.config.seed);
    cmd_embed->add_flag("--deterministic", embed.deterministic);

    DistanceOptions distance;
    auto* cmd_distance = app.add_subcommand(
        "distance", "frequency tables and the inter-English distance matrix");
    cmd_distance->add_option("--corpus", distance.corpus)->required();
    cmd_distance->add_option("--focus", distance.focus)->required();
    cmd_distance->add_option("--model", distance.model);
    cmd_distance->add_option("--out-matrix", distance.out_matrix)->required();
    cmd_distance->add_option("--out-freqs", distance.out_freqs);
    cmd_distance->add_option("--mode", distance.mode);
    cmd_distance->add_option("--constant-weight", distance.constant_weight);
    cmd_distance->add_option("--seed", distance.seed);

    ClusterOptions cluster;
    auto* cmd_cluster = app.add_subcommand(
        "cluster", "agglomerate the distance matrix into a tree");
    cmd_cluster->add_option("--matrix", cluster.matrix)->required();
    cmd_cluster->add_option("--out-tree", cluster.out_tree)->required();
    cmd_cluster->add_option("--out-clusters", cluster.out_clusters);
    cmd_cluster->add_option("--flat-threshold", cluster.flat_threshold);
    cmd_cluster->add_option("--flat-depth", cluster.flat_depth);
    cmd_cluster->add_flag("--precomputed", cluster.precomputed);
    cmd_cluster->add_option("--seed", cluster.seed);

    EvaluateOptions evaluate;
    auto* cmd_evaluate = app.add_subcommand(
        "evaluate", "score a tree against a gold tree");
    cmd_evaluate->add_option("--tree", evaluate.tree)->required();
    cmd_evaluate->add_option("--gold", evaluate.gold)->required();
    cmd_evaluate->add_option("--out", evaluate.out)->required();
    cmd_evaluate->add_option("--n-random", evaluate.n_random);
    cmd_evaluate->add_option("--seed", evaluate.seed);

    DivergeOptions diverge;
    auto* cmd_diverge = app.add_subcommand(
        "diverge", "rank focus synsets by usage divergence between two labels");
    cmd_diverge->add_option("--corpus", diverge.corpus)->required();
    cmd_diverge->add_option("--focus", diverge.focus)->required();
    cmd_diverge->add_option("--label-i", diverge.label_i)->required();
    cmd_diverge->add_option("--label-j", diverge.label_j)->required();
    cmd_diverge->add_option("--out", diverge.out)->required();
    cmd_diverge->add_option("--out-json", diverge.out_json);
    cmd_diverge->add_option("--min-support", diverge.min_support);
    cmd_diverge->add_option("--seed", diverge.seed);

    SynthOptions synth;
    auto* cmd_synth = app.add_subcommand(
        "synth", "generate a planted-phylogeny synthetic corpus");
    cmd_synth->add_option("--spec", synth.spec)->required();
    cmd_synth->add_option("--out-dir", synth.out_dir)->required();

    PipelineOptions pipeline;
    auto* cmd_pipeline = app.add_subcommand(
        "pipeline", "run every stage from a config file");
    cmd_pipeline->add_option("--config", pipeline.config_path)->required();
    cmd_pipeline->add_option("--out-dir", pipeline.out_dir)->required();
    std::string pipeline_mode;
    double pipe_dominance = -1, pipe_logodds = -1, pipe_alpha0 = -1, pipe_flat = -1;
    std::int64_t pipe_min_support = -1;
    int pipe_n_random = -1;
    std::int64_t pipe_seed = -1;
    cmd_pipeline->add_option("--mode", pipeline_mode);
    cmd_pipeline->add_option("--dominance-threshold", pipe_dominance);
    cmd_pipeline->add_option("--logodds-threshold", pipe_logodds);
    cmd_pipeline->add_option("--alpha0", pipe_alpha0);
    cmd_pipeline->add_option("--flat-threshold", pipe_flat);
    cmd_pipeline->add_option("--min-support", pipe_min_support);
    cmd_pipeline->add_option("--n-random", pipe_n_random);
    cmd_pipeline->add_option("--seed", pipe_seed);
    cmd_pipeline->add_flag("--deterministic", pipeline.deterministic);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_ingest->parsed()) {
            g_stage = "ingest";
            return run_ingest(ingest);
        }
        if (cmd_focus->parsed()) {
            g_stage = "focus-set";
            if (focus.random_control == 0 &&
                (focus.etymology.empty() || focus.senses.empty() ||
                 focus.pos_counts.empty())) {
                throw std::invalid_argument(
                    "focus-set needs --etymology, --senses and --pos-counts "
                    "(or --random-control)");
            }
            return run_focus(focus);
        }
        if (cmd_embed->parsed()) {
            g_stage = "embed";
            return run_embed(embed);
        }
        if (cmd_distance->parsed()) {
            g_stage = "distance";
            return run_distance(distance);
        }
        if (cmd_cluster->parsed()) {
            g_stage = "cluster";
            return run_cluster(cluster);
        }
        if (cmd_evaluate->parsed()) {
            g_stage = "evaluate";
            return run_evaluate(evaluate);
        }
        if (cmd_diverge->parsed()) {
            g_stage = "diverge";
            return run_diverge(diverge);
        }
        if (cmd_synth->parsed()) {
            g_stage = "synth";
            return run_synth(synth);
        }
        if (cmd_pipeline->parsed()) {
            g_stage = "pipeline";
            if (!pipeline_mode.empty()) pipeline.mode = pipeline_mode;
            if (pipe_dominance >= 0) pipeline.dominance_threshold = pipe_dominance;
            if (pipe_logodds >= 0) pipeline.logodds_threshold = pipe_logodds;
            if (pipe_alpha0 >= 0) pipeline.alpha0 = pipe_alpha0;
            if (pipe_flat >= 0) pipeline.flat_threshold = pipe_flat;
            if (pipe_min_support >= 0) pipeline.min_support = pipe_min_support;
            if (pipe_n_random >= 0) pipeline.n_random = pipe_n_random;
            if (pipe_seed >= 0) {
                pipeline.seed = static_cast<std::uint64_t>(pipe_seed);
            }
            return run_pipeline(pipeline);
        }
    } catch (const std::exception& e) {
        std::cerr << "error stage=" << g_stage << " message=\"" << e.what() << "\"\n";
        return 1;
    }
    return 1;
}
