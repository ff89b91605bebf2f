// divkit: divergence analysis for word-aligned dependency tree pairs.
//
// Subcommands mirror the library workflows: analyze (stage table and edge
// breakdowns), posstats (POS-pair operation statistics), transform (emit the
// rewritten corpus), project (direct projection of the target side onto the
// source side), experiment (learn swap rules on a holdout split and score
// the corrected projection).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "divkit/divkit.hpp"

namespace {

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
    const char* env = std::getenv("DIVKIT_LOG");
    if (!env) return LogLevel::Info;
    std::string v = env;
    if (v == "quiet") return LogLevel::Quiet;
    if (v == "debug") return LogLevel::Debug;
    return LogLevel::Info;
}

void log_line(LogLevel level, const std::string& msg) {
    if (log_level() >= level) std::cerr << msg << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw divkit::Error("cannot open input file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw divkit::Error("cannot write output file \"" + path.string() + "\"");
    out << content;
}

struct RunConfig {
    std::string input;
    std::string direction = "both";
    std::string out_dir;
    std::string format = "tsv";
    double threshold = 0.8;
    int min_support = 3;
    double train_fraction = 0.8;
    unsigned long seed = 42;
};

divkit::CorpusDocument load_corpus(const RunConfig& cfg) {
    std::string text = read_file(cfg.input);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        throw divkit::ParseError(1, "empty corpus");
    auto doc = divkit::parse_corpus(text);
    if (doc.corpus.empty()) throw divkit::ParseError(1, "empty corpus");
    log_line(LogLevel::Info, "parsed " + std::to_string(doc.corpus.size()) + " pairs (" +
                                 doc.source_language + " -> " + doc.target_language + ")");
    return doc;
}

// Writes to out dir when given, otherwise prints to stdout.
void deliver(const RunConfig& cfg, const std::string& filename, const std::string& content) {
    if (cfg.out_dir.empty()) {
        std::cout << content;
        return;
    }
    std::filesystem::create_directories(cfg.out_dir);
    write_file(std::filesystem::path(cfg.out_dir) / filename, content);
}

void warn_skipped(const divkit::StageTable& table) {
    for (const auto& id : table.skipped)
        log_line(LogLevel::Info,
                 "warning: pair \"" + id + "\" dropped (side empty after removing spontaneous tokens)");
}

int cmd_analyze(const RunConfig& cfg) {
    auto doc = load_corpus(cfg);
    auto table = divkit::corpus_stage_table(doc.corpus);
    warn_skipped(table);
    std::vector<divkit::MatchReport> reports;
    for (auto dir : {divkit::Direction::SrcToTgt, divkit::Direction::TgtToSrc})
        if (divkit::direction_selected(dir, cfg.direction))
            reports.push_back(divkit::breakdown(doc.corpus, dir));
    if (cfg.format == "json") {
        deliver(cfg, "stage_table.json",
                divkit::stage_table_json(table, cfg.direction).dump(2) + "\n");
        deliver(cfg, "breakdown.json", divkit::breakdown_json(reports).dump(2) + "\n");
    } else {
        deliver(cfg, "stage_table.tsv", divkit::stage_table_tsv(table, cfg.direction));
        deliver(cfg, "breakdown.tsv", divkit::breakdown_tsv(reports));
    }
    return 0;
}

int cmd_posstats(const RunConfig& cfg) {
    auto doc = load_corpus(cfg);
    auto table = divkit::corpus_stage_table(doc.corpus);
    warn_skipped(table);
    for (auto dir : {divkit::Direction::SrcToTgt, divkit::Direction::TgtToSrc}) {
        if (!divkit::direction_selected(dir, cfg.direction)) continue;
        auto stats = divkit::pos_breakdown(doc.corpus, table.log, dir);
        std::string stem = std::string("pos_stats_") +
                           (dir == divkit::Direction::SrcToTgt ? "src_tgt" : "tgt_src");
        if (cfg.format == "json")
            deliver(cfg, stem + ".json", divkit::pos_stats_json(stats).dump(2) + "\n");
        else
            deliver(cfg, stem + ".tsv", divkit::pos_stats_tsv(stats));
    }
    deliver(cfg, "oplog.tsv", divkit::oplog_tsv(table.log));
    return 0;
}

int cmd_transform(const RunConfig& cfg) {
    auto doc = load_corpus(cfg);
    auto table = divkit::corpus_stage_table(doc.corpus);
    warn_skipped(table);
    divkit::CorpusDocument out{table.transformed, doc.source_language, doc.target_language};
    deliver(cfg, "transformed.corpus", divkit::serialize_corpus(out));
    deliver(cfg, "oplog.tsv", divkit::oplog_tsv(table.log));
    return 0;
}

int cmd_project(const RunConfig& cfg) {
    auto doc = load_corpus(cfg);
    std::vector<std::pair<std::string, divkit::ProjectedTree>> projections;
    for (const auto& pair : doc.corpus.pairs()) {
        try {
            projections.emplace_back(pair.id(), divkit::project_pair(pair));
        } catch (const divkit::ProjectionDegenerateError&) {
            log_line(LogLevel::Info, "warning: pair \"" + pair.id() + "\" has no aligned token; skipped");
        }
    }
    deliver(cfg, "projected.txt", divkit::projected_trees_text(projections));
    return 0;
}

int cmd_experiment(const RunConfig& cfg) {
    auto doc = load_corpus(cfg);
    auto report = divkit::holdout_experiment(doc.corpus, cfg.train_fraction, cfg.threshold,
                                             cfg.min_support, cfg.seed);
    for (const auto& id : report.unprojectable)
        log_line(LogLevel::Info, "warning: test pair \"" + id + "\" has no aligned token; skipped");
    log_line(LogLevel::Debug, "learned " + std::to_string(report.rules.size()) + " rules from " +
                                  std::to_string(report.candidates.size()) + " candidates");
    if (cfg.format == "json")
        deliver(cfg, "report.json", divkit::experiment_json(report).dump(2) + "\n");
    else
        deliver(cfg, "report.tsv", divkit::experiment_tsv(report));
    deliver(cfg, "rules.tsv", divkit::rules_tsv(report.rules));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"divergence analysis for word-aligned dependency tree pairs"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&cfg](CLI::App* sub, bool with_direction) {
        sub->add_option("--input", cfg.input, "corpus file")->required();
        sub->add_option("--out", cfg.out_dir, "output directory (default: stdout)");
        sub->add_option("--format", cfg.format, "report format")
            ->check(CLI::IsMember({"tsv", "json"}));
        if (with_direction)
            sub->add_option("--direction", cfg.direction, "reporting direction")
                ->check(CLI::IsMember({"src-tgt", "tgt-src", "both"}));
    };

    auto* analyze = app.add_subcommand("analyze", "stage table and edge breakdowns");
    add_common(analyze, true);
    auto* posstats = app.add_subcommand("posstats", "POS-pair operation statistics");
    add_common(posstats, true);
    auto* transform = app.add_subcommand("transform", "emit the transformed corpus");
    add_common(transform, false);
    auto* project = app.add_subcommand("project", "project target trees onto the source side");
    add_common(project, false);
    auto* experiment = app.add_subcommand("experiment", "learn and score swap-correction rules");
    add_common(experiment, false);
    experiment->add_option("--threshold", cfg.threshold, "swap frequency threshold");
    experiment->add_option("--min-support", cfg.min_support, "minimum rule support");
    experiment->add_option("--train-fraction", cfg.train_fraction, "training split fraction");
    experiment->add_option("--seed", cfg.seed, "split shuffle seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cfg.threshold < 0.0) throw divkit::ConfigError("--threshold must be non-negative");
        if (cfg.min_support < 0) throw divkit::ConfigError("--min-support must be non-negative");
        if (experiment->parsed() && !(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0))
            throw divkit::ConfigError("--train-fraction must be strictly between 0 and 1");
        if (analyze->parsed()) return cmd_analyze(cfg);
        if (posstats->parsed()) return cmd_posstats(cfg);
        if (transform->parsed()) return cmd_transform(cfg);
        if (project->parsed()) return cmd_project(cfg);
        if (experiment->parsed()) return cmd_experiment(cfg);
    } catch (const divkit::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const divkit::EmptySplitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const divkit::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const divkit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
