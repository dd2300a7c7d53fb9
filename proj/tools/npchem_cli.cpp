// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

// npchem: batch front end. Every subcommand reads files, writes its
// artifacts atomically and records a JSON run manifest next to the primary
// output.
//
// Exit codes: 0 success, 1 usage, 2 input/output, 3 domain error.

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "npchem/evalharness/evalharness.hpp"
#include "npchem/genmetrics/genmetrics.hpp"
#include "npchem/scaffold/scaffold.hpp"
#include "npchem/smiles/standardize.hpp"
#include "npchem/tokenizers/codec.hpp"
#include "npchem/util/csv.hpp"
#include "npchem/util/io.hpp"
#include "npchem/util/parallel.hpp"
#include "npchem/validator/validator.hpp"

#ifndef NPCHEM_VERSION
#define NPCHEM_VERSION "0.0.0"
#endif

namespace npchem::cli {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

enum ExitCode { kOk = 0, kUsage = 1, kIo = 2, kDomain = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Shared plumbing for one invocation: reads are digested, writes are
/// atomic, and both are listed in the manifest.
class Run {
 public:
  explicit Run(std::string subcommand) : subcommand_(std::move(subcommand)) {}

  Json config = Json::object();
  std::string manifest_path;  // empty: derived from the first output
  unsigned jobs = 1;

  std::string read(const std::string& path) {
    std::string data = read_file(path);
    inputs_.push_back({{"path", path}, {"sha256", sha256_hex(data)}});
    return data;
  }

  std::vector<std::string> read_lines(const std::string& path) {
    return split_lines(read(path));
  }

  /// Corpus records: blank lines and '#' comments removed.
  std::vector<std::string> read_records(const std::string& path) {
    std::vector<std::string> out;
    for (auto& line : read_lines(path)) {
      if (is_corpus_record(line)) out.push_back(std::move(line));
    }
    return out;
  }

  void write(const std::string& path, const std::string& content) {
    write_atomic(path, content);
    outputs_.push_back(path);
  }

  void write_json(const std::string& path, const Json& value) {
    write(path, value.dump(2) + "\n");
  }

  void finish() {
    std::string path = manifest_path;
    if (path.empty() && !outputs_.empty()) path = outputs_.front() + ".manifest.json";
    if (path.empty()) return;
    Json m;
    m["tool"] = "npchem";
    m["version"] = NPCHEM_VERSION;
    m["subcommand"] = subcommand_;
    m["config"] = config;
    m["inputs"] = inputs_;
    m["outputs"] = outputs_;
    m["timestamp"] = utc_timestamp();
    write_atomic(path, m.dump(2) + "\n");
  }

 private:
  std::string subcommand_;
  Json inputs_ = Json::array();
  std::vector<std::string> outputs_;
};

SplitFractions parse_fractions(const std::string& text) {
  const auto parts = csv_split(text);
  if (parts.size() != 3) throw UsageError("--fractions needs three comma-separated values");
  try {
    return {std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])};
  } catch (const std::exception&) {
    throw UsageError("--fractions values must be numbers");
  }
}

std::string stem_label(const std::string& path) { return fs::path(path).stem().string(); }

std::vector<std::string> labels_for(const std::vector<std::string>& inputs,
                                    const std::vector<std::string>& labels) {
  if (labels.empty()) {
    std::vector<std::string> out;
    for (const auto& p : inputs) out.push_back(stem_label(p));
    return out;
  }
  if (labels.size() != inputs.size()) {
    throw UsageError("give one --label per input");
  }
  return labels;
}

Json fit_json(const ZipfFit& fit) {
  return {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r_squared}};
}

/// Items from a plain list (one per line) or from a named CSV column.
std::vector<std::string> read_items(Run& run, const std::string& path,
                                    const std::string& column, bool keep_empty) {
  std::vector<std::string> lines = run.read_lines(path);
  std::vector<std::string> items;
  if (column.empty()) {
    for (auto& l : lines) {
      if (!l.empty() && l.front() == '#') continue;
      if (l.empty() && !keep_empty) continue;
      items.push_back(std::move(l));
    }
    return items;
  }
  std::optional<std::size_t> index;
  for (const auto& l : lines) {
    if (l.empty() || l.front() == '#') continue;
    const auto fields = csv_split(l);
    if (!index) {
      const auto it = std::find(fields.begin(), fields.end(), column);
      if (it == fields.end()) {
        throw DomainError("column '" + column + "' not found in " + path);
      }
      index = static_cast<std::size_t>(it - fields.begin());
      continue;
    }
    if (*index >= fields.size()) throw DomainError("short CSV record in " + path);
    if (fields[*index].empty() && !keep_empty) continue;
    items.push_back(fields[*index]);
  }
  return items;
}

std::string jaccard_matrix_csv(const std::vector<std::string>& labels,
                               const std::function<double(std::size_t, std::size_t)>& sim) {
  std::string out = "label";
  for (const auto& l : labels) out += "," + csv_field(l);
  out += '\n';
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += csv_field(labels[i]);
    for (std::size_t j = 0; j < labels.size(); ++j) out += "," + fixed_text(sim(i, j), 4);
    out += '\n';
  }
  return out;
}

void require_records(const std::vector<std::string>& records, const std::string& path) {
  if (records.empty()) throw DomainError("empty corpus: " + path);
}

// ---------------------------------------------------------------------------
// Subcommands

struct Common {
  std::string manifest;
  unsigned jobs = default_jobs();
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--manifest", c.manifest, "Run manifest path (default: <output>.manifest.json)");
  app->add_option("--jobs", c.jobs, "Worker threads (default: NPCHEM_JOBS or 1)")
      ->check(CLI::PositiveNumber);
}

Run start(const std::string& name, const Common& c) {
  Run run(name);
  run.manifest_path = c.manifest;
  run.jobs = c.jobs;
  return run;
}

struct TokenizerArgs {
  std::string scheme = "char";
  std::string vocab;
  std::string merges;
};

void add_tokenizer_args(CLI::App* app, TokenizerArgs& t) {
  app->add_option("--scheme", t.scheme, "char, ais or bpe")
      ->check(CLI::IsMember({"char", "ais", "bpe"}));
  app->add_option("--vocab", t.vocab, "Vocabulary JSON (built from the input when omitted)");
  app->add_option("--merges", t.merges, "BPE merges file");
}

Tokenizer load_tokenizer(Run& run, const TokenizerArgs& t,
                         const std::vector<std::string>& corpus) {
  const Scheme scheme = scheme_from_string(t.scheme);
  run.config["scheme"] = t.scheme;
  run.config["vocab"] = t.vocab;
  run.config["merges"] = t.merges;
  MergeList merges;
  if (scheme == Scheme::kBpe) {
    if (t.merges.empty() || t.vocab.empty()) {
      throw UsageError("--scheme bpe needs --vocab and --merges");
    }
    merges = merges_from_text(run.read(t.merges));
  }
  if (!t.vocab.empty()) {
    return Tokenizer(scheme, vocabulary_from_json(nlohmann::json::parse(run.read(t.vocab))),
                     std::move(merges));
  }
  return Tokenizer(scheme,
                   scheme == Scheme::kChar ? build_char_vocabulary(corpus)
                                           : build_ais_vocabulary(corpus));
}

class Cli {
 public:
  Cli() : app_("npchem: SMILES standardization, validation, tokenization, "
               "scaffold and evaluation statistics") {
    app_.require_subcommand(1);
    app_.set_version_flag("--version", NPCHEM_VERSION);
    standardize();
    validate();
    errors();
    train_bpe();
    encode();
    token_stats_cmd();
    vocab_jaccard();
    scaffold();
    split();
    zipf();
    scaffold_jaccard();
    index();
    eval_gen();
    cv_plan();
    metrics();
    compare();
  }

  int main(int argc, char** argv) {
    try {
      app_.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app_.exit(e);
      return code == 0 ? kOk : kUsage;
    }
    try {
      action_();
      return kOk;
    } catch (const UsageError& e) {
      std::cerr << "npchem: usage error: " << e.what() << "\n";
      return kUsage;
    } catch (const IoError& e) {
      std::cerr << "npchem: input/output error: " << e.what() << "\n";
      return kIo;
    } catch (const SmilesError& e) {
      std::cerr << "npchem: domain error: " << info(e.category()).message << " ("
                << e.what() << ")\n";
      return kDomain;
    } catch (const std::exception& e) {
      std::cerr << "npchem: domain error: " << e.what() << "\n";
      return kDomain;
    }
  }

 private:
  template <typename Options>
  CLI::App* command(const std::string& name, const std::string& help,
                    std::shared_ptr<Options> opts,
                    std::function<void(Options&)> body) {
    CLI::App* sub = app_.add_subcommand(name, help);
    add_common(sub, opts->common);
    sub->callback([this, opts, body] { action_ = [opts, body] { body(*opts); }; });
    return sub;
  }

  void standardize() {
    struct O { Common common; std::string in, out, report; };
    auto o = std::make_shared<O>();
    auto* s = command<O>("standardize", "Largest fragment, kekulize, canonicalize, deduplicate", o,
                         [](O& o) {
      Run run = start("standardize", o.common);
      run.config = {{"in", o.in}, {"out", o.out}, {"report", o.report}};
      const auto lines = run.read_lines(o.in);
      const StandardizeResult result = standardize_corpus(lines, run.jobs);
      if (result.report.input_count == 0) throw DomainError("empty corpus: " + o.in);
      std::string text;
      for (const auto& k : result.kept) text += k + "\n";
      run.write(o.out, text);
      if (!o.report.empty()) {
        const auto& r = result.report;
        run.write_json(o.report, {{"input", r.input_count}, {"kept", r.kept},
                                  {"dropped_parse", r.dropped_parse},
                                  {"dropped_kekulize", r.dropped_kekulize},
                                  {"dropped_duplicate", r.dropped_duplicate}});
      }
      run.finish();
    });
    s->add_option("--in", o->in, "Input SMILES, one per line")->required();
    s->add_option("--out", o->out, "Standardized SMILES output")->required();
    s->add_option("--report", o->report, "Counts JSON");
  }

  void validate() {
    struct O { Common common; std::string in, out, lines; bool partial = false; };
    auto o = std::make_shared<O>();
    auto* s = command<O>("validate", "Validate SMILES and tally error categories", o, [](O& o) {
      Run run = start("validate", o.common);
      run.config = {{"in", o.in}, {"out", o.out}, {"lines", o.lines}, {"partial", o.partial}};
      const auto records = run.read_records(o.in);
      const ParseMode mode = o.partial ? ParseMode::kPartial : ParseMode::kFull;
      const auto outcomes = parallel_map(
          records, [mode](const std::string& s) { return npchem::validate(s, mode); },
          run.jobs);
      ErrorProfile profile;
      std::string per_line = "index,valid,kind,message,position\n";
      for (std::size_t i = 0; i < outcomes.size(); ++i) {
        profile.add(outcomes[i]);
        per_line += std::to_string(i) + ",";
        if (outcomes[i].valid) {
          per_line += "1,,,\n";
          continue;
        }
        const auto& e = *outcomes[i].error;
        per_line += "0," + std::string(to_string(info(e.category).kind)) + "," +
                    csv_field(info(e.category).message) + "," +
                    std::to_string(e.position) + "\n";
      }
      Json out = to_json(profile);
      out["mode"] = o.partial ? "partial" : "full";
      run.write_json(o.out, out);
      if (!o.lines.empty()) run.write(o.lines, per_line);
      run.finish();
    });
    s->add_option("--in", o->in, "SMILES to check")->required();
    s->add_option("--out", o->out, "Error profile JSON")->required();
    s->add_option("--lines", o->lines, "Per-line outcome CSV");
    s->add_flag("--partial", o->partial, "Treat strings as prefixes");
  }

  void errors() {
    struct O { Common common; std::vector<std::string> in, label; std::string out; };
    auto o = std::make_shared<O>();
    auto* s = command<O>("errors", "Error-type table over several corpora", o, [](O& o) {
      Run run = start("errors", o.common);
      const auto labels = labels_for(o.in, o.label);
      run.config = {{"in", o.in}, {"label", labels}, {"out", o.out}};
      std::vector<std::pair<std::string, ErrorProfile>> columns;
      for (std::size_t i = 0; i < o.in.size(); ++i) {
        columns.emplace_back(labels[i], error_profile(run.read_records(o.in[i]), run.jobs));
      }
      run.write(o.out, error_table_csv(columns));
      run.finish();
    });
    s->add_option("--in", o->in, "Corpus per column (repeatable)")->required();
    s->add_option("--label", o->label, "Column label per input");
    s->add_option("--out", o->out, "CSV table")->required();
  }

  void train_bpe() {
    struct O { Common common; std::string in, merges, vocab; std::size_t target = 0; };
    auto o = std::make_shared<O>();
    auto* s = command<O>("train-bpe", "Learn BPE merges", o, [](O& o) {
      Run run = start("train-bpe", o.common);
      run.config = {{"in", o.in}, {"target", o.target}, {"merges", o.merges}, {"vocab", o.vocab}};
      const auto records = run.read_records(o.in);
      require_records(records, o.in);
      const BpeModel model = npchem::train_bpe(records, o.target);
      run.write(o.merges, "# npchem bpe merges, target " + std::to_string(o.target) + "\n" +
                              merges_to_text(model.merges));
      run.write(o.vocab, to_json(model.vocabulary).dump(2) + "\n");
      run.finish();
    });
    s->add_option("--in", o->in, "Training corpus")->required();
    s->add_option("--target", o->target, "Target vocabulary size, specials included")->required();
    s->add_option("--merges", o->merges, "Merges output")->required();
    s->add_option("--vocab", o->vocab, "Vocabulary JSON output")->required();
  }

  void encode() {
    struct O {
      Common common;
      TokenizerArgs tok;
      std::string in, out, out_vocab;
      std::size_t max_len = kDefaultMaxLength;
      bool pad = false, no_special = false;
    };
    auto o = std::make_shared<O>();
    auto* s = command<O>("encode", "Token ids, one sequence per line", o, [](O& o) {
      Run run = start("encode", o.common);
      const auto records = run.read_records(o.in);
      const Tokenizer tok = load_tokenizer(run, o.tok, records);
      run.config["in"] = o.in;
      run.config["out"] = o.out;
      run.config["out_vocab"] = o.out_vocab;
      run.config["max_len"] = o.max_len;
      run.config["pad"] = o.pad;
      run.config["special"] = !o.no_special;
      const EncodeOptions options{o.max_len, o.pad, !o.no_special};
      std::string text;
      for (std::size_t i = 0; i < records.size(); ++i) {
        TokenSequence seq;
        try {
          seq = tok.encode(records[i], options);
        } catch (const SmilesError& e) {
          throw DomainError("record " + std::to_string(i + 1) + ": " + e.what());
        }
        for (std::size_t j = 0; j < seq.ids.size(); ++j) {
          if (j) text += ' ';
          text += std::to_string(seq.ids[j]);
        }
        text += '\n';
      }
      run.write(o.out, text);
      if (!o.out_vocab.empty()) run.write(o.out_vocab, to_json(tok.vocabulary()).dump(2) + "\n");
      run.finish();
    });
    add_tokenizer_args(s, o->tok);
    s->add_option("--in", o->in, "SMILES input")->required();
    s->add_option("--out", o->out, "Space-separated ids per line")->required();
    s->add_option("--out-vocab", o->out_vocab, "Write the vocabulary used");
    s->add_option("--max-len", o->max_len, "Truncate to this many ids (0: no limit)");
    s->add_flag("--pad", o->pad, "Pad to --max-len");
    s->add_flag("--no-special", o->no_special, "Omit [BOS]/[EOS]");
  }

  void token_stats_cmd() {
    struct O { Common common; TokenizerArgs tok; std::string in, out, ranks; };
    auto o = std::make_shared<O>();
    auto* s = command<O>("token-stats", "Sequence length and token frequency statistics", o,
                         [](O& o) {
      Run run = start("token-stats", o.common);
      const auto records = run.read_records(o.in);
      require_records(records, o.in);
      const Tokenizer tok = load_tokenizer(run, o.tok, records);
      run.config["in"] = o.in;
      run.config["out"] = o.out;
      run.config["ranks"] = o.ranks;
      const TokenStats st = token_stats(tok, records);
      Json out = {{"sequences", st.sequences}, {"skipped", st.skipped},
                  {"mean_length", st.mean_length}, {"median_length", st.median_length},
                  {"vocab_size", tok.vocabulary().size()},
                  {"used_tokens", st.rank_frequency.size()}};
      if (st.rank_frequency.size() >= 2) {
        std::vector<double> freq;
        for (const auto& [t, c] : st.rank_frequency) freq.push_back(static_cast<double>(c));
        out["zipf"] = fit_json(zipf_fit(freq));
      }
      run.write_json(o.out, out);
      if (!o.ranks.empty()) {
        std::string csv = "rank,token,count\n";
        for (std::size_t i = 0; i < st.rank_frequency.size(); ++i) {
          csv += std::to_string(i + 1) + "," + csv_field(st.rank_frequency[i].first) + "," +
                 std::to_string(st.rank_frequency[i].second) + "\n";
        }
        run.write(o.ranks, csv);
      }
      run.finish();
    });
    add_tokenizer_args(s, o->tok);
    s->add_option("--in", o->in, "SMILES input")->required();
    s->add_option("--out", o->out, "Statistics JSON")->required();
    s->add_option("--ranks", o->ranks, "Rank-frequency CSV");
  }

  void vocab_jaccard() {
    struct O { Common common; std::vector<std::string> vocab, label; std::string out; };
    auto o = std::make_shared<O>();
    auto* s = command<O>("vocab-jaccard", "Pairwise Jaccard similarity of vocabularies", o,
                         [](O& o) {
      Run run = start("vocab-jaccard", o.common);
      const auto labels = labels_for(o.vocab, o.label);
      run.config = {{"vocab", o.vocab}, {"label", labels}, {"out", o.out}};
      std::vector<Vocabulary> vocabs;
      for (const auto& p : o.vocab) {
        vocabs.push_back(vocabulary_from_json(nlohmann::json::parse(run.read(p))));
      }
      run.write(o.out, jaccard_matrix_csv(labels, [&](std::size_t i, std::size_t j) {
                  return npchem::vocab_jaccard(vocabs[i], vocabs[j]);
                }));
      run.finish();
    });
    s->add_option("--vocab", o->vocab, "Vocabulary JSON (repeatable)")->required();
    s->add_option("--label", o->label, "Label per vocabulary");
    s->add_option("--out", o->out, "Matrix CSV")->required();
  }

  void scaffold() {
    struct O { Common common; std::string in, out; };
    auto o = std::make_shared<O>();
    auto* s = command<O>("scaffold", "Murcko scaffold key per molecule", o, [](O& o) {
      Run run = start("scaffold", o.common);
      run.config = {{"in", o.in}, {"out", o.out}};
      const auto records = run.read_records(o.in);
      const auto keys = parallel_map(
          records,
          [](const std::string& s) -> std::optional<ScaffoldKey> {
            try {
              return murcko_scaffold(s);
            } catch (const SmilesError&) {
              return std::nullopt;
            }
          },
          run.jobs);
      std::string csv = "smiles,scaffold_key,status\n";
      for (std::size_t i = 0; i < records.size(); ++i) {
        csv += csv_field(records[i]) + "," + (keys[i] ? csv_field(keys[i]->key) : "") + "," +
               (keys[i] ? "ok" : "invalid") + "\n";
      }
      run.write(o.out, csv);
      run.finish();
    });
    s->add_option("--in", o->in, "SMILES input")->required();
    s->add_option("--out", o->out, "CSV smiles,scaffold_key,status")->required();
  }

  void split() {
    struct O {
      Common common;
      std::string in, out, mode = "scaffold", fractions = "0.8,0.1,0.1";
      std::uint64_t seed = 0;
    };
    auto o = std::make_shared<O>();
    auto* s = command<O>("split", "Train/valid/test assignment", o, [](O& o) {
      Run run = start("split", o.common);
      const SplitFractions f = parse_fractions(o.fractions);
      run.config = {{"in", o.in}, {"out", o.out}, {"mode", o.mode},
                    {"fractions", {f.train, f.valid, f.test}}, {"seed", o.seed}};
      const auto records = run.read_records(o.in);
      require_records(records, o.in);
      const SplitPlan plan = o.mode == "scaffold"
                                 ? scaffold_split(records, f, o.seed, run.jobs)
                                 : random_split(records.size(), f, o.seed);
      run.write(o.out, split_plan_csv(records, plan, o.mode));
      run.finish();
    });
    s->add_option("--in", o->in, "SMILES input")->required();
    s->add_option("--out", o->out, "Plan CSV")->required();
    s->add_option("--mode", o->mode, "scaffold or random")
        ->check(CLI::IsMember({"scaffold", "random"}));
    s->add_option("--fractions", o->fractions, "train,valid,test");
    s->add_option("--seed", o->seed, "Random seed");
  }

  void zipf() {
    struct O { Common common; std::string in, column, table, fit; bool keep_empty = false; };
    auto o = std::make_shared<O>();
    auto* s = command<O>("zipf", "Rank-frequency table and power-law fit", o, [](O& o) {
      Run run = start("zipf", o.common);
      run.config = {{"in", o.in}, {"column", o.column}, {"keep_empty", o.keep_empty},
                    {"table", o.table}, {"fit", o.fit}};
      const ZipfFit fit = zipf_fit_items(read_items(run, o.in, o.column, o.keep_empty));
      run.write(o.table, zipf_table_csv(fit));
      Json out = fit_json(fit);
      out["items"] = fit.table.size();
      run.write_json(o.fit, out);
      run.finish();
    });
    s->add_option("--in", o->in, "Items, one per line, or a CSV with --column")->required();
    s->add_option("--column", o->column, "CSV column holding the items");
    s->add_flag("--keep-empty", o->keep_empty, "Count empty items (acyclic molecules)");
    s->add_option("--table", o->table, "rank,frequency CSV")->required();
    s->add_option("--fit", o->fit, "Fit JSON")->required();
  }

  void scaffold_jaccard() {
    struct O { Common common; std::vector<std::string> in, label; std::string column, out; };
    auto o = std::make_shared<O>();
    auto* s = command<O>("scaffold-jaccard", "Pairwise Jaccard similarity of scaffold sets", o,
                         [](O& o) {
      Run run = start("scaffold-jaccard", o.common);
      const auto labels = labels_for(o.in, o.label);
      run.config = {{"in", o.in}, {"label", labels}, {"column", o.column}, {"out", o.out}};
      std::vector<std::set<std::string>> sets;
      for (const auto& p : o.in) {
        const auto items = read_items(run, p, o.column, false);
        sets.emplace_back(items.begin(), items.end());
      }
      run.write(o.out, jaccard_matrix_csv(labels, [&](std::size_t i, std::size_t j) {
                  return scaffold_set_jaccard(sets[i], sets[j]);
                }));
      run.finish();
    });
    s->add_option("--in", o->in, "Scaffold key list or CSV (repeatable)")->required();
    s->add_option("--label", o->label, "Label per input");
    s->add_option("--column", o->column, "CSV column holding the keys");
    s->add_option("--out", o->out, "Matrix CSV")->required();
  }

  void index() {
    struct O { Common common; std::string in, keys, scaffolds; };
    auto o = std::make_shared<O>();
    auto* s = command<O>("index", "Reference key and scaffold sets of a training corpus", o,
                         [](O& o) {
      Run run = start("index", o.common);
      run.config = {{"in", o.in}, {"keys", o.keys}, {"scaffolds", o.scaffolds}};
      const ReferenceIndex ref = build_reference_index(run.read_lines(o.in), run.jobs);
      auto sorted_text = [](const std::unordered_set<std::string>& set) {
        std::vector<std::string> v(set.begin(), set.end());
        std::sort(v.begin(), v.end());
        std::string out;
        for (const auto& x : v) out += x + "\n";
        return out;
      };
      run.write(o.keys, sorted_text(ref.keys));
      run.write(o.scaffolds, sorted_text(ref.scaffolds));
      run.finish();
    });
    s->add_option("--in", o->in, "Training corpus")->required();
    s->add_option("--keys", o->keys, "Canonical key list output")->required();
    s->add_option("--scaffolds", o->scaffolds, "Scaffold key list output")->required();
  }

  void eval_gen() {
    struct O {
      Common common;
      std::vector<std::string> in, label;
      std::string keys, scaffolds, out, table;
    };
    auto o = std::make_shared<O>();
    auto* s = command<O>("eval-gen", "Validity, uniqueness, novelty and scaffold counts", o,
                         [](O& o) {
      Run run = start("eval-gen", o.common);
      const auto labels = labels_for(o.in, o.label);
      run.config = {{"in", o.in}, {"label", labels}, {"keys", o.keys},
                    {"scaffolds", o.scaffolds}, {"out", o.out}, {"table", o.table}};
      ReferenceIndex ref;
      if (!o.keys.empty()) {
        for (auto& k : run.read_lines(o.keys)) {
          if (!k.empty()) ref.keys.insert(std::move(k));
        }
      }
      if (!o.scaffolds.empty()) {
        for (auto& k : run.read_lines(o.scaffolds)) {
          if (!k.empty()) ref.scaffolds.insert(std::move(k));
        }
      }
      std::vector<LabeledReport> reports;
      Json out = Json::array();
      for (std::size_t i = 0; i < o.in.size(); ++i) {
        reports.emplace_back(labels[i], evaluate_corpus(run.read_lines(o.in[i]), ref, run.jobs));
        out.push_back({{"label", labels[i]}, {"report", to_json(reports.back().second)}});
      }
      run.write_json(o.out, out);
      if (!o.table.empty()) run.write(o.table, report_table_csv(reports));
      run.finish();
    });
    s->add_option("--in", o->in, "Generated SMILES (repeatable)")->required();
    s->add_option("--label", o->label, "Label per input");
    s->add_option("--keys", o->keys, "Reference keys from `index`");
    s->add_option("--scaffolds", o->scaffolds, "Reference scaffolds from `index`");
    s->add_option("--out", o->out, "Report JSON")->required();
    s->add_option("--table", o->table, "Summary CSV, one row per label");
  }

  void cv_plan() {
    struct O {
      Common common;
      std::string in, out, mode = "random";
      std::uint64_t seed = 0;
      std::vector<std::string> grid;
    };
    auto o = std::make_shared<O>();
    auto* s = command<O>("cv-plan", "5x5 repeated cross-validation plan", o, [](O& o) {
      Run run = start("cv-plan", o.common);
      run.config = {{"in", o.in}, {"out", o.out}, {"mode", o.mode}, {"seed", o.seed},
                    {"grid", o.grid}};
      std::map<std::string, std::vector<std::string>> axes;
      for (const auto& g : o.grid) {
        const auto eq = g.find('=');
        if (eq == std::string::npos || eq == 0) {
          throw UsageError("--grid expects name=value1,value2");
        }
        axes[g.substr(0, eq)] = csv_split(g.substr(eq + 1));
      }
      const auto records = run.read_records(o.in);
      const CvPlan plan = plan_cv(records, cv_mode_from_string(o.mode), o.seed, run.jobs);
      Json out = to_json(plan);
      if (!axes.empty()) out["grid"] = enumerate_grid(axes);
      out["selection"] = "highest mean validation score over folds";
      run.write_json(o.out, out);
      run.finish();
    });
    s->add_option("--in", o->in, "Records (SMILES, one per line)")->required();
    s->add_option("--out", o->out, "Plan JSON")->required();
    s->add_option("--mode", o->mode, "random or scaffold")
        ->check(CLI::IsMember({"random", "scaffold"}));
    s->add_option("--seed", o->seed, "Random seed");
    s->add_option("--grid", o->grid, "Hyperparameter axis name=v1,v2 (repeatable)");
  }

  /// metric -> values ordered by run id.
  static std::map<std::string, std::vector<double>> read_runs(Run& run, const std::string& path) {
    std::map<std::string, std::map<long, double>> by_metric;
    bool header = true;
    for (const auto& line : run.read_lines(path)) {
      if (line.empty() || line.front() == '#') continue;
      const auto f = csv_split(line);
      if (header) {
        if (f != std::vector<std::string>{"run_id", "fold", "repeat", "metric", "value"}) {
          throw DomainError(path + ": expected header run_id,fold,repeat,metric,value");
        }
        header = false;
        continue;
      }
      if (f.size() != 5) throw DomainError(path + ": expected 5 fields: " + line);
      long id = 0;
      double value = 0;
      try {
        id = std::stol(f[0]);
        value = std::stod(f[4]);
      } catch (const std::exception&) {
        throw DomainError(path + ": malformed record: " + line);
      }
      if (!by_metric[f[3]].emplace(id, value).second) {
        throw DomainError(path + ": duplicate run " + f[0] + " for metric " + f[3]);
      }
    }
    std::map<std::string, std::vector<double>> out;
    for (const auto& [metric, runs] : by_metric) {
      for (const auto& [id, v] : runs) out[metric].push_back(v);
    }
    return out;
  }

  void metrics() {
    struct O { Common common; std::string in, out; };
    auto o = std::make_shared<O>();
    auto* s = command<O>("metrics", "Mean, standard deviation and standard error per metric", o,
                         [](O& o) {
      Run run = start("metrics", o.common);
      run.config = {{"in", o.in}, {"out", o.out}};
      const auto runs = read_runs(run, o.in);
      if (runs.empty()) throw DomainError("no metric records in " + o.in);
      Json out;
      out["multiclass_auc"] = "macro one-vs-rest";
      out["multiclass_mcc"] = "generalized";
      Json table = Json::object();
      for (const auto& [metric, values] : runs) {
        const MetricSummary m = summarize(values);
        table[metric] = {{"mean", m.mean}, {"std", m.std}, {"se", m.se}, {"n", m.n},
                         {"complete", m.n == static_cast<std::size_t>(kCvFolds * kCvRepeats)}};
      }
      out["metrics"] = std::move(table);
      run.write_json(o.out, out);
      run.finish();
    });
    s->add_option("--in", o->in, "CSV run_id,fold,repeat,metric,value")->required();
    s->add_option("--out", o->out, "Summary JSON")->required();
  }

  void compare() {
    struct O {
      Common common;
      std::vector<std::string> in, label;
      std::string metric, out, pairs;
    };
    auto o = std::make_shared<O>();
    auto* s = command<O>("compare", "Pairwise Welch's t-tests between models", o, [](O& o) {
      Run run = start("compare", o.common);
      const auto labels = labels_for(o.in, o.label);
      run.config = {{"in", o.in}, {"label", labels}, {"metric", o.metric}, {"out", o.out},
                    {"pairs", o.pairs}};
      std::vector<LabeledSample> samples;
      for (std::size_t i = 0; i < o.in.size(); ++i) {
        auto runs = read_runs(run, o.in[i]);
        const auto it = runs.find(o.metric);
        if (it == runs.end()) throw DomainError(o.in[i] + ": no values for " + o.metric);
        samples.emplace_back(labels[i], it->second);
      }
      run.write(o.out, comparison_matrix_csv(samples));
      if (!o.pairs.empty()) {
        Json pairs = Json::array();
        for (std::size_t i = 0; i < samples.size(); ++i) {
          for (std::size_t j = i + 1; j < samples.size(); ++j) {
            const auto c = welch_t(samples[i].second, samples[j].second);
            pairs.push_back({{"a", samples[i].first}, {"b", samples[j].first},
                             {"mean_diff", summarize(samples[i].second).mean -
                                               summarize(samples[j].second).mean},
                             {"t", c.t}, {"dof", c.dof}, {"p", c.p}, {"stars", c.stars}});
          }
        }
        run.write_json(o.pairs, pairs);
      }
      run.finish();
    });
    s->add_option("--in", o->in, "Runs CSV per model (repeatable)")->required();
    s->add_option("--label", o->label, "Label per model");
    s->add_option("--metric", o->metric, "Metric to compare")->required();
    s->add_option("--out", o->out, "Difference matrix CSV")->required();
    s->add_option("--pairs", o->pairs, "Per-pair statistics JSON");
  }

  CLI::App app_;
  std::function<void()> action_;
};

}  // namespace
}  // namespace npchem::cli

int main(int argc, char** argv) {
  npchem::cli::Cli cli;
  return cli.main(argc, argv);
}
