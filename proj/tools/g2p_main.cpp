// Copyright (c) 2026 The g2pkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "g2p/config.hpp"
#include "g2p/eval.hpp"
#include "g2p/hash.hpp"
#include "g2p/http_backend.hpp"
#include "g2p/jsonl.hpp"
#include "g2p/lexicon.hpp"
#include "g2p/llm.hpp"
#include "g2p/mock_backend.hpp"
#include "g2p/pipeline.hpp"
#include "g2p/prompts.hpp"

namespace g2p {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string read_file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_json_artifact(const fs::path& path, const ordered_json& doc) {
  AtomicFile out(path);
  out.stream() << doc.dump(2) << '\n';
  out.commit();
}

std::string id_to_string(const json& value, const std::string& where) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  throw SchemaError(where, "id must be a string or an integer");
}

// Resolves relative paths against the config file's directory, so a config
// checked into an experiment directory works from anywhere.
std::string resolve(const fs::path& base, const std::string& path) {
  if (path.empty()) return path;
  fs::path p(path);
  if (p.is_absolute()) return path;
  return (base / p).string();
}

void resolve_run_paths(RunConfig& run, const fs::path& base) {
  for (auto& [_, source] : run.sources) source.path = resolve(base, source.path);
  run.dict_dir = resolve(base, run.dict_dir);
  run.homographs_path = resolve(base, run.homographs_path);
  run.backend.script_path = resolve(base, run.backend.script_path);
  run.prompts_dir = resolve(base, run.prompts_dir);
  run.corpus_path = resolve(base, run.corpus_path);
  run.hypotheses_out = resolve(base, run.hypotheses_out);
  run.references_path = resolve(base, run.references_path);
  run.hypotheses_path = resolve(base, run.hypotheses_path);
  run.report_out = resolve(base, run.report_out);
  run.diff_out = resolve(base, run.diff_out);
}

// --- corpus ingestion ---

// Phoneme payloads appear either as a space-separated string or as a token
// array; Librig2p-style arrays mark word boundaries with " " elements.
PhonemeSequence parse_phoneme_node(const json& node, const std::string& where) {
  if (node.is_string()) return parse_phoneme_string(node.get<std::string>());
  if (node.is_array()) {
    std::vector<std::string> tokens;
    for (const auto& t : node) {
      if (!t.is_string()) throw SchemaError(where, "phoneme tokens must be strings");
      std::string s = t.get<std::string>();
      bool blank = s.empty() ||
                   std::all_of(s.begin(), s.end(), [](unsigned char c) {
                     return std::isspace(c);
                   });
      if (!blank) tokens.push_back(std::move(s));
    }
    return strip_stress(tokens);
  }
  throw SchemaError(where, "phonemes must be a string or an array");
}

// Same, but keeps the word-boundary structure: one group per word.
std::optional<std::vector<PhonemeSequence>> parse_phoneme_groups(
    const json& node, const std::string& where) {
  if (!node.is_array()) return std::nullopt;
  std::vector<PhonemeSequence> groups;
  std::vector<std::string> current;
  bool saw_boundary = false;
  auto flush = [&] {
    if (!current.empty()) {
      groups.push_back(strip_stress(current));
      current.clear();
    }
  };
  for (const auto& t : node) {
    if (!t.is_string()) throw SchemaError(where, "phoneme tokens must be strings");
    std::string s = t.get<std::string>();
    bool blank = s.empty() ||
                 std::all_of(s.begin(), s.end(), [](unsigned char c) {
                   return std::isspace(c);
                 });
    if (blank) {
      saw_boundary = true;
      flush();
    } else {
      current.push_back(std::move(s));
    }
  }
  flush();
  if (!saw_boundary) return std::nullopt;
  return groups;
}

struct IngestStats {
  std::set<std::string> word_fields;
  std::set<std::string> phoneme_fields;
  std::size_t records = 0;
  std::size_t skipped = 0;
  std::string boundary_convention;
};

const json* pick_field(const json& record, std::initializer_list<const char*> names,
                       std::string* used) {
  for (const char* name : names) {
    if (record.contains(name)) {
      *used = name;
      return &record[name];
    }
  }
  return nullptr;
}

// Word-level records: {word|char, phonemes|phn}, one occurrence per line.
void ingest_words_jsonl(const fs::path& path, PronunciationTable* table,
                        IngestStats* stats) {
  read_jsonl(path, [&](int lineno, const json& record) {
    std::string where = path.string() + ":" + std::to_string(lineno);
    std::string word_field, phoneme_field;
    const json* word_node = pick_field(record, {"word", "char"}, &word_field);
    if (!word_node || !word_node->is_string()) {
      throw SchemaError(where, "record needs a string 'word' (or 'char')");
    }
    const json* phoneme_node =
        pick_field(record, {"phonemes", "phn"}, &phoneme_field);
    if (!phoneme_node) {
      throw SchemaError(where, "record needs 'phonemes' (or 'phn')");
    }
    auto word = Word::parse(word_node->get<std::string>());
    if (!word) {
      throw SchemaError(where, "'" + word_node->get<std::string>() +
                                   "' is not a single word");
    }
    PhonemeSequence phonemes = parse_phoneme_node(*phoneme_node, where);
    if (phonemes.empty()) throw SchemaError(where, "empty phoneme sequence");
    table->add(std::move(*word), std::move(phonemes));
    stats->word_fields.insert(word_field);
    stats->phoneme_fields.insert(phoneme_field);
    ++stats->records;
  });
}

// Sentence-level records: {sentence|char|text, phonemes|phn}. Word-aligned
// occurrences are recovered from the boundary markers in the phoneme array;
// records whose group count does not match their word count are skipped and
// counted in the manifest.
void ingest_sentences_jsonl(const fs::path& path, PronunciationTable* table,
                            IngestStats* stats) {
  bool saw_groups = false;
  bool saw_flat = false;
  read_jsonl(path, [&](int lineno, const json& record) {
    std::string where = path.string() + ":" + std::to_string(lineno);
    std::string sentence_field, phoneme_field;
    const json* sentence_node =
        pick_field(record, {"sentence", "char", "text"}, &sentence_field);
    if (!sentence_node || !sentence_node->is_string()) {
      throw SchemaError(where,
                        "record needs a string 'sentence' (or 'char'/'text')");
    }
    const json* phoneme_node =
        pick_field(record, {"phonemes", "phn"}, &phoneme_field);
    if (!phoneme_node) {
      throw SchemaError(where, "record needs 'phonemes' (or 'phn')");
    }
    stats->word_fields.insert(sentence_field);
    stats->phoneme_fields.insert(phoneme_field);
    ++stats->records;

    auto groups = parse_phoneme_groups(*phoneme_node, where);
    if (!groups) {
      saw_flat = true;
      ++stats->skipped;
      return;
    }
    saw_groups = true;
    auto words = tokenize(sentence_node->get<std::string>());
    if (words.size() != groups->size()) {
      ++stats->skipped;
      return;
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
      if ((*groups)[i].empty()) continue;
      table->add(words[i], (*groups)[i]);
    }
  });
  if (saw_groups) {
    stats->boundary_convention = "token arrays with explicit ' ' separators";
  } else if (saw_flat) {
    stats->boundary_convention =
        "flat phoneme payloads (no word boundaries; records skipped)";
  }
}

// --- build-dict ---

int cmd_build_dict(const RunConfig& run) {
  run.validate_for_build_dict();

  std::vector<Lexicon> lexicons;
  ordered_json sources_manifest = ordered_json::array();

  for (const auto& source : run.dictionary.sources) {
    const SourceFile& file = run.sources.at(source.id);
    if (!fs::exists(file.path)) {
      throw FileError(file.path, "source file does not exist");
    }
    std::string bytes = read_file_bytes(file.path);

    PronunciationTable table;
    IngestStats stats;
    if (file.format == "cmu") {
      std::istringstream in(bytes);
      table = parse_cmu(in);
    } else if (file.format == "words-jsonl") {
      ingest_words_jsonl(file.path, &table, &stats);
    } else {
      ingest_sentences_jsonl(file.path, &table, &stats);
    }

    Lexicon lexicon = build_lexicon(table, source.policy, source.id);

    ordered_json entry;
    entry["id"] = source.id;
    entry["policy"] = std::string(to_string(source.policy));
    entry["path"] = file.path;
    entry["format"] = file.format;
    entry["fnv1a64"] = fnv1a64_hex(bytes);
    entry["words"] = table.word_count();
    entry["occurrences"] = table.occurrence_count();
    entry["entries_kept"] = lexicon.size();
    if (file.format != "cmu") {
      entry["field_mapping"] = {
          {"text", std::vector<std::string>(stats.word_fields.begin(),
                                            stats.word_fields.end())},
          {"phonemes", std::vector<std::string>(stats.phoneme_fields.begin(),
                                                stats.phoneme_fields.end())}};
      entry["records"] = stats.records;
      entry["skipped_records"] = stats.skipped;
      if (!stats.boundary_convention.empty()) {
        entry["boundary_convention"] = stats.boundary_convention;
      }
    }
    sources_manifest.push_back(std::move(entry));
    lexicons.push_back(std::move(lexicon));
  }

  std::size_t collisions = 0;
  Lexicon merged = merge_lexicons(lexicons, &collisions);

  std::string homograph_bytes = read_file_bytes(run.homographs_path);
  HomographDict homographs = HomographDict::load_file(run.homographs_path);

  fs::create_directories(run.dict_dir);
  fs::path dict_dir(run.dict_dir);
  write_json_artifact(dict_dir / "lexicon.json", merged.to_json());
  write_json_artifact(dict_dir / "provenance.json", merged.provenance_json());
  write_json_artifact(dict_dir / "homographs.json", homographs.to_json());

  ordered_json manifest;
  manifest["dictionary_spec"] = run.dictionary.to_string();
  manifest["sources"] = std::move(sources_manifest);
  manifest["merged_entries"] = merged.size();
  manifest["collisions_first_wins"] = collisions;
  manifest["homographs"] = {{"path", run.homographs_path},
                            {"entries", homographs.size()},
                            {"fnv1a64", fnv1a64_hex(homograph_bytes)}};
  write_json_artifact(dict_dir / "manifest.json", manifest);

  std::cerr << "built dictionary '" << run.dictionary.to_string() << "': "
            << merged.size() << " entries (" << collisions
            << " collisions resolved by precedence), " << homographs.size()
            << " homographs -> " << run.dict_dir << "\n";
  return 0;
}

// --- convert ---

Dictionaries load_dictionaries(const RunConfig& run) {
  fs::path dict_dir(run.dict_dir);
  fs::path lexicon_path = dict_dir / "lexicon.json";
  if (!fs::exists(lexicon_path)) {
    throw FileError(lexicon_path.string(),
                    "dictionary artifacts not found (run build-dict first)");
  }
  json lexicon_doc = json::parse(read_file_bytes(lexicon_path));
  json provenance_doc =
      json::parse(read_file_bytes(dict_dir / "provenance.json"));
  Dictionaries dicts;
  dicts.lexicon = Lexicon::from_json(lexicon_doc, provenance_doc);
  dicts.homographs = HomographDict::load_file(dict_dir / "homographs.json");
  return dicts;
}

std::unique_ptr<LlmBackend> make_backend(const RunConfig& run) {
  if (run.backend.kind == "mock") {
    return std::make_unique<MockBackend>(
        MockBackend::from_script_file(run.backend.script_path));
  }
  HttpBackendOptions options;
  options.base_url = run.backend.base_url;
  options.request_path = run.backend.request_path;
  options.api_key_env = run.backend.api_key_env;
  options.timeout_sec = run.backend.timeout_sec;
  options.concurrency_cap = run.backend.concurrency;
  return std::make_unique<HttpBackend>(options);
}

PromptLibrary make_prompts(const RunConfig& run) {
  PromptLibrary prompts = run.prompts_dir.empty()
                              ? PromptLibrary()
                              : PromptLibrary::from_dir(run.prompts_dir);
  prompts.defaults.model_id = run.backend.model_id;
  prompts.defaults.temperature = run.backend.temperature;
  prompts.defaults.max_output_tokens = run.backend.max_output_tokens;
  prompts.prompt_token_budget =
      static_cast<std::size_t>(run.prompt_token_budget);
  return prompts;
}

int cmd_convert(const RunConfig& run) {
  run.validate_for_convert();

  std::vector<std::pair<std::string, std::string>> corpus;
  std::set<std::string> seen_ids;
  read_jsonl(run.corpus_path, [&](int lineno, const json& record) {
    std::string where = run.corpus_path + ":" + std::to_string(lineno);
    if (!record.contains("id")) throw SchemaError(where, "record needs an id");
    if (!record.contains("sentence") || !record["sentence"].is_string()) {
      throw SchemaError(where, "record needs a string 'sentence'");
    }
    std::string id = id_to_string(record["id"], where);
    if (!seen_ids.insert(id).second) {
      throw ItemMismatch("duplicate corpus id '" + id + "' at " + where);
    }
    corpus.emplace_back(std::move(id), record["sentence"].get<std::string>());
  });

  auto base_backend = make_backend(run);
  CallCountingBackend backend(*base_backend);
  PromptLibrary prompts = make_prompts(run);

  Dictionaries dicts;
  if (run.mode == RunMode::kIckr) dicts = load_dictionaries(run);

  PipelineOptions options;
  options.fail_policy = run.fail_policy;
  options.max_attempts = run.backend.max_attempts;
  options.concurrency = run.backend.concurrency;
  ConversionContext ctx{dicts, backend, prompts, options};

  AtomicFile out(run.hypotheses_out);
  std::size_t done = 0;
  for (const auto& [id, sentence] : corpus) {
    ordered_json record;
    record["id"] = id;
    record["sentence"] = sentence;
    if (run.mode == RunMode::kOneShot) {
      try {
        PhonemeSequence seq = one_shot_convert(backend, prompts, sentence,
                                               run.backend.max_attempts);
        record["phonemes"] = seq.to_string();
        record["words"] = ordered_json::array();
      } catch (const BackendExhausted& e) {
        if (run.fail_policy == FailPolicy::kAbort) throw;
        record["phonemes"] = "";
        record["words"] = ordered_json::array();
        record["error"] = e.what();
      }
    } else {
      ConversionResult result = convert_sentence(ctx, sentence);
      record["phonemes"] = result.phonemes.to_string();
      ordered_json words = ordered_json::array();
      for (const auto& w : result.words) words.push_back(to_json(w));
      record["words"] = std::move(words);
    }
    out.stream() << record.dump() << '\n';
    ++done;
    if (done % 25 == 0) {
      std::cerr << "converted " << done << "/" << corpus.size() << " sentences\n";
    }
  }
  out.commit();
  std::cerr << "converted " << done << " sentence(s) with " << backend.calls()
            << " backend call(s) -> " << run.hypotheses_out << "\n";
  return 0;
}

// --- evaluate ---

struct HypothesisRecord {
  PhonemeSequence phonemes;
  std::optional<std::vector<WordPhonemes>> words;
  std::optional<std::vector<PhonemeSequence>> groups;
};

HypothesisRecord parse_hypothesis_payload(const json& record,
                                          const std::string& where) {
  HypothesisRecord hyp;
  const char* key = record.contains("hypothesis") ? "hypothesis" : "phonemes";
  if (record.contains(key)) {
    const json& node = record[key];
    if (node.is_array()) {
      // External format: one space-separated string per word.
      std::vector<PhonemeSequence> groups;
      std::vector<PhonemeToken> flat;
      for (const auto& g : node) {
        if (!g.is_string()) {
          throw SchemaError(where, "phoneme groups must be strings");
        }
        groups.push_back(parse_phoneme_string(g.get<std::string>()));
        for (auto t : groups.back()) flat.push_back(t);
      }
      hyp.groups = std::move(groups);
      hyp.phonemes = PhonemeSequence(std::move(flat));
    } else if (node.is_string()) {
      hyp.phonemes = parse_phoneme_string(node.get<std::string>());
    } else {
      throw SchemaError(where, "hypothesis phonemes must be a string or array");
    }
  }
  if (record.contains("words")) {
    if (!record["words"].is_array()) {
      throw SchemaError(where, "words must be an array");
    }
    std::vector<WordPhonemes> words;
    for (const auto& w : record["words"]) {
      if (!w.contains("word") || !w["word"].is_string() ||
          !w.contains("phonemes") || !w["phonemes"].is_string()) {
        throw SchemaError(where, "word entries need 'word' and 'phonemes'");
      }
      auto word = Word::parse(w["word"].get<std::string>());
      if (!word) throw SchemaError(where, "invalid word in word results");
      words.push_back(WordPhonemes{
          std::move(*word),
          parse_phoneme_string(w["phonemes"].get<std::string>())});
    }
    if (!words.empty()) hyp.words = std::move(words);
  }
  return hyp;
}

int cmd_evaluate(const RunConfig& run) {
  run.validate_for_evaluate();

  // References either carry an inline "hypothesis" or join a separate
  // hypotheses file by id; the file is only read when something needs it.
  std::vector<EvalItem> items;
  std::vector<std::size_t> needs_join;
  std::set<std::string> used;
  read_jsonl(run.references_path, [&](int lineno, const json& record) {
    std::string where = run.references_path + ":" + std::to_string(lineno);
    if (!record.contains("id")) throw SchemaError(where, "record needs an id");
    if (!record.contains("reference")) {
      throw SchemaError(where, "record needs a reference");
    }
    EvalItem item;
    item.id = id_to_string(record["id"], where);
    if (!used.insert(item.id).second) {
      throw ItemMismatch("duplicate reference id '" + item.id + "' at " + where);
    }
    item.subset = record.value("subset", std::string("all"));
    item.reference = parse_phoneme_node(record["reference"], where);
    if (record.contains("homograph_word") !=
        record.contains("homograph_reference")) {
      throw SchemaError(where,
                        "homograph_word and homograph_reference come together");
    }
    if (record.contains("homograph_word")) {
      auto word = Word::parse(record["homograph_word"].get<std::string>());
      if (!word) throw SchemaError(where, "invalid homograph_word");
      item.homograph_word = std::move(*word);
      item.homograph_reference =
          parse_phoneme_node(record["homograph_reference"], where);
    }
    if (record.contains("homograph_index")) {
      if (!record["homograph_index"].is_number_unsigned()) {
        throw SchemaError(where, "homograph_index must be a non-negative integer");
      }
      item.homograph_index = record["homograph_index"].get<std::size_t>();
    }

    if (record.contains("hypothesis")) {
      HypothesisRecord hyp = parse_hypothesis_payload(record, where);
      item.hypothesis = std::move(hyp.phonemes);
      item.hypothesis_words = std::move(hyp.words);
      item.hypothesis_groups = std::move(hyp.groups);
    } else {
      needs_join.push_back(items.size());
    }
    items.push_back(std::move(item));
  });
  if (items.empty()) throw ItemMismatch("reference file has no items");

  if (!needs_join.empty()) {
    if (run.hypotheses_path.empty()) {
      throw ConfigError("references lack inline hypotheses and "
                        "evaluate.hypotheses is not set");
    }
    std::map<std::string, HypothesisRecord> hypotheses;
    read_jsonl(run.hypotheses_path, [&](int lineno, const json& record) {
      std::string where = run.hypotheses_path + ":" + std::to_string(lineno);
      if (!record.contains("id")) throw SchemaError(where, "record needs an id");
      std::string id = id_to_string(record["id"], where);
      if (!hypotheses.emplace(id, parse_hypothesis_payload(record, where))
               .second) {
        throw ItemMismatch("duplicate hypothesis id '" + id + "' at " + where);
      }
    });
    for (std::size_t index : needs_join) {
      auto hyp = hypotheses.find(items[index].id);
      if (hyp == hypotheses.end()) {
        throw ItemMismatch("no hypothesis for reference id '" +
                           items[index].id + "'");
      }
      items[index].hypothesis = hyp->second.phonemes;
      items[index].hypothesis_words = hyp->second.words;
      items[index].hypothesis_groups = hyp->second.groups;
    }
    if (hypotheses.size() > needs_join.size()) {
      std::cerr << (hypotheses.size() - needs_join.size())
                << " hypothesis line(s) had no matching reference\n";
    }
  }

  EvalReport report = evaluate(items, run.eval_weights, run.score_homographs);
  write_json_artifact(run.report_out, report.to_json());

  if (!run.diff_out.empty()) {
    AtomicFile diff(run.diff_out);
    for (const auto& item : items) {
      std::size_t edits =
          levenshtein(item.reference.tokens(), item.hypothesis.tokens());
      diff.stream() << "id=" << item.id << " subset=" << item.subset
                    << " ref_len=" << item.reference.size()
                    << " edits=" << edits << '\n'
                    << format_alignment(item.reference, item.hypothesis)
                    << '\n';
    }
    diff.commit();
  }

  std::cout << report.table_row() << "\n";
  std::cerr << "report -> " << run.report_out << "\n";
  return 0;
}

int dispatch(const std::string& command, const std::string& config_path,
             const std::map<std::string, std::string>& overrides) {
  ConfigFile cfg = ConfigFile::load(config_path);
  for (const auto& [key, value] : overrides) cfg.set_string(key, value);

  RunConfig run = RunConfig::from_config(cfg);
  resolve_run_paths(run, fs::absolute(config_path).parent_path());

  if (command == "build-dict") return cmd_build_dict(run);
  if (command == "convert") return cmd_convert(run);
  return cmd_evaluate(run);
}

}  // namespace
}  // namespace g2p

int main(int argc, char** argv) {
  CLI::App app{"Contextual grapheme-to-phoneme conversion toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string dictionary_override;
  std::string mode_override;
  std::string backend_override;
  std::string out_override;
  std::string diff_override;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "run configuration file")
        ->required();
  };

  CLI::App* build = app.add_subcommand(
      "build-dict", "Build lexicon and homograph artifacts from the "
                    "configured sources");
  add_common(build);
  build->add_option("--dictionary", dictionary_override,
                    "dictionary spec, e.g. cmu+librig2p_freq");
  build->add_option("--out", out_override, "artifact directory");

  CLI::App* convert = app.add_subcommand(
      "convert", "Convert a JSONL corpus into phoneme hypotheses");
  add_common(convert);
  convert->add_option("--mode", mode_override, "ickr or one_shot");
  convert->add_option("--backend", backend_override, "mock or http");
  convert->add_option("--dictionary", dictionary_override,
                      "dictionary spec override");
  convert->add_option("--out", out_override, "hypotheses output path");

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Score hypotheses against references and write a report");
  add_common(evaluate);
  evaluate->add_option("--out", out_override, "report output path");
  evaluate->add_option("--diff", diff_override,
                       "write an aligned-diff dump per item");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  std::map<std::string, std::string> overrides;
  if (!dictionary_override.empty()) {
    overrides["dictionary.spec"] = dictionary_override;
  }
  if (!mode_override.empty()) overrides["mode"] = mode_override;
  if (!backend_override.empty()) overrides["backend.kind"] = backend_override;

  std::string command;
  if (build->parsed()) {
    command = "build-dict";
    if (!out_override.empty()) overrides["dictionary.dir"] = out_override;
  } else if (convert->parsed()) {
    command = "convert";
    if (!out_override.empty()) overrides["convert.out"] = out_override;
  } else {
    command = "evaluate";
    if (!out_override.empty()) overrides["evaluate.report"] = out_override;
    if (!diff_override.empty()) overrides["evaluate.diff"] = diff_override;
  }

  try {
    return g2p::dispatch(command, config_path, overrides);
  } catch (const g2p::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const g2p::BackendExhausted& e) {
    std::cerr << "backend exhausted: " << e.what() << "\n";
    return 3;
  } catch (const g2p::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
