// Copyright 2026 The mlime Authors.
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

// mlime command-line front end.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mlime/mlime.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

struct Globals {
  std::string data_dir;
  std::filesystem::path data() const {
    return data_dir.empty() ? mlime::default_data_dir() : std::filesystem::path(data_dir);
  }
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) mlime::fail("IoError", path, "cannot write " + path);
  out << text;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return mlime::read_file(path);
}

nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_input(path));
  } catch (const nlohmann::json::parse_error& e) {
    mlime::fail("SchemaError", path, path + ": " + e.what());
  }
}

/// Accepts a profile file (inventory under "inventory") or a bare inventory.
mlime::CharacterInventory read_inventory(const std::string& path) {
  const auto j = read_json(path);
  if (j.contains("inventory")) return mlime::profile_from_json(j).inventory;
  return mlime::inventory_from_json(j);
}

std::vector<std::string> words_of(const std::string& text, const mlime::LanguageProfile& profile) {
  std::vector<std::string> out;
  for (auto& t : mlime::normalize(text, profile).tokens) out.push_back(std::move(t.text));
  return out;
}

void print_suggestions(const std::vector<mlime::Suggestion>& s) {
  for (const auto& x : s) {
    std::cout << x.surface << "\t" << std::fixed << std::setprecision(4) << x.score << "\t"
              << mlime::to_string(x.kind) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mlime: multilingual input method engine"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--data-dir", g.data_dir, "data directory (default $MLIME_DATA_DIR)");

  int status = kOk;

  // ---- layout -------------------------------------------------------------
  auto* layout = app.add_subcommand("layout", "validate, generate, check or draw layouts");
  layout->require_subcommand(1);

  std::string layout_file;
  auto* validate = layout->add_subcommand("validate", "check a layout file");
  validate->add_option("layout", layout_file)->required();
  validate->callback([&] {
    const auto l = mlime::load_layout(read_input(layout_file));
    std::cout << "ok\t" << l.layout_id << "\n";
  });

  std::string gen_inventory, gen_corpus, gen_grid = "qwerty", gen_fallback = "e", gen_out;
  double gen_threshold = 0.02;
  int gen_max_lp = 8;
  std::string gen_tag;
  auto* generate = layout->add_subcommand("generate", "derive a layout from inventory and corpus");
  generate->add_option("--inventory", gen_inventory, "profile or inventory JSON")->required();
  generate->add_option("--corpus", gen_corpus, "UTF-8 text, one sentence per line")->required();
  generate->add_option("--grid", gen_grid, "qwerty, azerty or qwertz");
  generate->add_option("--threshold", gen_threshold, "relative frequency for a standalone key");
  generate->add_option("--fallback-host,--fallback", gen_fallback, "host key for graphemes without a base letter");
  generate->add_option("--max-long-press", gen_max_lp);
  generate->add_option("-o,--out", gen_out);
  generate->callback([&] {
    const auto inv = read_inventory(gen_inventory);
    mlime::AutogenOptions opt;
    const auto grid = mlime::parse_base_grid(gen_grid);
    if (!grid) mlime::fail("InvalidOptions", gen_grid, "unknown grid " + gen_grid);
    opt.base_grid = *grid;
    opt.standalone_threshold = gen_threshold;
    opt.fallback_host_key = gen_fallback;
    opt.max_long_press_per_key = gen_max_lp;
    const auto text = read_input(gen_corpus);
    const auto freqs = mlime::char_frequencies(mlime::split_whitespace(mlime::nfc(text)), inv);
    write_output(gen_out, mlime::serialize_layout(mlime::generate_layout(opt, inv, freqs)));
  });

  std::string cov_layout, cov_inventory;
  auto* coverage = layout->add_subcommand("coverage", "check a layout against an inventory");
  coverage->add_option("layout", cov_layout)->required();
  coverage->add_option("inventory,--inventory", cov_inventory, "profile or inventory JSON")
      ->required();
  coverage->callback([&] {
    const auto l = mlime::load_layout(read_input(cov_layout));
    const auto report = mlime::coverage_report(l, read_inventory(cov_inventory));
    for (const auto& [grapheme, reach] : report.entries) {
      std::cout << grapheme << "\t";
      if (reach) {
        std::cout << mlime::to_string(reach->path) << "\t" << reach->key_id << "\t" << reach->page;
      } else {
        std::cout << "MISSING";
      }
      std::cout << "\n";
    }
    std::cout << (report.complete ? "complete" : "incomplete") << "\t" << report.missing.size()
              << " missing\n";
    if (!report.complete) status = kInvalid;
  });

  std::string render_file;
  auto* render = layout->add_subcommand("render", "draw a layout as text");
  render->add_option("layout", render_file)->required();
  render->callback([&] { std::cout << mlime::render_layout(mlime::load_layout(read_input(render_file))); });

  // ---- corpus -------------------------------------------------------------
  auto* corpus = app.add_subcommand("corpus", "normalize text and train models");
  corpus->require_subcommand(1);

  std::string norm_profile, norm_input, norm_out;
  auto* normalize = corpus->add_subcommand("normalize", "normalize a corpus for one language");
  normalize->add_option("profile", norm_profile)->required();
  normalize->add_option("input", norm_input)->required();
  normalize->add_option("-o,--out", norm_out);
  normalize->callback([&] {
    const auto profile = mlime::profile_from_json(read_json(norm_profile));
    const auto c = mlime::normalize_corpus(read_input(norm_input), profile);
    std::string text;
    for (const auto& s : c.sentences) {
      for (std::size_t i = 0; i < s.size(); ++i) text += (i ? " " : "") + s[i];
      text += "\n";
    }
    write_output(norm_out, text);
    std::cerr << c.report.to_text();
  });

  std::string train_profile, train_input, train_out, train_wordlist;
  int train_order = mlime::kDefaultModelOrder;
  auto* train = corpus->add_subcommand("train", "train an n-gram model");
  train->add_option("profile", train_profile)->required();
  train->add_option("input", train_input)->required();
  train->add_option("--order", train_order);
  train->add_option("-o,--out", train_out);
  train->add_option("--wordlist", train_wordlist, "also write a spell-check wordlist");
  train->callback([&] {
    const auto profile = mlime::profile_from_json(read_json(train_profile));
    const auto c = mlime::normalize_corpus(read_input(train_input), profile);
    mlime::TrainParams params;
    params.language_tag = profile.language_tag;
    params.script = profile.primary_script();
    const auto model = mlime::train_ngram(c.sentences, train_order, params);
    write_output(train_out, model.serialize());
    if (!train_wordlist.empty()) {
      write_output(train_wordlist, mlime::build_wordlist(c.flat(), train_input).serialize());
    }
    std::cerr << "trained order " << train_order << " on " << c.token_count() << " tokens\n";
  });

  // ---- decode -------------------------------------------------------------
  auto* decode = app.add_subcommand("decode", "decode tap sequences");
  decode->require_subcommand(1);
  std::string sim_lang = "en", sim_context, sim_layout, sim_model, sim_profile, sim_taps;
  std::vector<std::string> sim_words;
  double sim_noise = 0;
  unsigned sim_seed = 1;
  std::size_t sim_k = 3;
  auto* simulate = decode->add_subcommand(
      "simulate", "decode a tap file, or type words with simulated (optionally noisy) taps");
  simulate->add_option("words", sim_words, "words to type with simulated taps");
  simulate->add_option("--lang", sim_lang, "language assets from the data directory");
  simulate->add_option("--layout", sim_layout, "layout file (overrides --lang)");
  simulate->add_option("--model", sim_model, "model file (overrides --lang)");
  simulate->add_option("--profile", sim_profile, "profile file (overrides --lang)");
  simulate->add_option("--taps", sim_taps, "lines of: x y kind [index]");
  simulate->add_option("--noise", sim_noise, "tap noise sigma in key widths");
  simulate->add_option("--seed", sim_seed);
  simulate->add_option("-k", sim_k);
  simulate->add_option("--context", sim_context);
  simulate->callback([&] {
    std::shared_ptr<const mlime::Layout> layout;
    std::shared_ptr<const mlime::NGramModel> model;
    mlime::LanguageProfile profile;
    if (sim_layout.empty() || sim_model.empty() || sim_profile.empty()) {
      mlime::AssetStore store(g.data());
      const auto a = store.get(sim_lang);
      layout = a->layout;
      model = a->model;
      profile = a->profile;
    }
    if (!sim_layout.empty()) {
      layout = std::make_shared<const mlime::Layout>(mlime::load_layout(read_input(sim_layout)));
    }
    if (!sim_model.empty()) {
      model = std::make_shared<const mlime::NGramModel>(mlime::NGramModel::parse(read_input(sim_model)));
    }
    if (!sim_profile.empty()) profile = mlime::profile_from_json(read_json(sim_profile));
    const mlime::SpatialModel spatial(layout);
    const mlime::Lexicon lexicon(mlime::candidate_words(*model), spatial);
    std::string committed = sim_context.empty() ? "" : sim_context + " ";

    auto decode_one = [&](const std::vector<mlime::TapEvent>& taps) {
      const auto ctx = words_of(committed, profile);
      mlime::DecodeOptions opt;
      opt.committed_text = committed;
      const auto sugs = mlime::decode_word(taps, ctx, *model, spatial, profile, sim_k, opt, &lexicon);
      const std::string word = mlime::commit_policy(sugs, profile);
      std::cout << "# commit " << word << "\n";
      print_suggestions(sugs);
      committed += word + " ";
    };

    if (!sim_taps.empty()) {
      std::istringstream in(read_input(sim_taps));
      std::string line;
      std::vector<mlime::TapEvent> word;
      std::int64_t t = 0;
      while (std::getline(in, line)) {
        std::istringstream ls(line);
        mlime::TapEvent e;
        std::string kind;
        if (!(ls >> e.x >> e.y >> kind)) continue;
        const auto k = mlime::parse_tap_kind(kind);
        if (!k) mlime::fail("InvalidEvent", kind, "unknown tap kind " + kind);
        e.kind = *k;
        if (e.kind == mlime::TapKind::kLongPressSelect) ls >> e.index;
        e.timestamp = t++;
        if (e.kind == mlime::TapKind::kSpace || e.kind == mlime::TapKind::kCommit) {
          if (!word.empty()) decode_one(word);
          word.clear();
        } else if (e.kind == mlime::TapKind::kBackspace) {
          if (!word.empty()) word.pop_back();
        } else {
          word.push_back(e);
        }
      }
      if (!word.empty()) decode_one(word);
    } else {
      if (sim_words.empty()) mlime::fail("InvalidOptions", "words", "give words or --taps");
      std::mt19937 rng(sim_seed);
      std::normal_distribution<double> noise(0.0, 1.0);
      for (const auto& w : sim_words) {
        auto taps = mlime::taps_for_word(mlime::nfc(w), spatial);
        for (auto& t : taps) {
          if (t.kind != mlime::TapKind::kTap || sim_noise <= 0) continue;
          const double kw = layout->pages[0].keys.front().width;
          t.x += noise(rng) * sim_noise * kw;
          t.y += noise(rng) * sim_noise * kw;
        }
        std::cout << "# typed " << w << "\n";
        decode_one(taps);
      }
    }
    std::cout << "committed\t" << committed << "\n";
  });

  // ---- suggest ------------------------------------------------------------
  std::string sug_lang = "en", sug_context;
  std::size_t sug_k = 3;
  auto* suggest = app.add_subcommand("suggest", "next-word predictions");
  suggest->add_option("context,--context", sug_context);
  suggest->add_option("--lang", sug_lang);
  suggest->add_option("-k", sug_k);
  suggest->callback([&] {
    mlime::AssetStore store(g.data());
    const auto a = store.get(sug_lang);
    const auto raw = mlime::split_whitespace(sug_context);
    if (!raw.empty()) {
      if (auto sh = mlime::expand_shorthand(raw.back(), a->profile)) {
        std::cout << "# shorthand " << raw.back() << " -> " << sh->surface << "\n";
      }
    }
    print_suggestions(mlime::next_words(words_of(sug_context, a->profile), *a->model, a->profile, sug_k));
  });

  // ---- spellcheck ---------------------------------------------------------
  std::string spell_lang = "en", spell_personal;
  std::vector<std::string> spell_words;
  auto* spell = app.add_subcommand("spellcheck", "flag unknown words and suggest fixes");
  spell->add_option("words,--word", spell_words)->required();
  spell->add_option("--lang", spell_lang);
  spell->add_option("--personal", spell_personal, "personal dictionary file");
  spell->callback([&] {
    mlime::AssetStore store(g.data());
    const auto a = store.get(spell_lang);
    const auto dict = spell_personal.empty() ? mlime::PersonalDict()
                                             : mlime::PersonalDict::load(spell_personal);
    for (const auto& w : spell_words) {
      const auto r = mlime::spell_check(w, a->wordlist, &dict, &a->profile);
      std::cout << w << "\t" << (r.flagged ? "flagged" : "ok");
      for (const auto& s : r.suggestions) std::cout << "\t" << s;
      std::cout << "\n";
    }
  });

  // ---- mix ----------------------------------------------------------------
  std::vector<std::string> mix_langs;
  std::vector<double> mix_weights;
  std::string mix_context;
  std::vector<std::string> mix_commit;
  std::size_t mix_k = 5;
  auto* mixcmd = app.add_subcommand("mix", "mix same-script language models");
  std::vector<std::string> mix_models;
  mixcmd->add_option("--lang", mix_langs, "languages from the data directory");
  mixcmd->add_option("--models", mix_models, "model files carrying language_tag/script headers");
  mixcmd->add_option("--weights", mix_weights)->delimiter(',');
  mixcmd->add_option("--context", mix_context);
  mixcmd->add_option("--commit", mix_commit, "words committed before predicting");
  mixcmd->add_option("-k", mix_k);
  mixcmd->callback([&] {
    mlime::AssetStore store(g.data());
    std::vector<mlime::MixComponent> comps;
    std::optional<mlime::LanguageProfile> profile;
    std::vector<std::string> names;
    for (const auto& tag : mix_langs) {
      const auto a = store.get(tag);
      if (!profile) profile = a->profile;
      comps.push_back({a->model, tag, a->profile.primary_script()});
      names.push_back(tag);
    }
    for (const auto& path : mix_models) {
      auto m = std::make_shared<const mlime::NGramModel>(mlime::NGramModel::parse(read_input(path)));
      comps.push_back({m, m->language_tag(), m->script()});
      names.push_back(m->language_tag().empty() ? path : m->language_tag());
    }
    if (comps.empty()) mlime::fail("EmptyModelList", "models", "give --lang or --models");
    if (!profile) {
      profile = mlime::LanguageProfile{};
      profile->language_tag = names.front();
    }
    auto mixed = mlime::mix(comps, mix_weights.empty() ? std::nullopt
                                                       : std::optional(mix_weights));
    for (const auto& w : mix_commit) mixed = mlime::adapt_weights(mixed, w);
    for (std::size_t i = 0; i < names.size(); ++i) {
      std::cout << "weight\t" << names[i] << "\t" << std::setprecision(6) << mixed.weights()[i]
                << "\n";
    }
    print_suggestions(mlime::next_words(words_of(mix_context, *profile), mixed, *profile, mix_k));
  });

  // ---- personal -----------------------------------------------------------
  auto* personal = app.add_subcommand("personal", "manage personal dictionaries");
  personal->require_subcommand(1);
  std::string p_dir = "personal", p_user = "default", p_file;
  auto add_user = [&](CLI::App* c) {
    c->add_option("--dir", p_dir, "personal dictionary directory");
    c->add_option("--user", p_user);
  };
  auto* p_export = personal->add_subcommand("export", "print or save a dictionary");
  add_user(p_export);
  p_export->add_option("-o,--out", p_file);
  p_export->callback([&] {
    mlime::PersonalStore ps{std::filesystem::path(p_dir)};
    write_output(p_file, ps.load(p_user)->serialize());
  });
  auto* p_import = personal->add_subcommand("import", "replace a dictionary from a file");
  add_user(p_import);
  p_import->add_option("file", p_file)->required();
  p_import->callback([&] {
    mlime::PersonalStore ps{std::filesystem::path(p_dir)};
    auto d = std::make_shared<const mlime::PersonalDict>(mlime::PersonalDict::parse(read_input(p_file)));
    std::cout << "imported " << d->words().size() << " words\n";
    ps.save(p_user, std::move(d));
  });
  auto* p_clear = personal->add_subcommand("clear", "forget everything learned");
  add_user(p_clear);
  p_clear->callback([&] {
    mlime::PersonalStore ps{std::filesystem::path(p_dir)};
    ps.save(p_user, std::make_shared<const mlime::PersonalDict>());
    std::cout << "cleared " << p_user << "\n";
  });

  // ---- registry -----------------------------------------------------------
  auto* registry = app.add_subcommand("registry", "language roadmap");
  registry->require_subcommand(1);
  std::string reg_tag, reg_subtask;
  auto* score = registry->add_subcommand("score", "priority scores and buckets");
  score->add_option("tag", reg_tag);
  score->callback([&] {
    const auto reg = mlime::load_registry(g.data() / "registry");
    std::vector<std::pair<mlime::Priority, std::string>> rows;
    for (const auto& r : reg.records) {
      if (!reg_tag.empty() && r.language_tag != reg_tag) continue;
      rows.push_back({mlime::priority_score(r), r.language_tag});
    }
    if (!reg_tag.empty() && rows.empty()) mlime::fail("UnknownLanguage", reg_tag);
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      if (a.first.bucket != b.first.bucket) return a.first.bucket < b.first.bucket;
      if (a.first.score != b.first.score) return a.first.score > b.first.score;
      return a.second < b.second;
    });
    for (const auto& [p, tag] : rows) {
      std::cout << tag << "\t" << std::fixed << std::setprecision(3) << p.score << "\tbucket "
                << p.bucket << "\n";
    }
  });
  auto* dashboard = registry->add_subcommand("dashboard", "status dashboard from source files");
  dashboard->add_option("--subtask", reg_subtask);
  dashboard->callback([&] {
    const auto reg = mlime::load_registry(g.data() / "registry");
    const auto report = mlime::dashboard_report(
        reg.records, reg.statuses,
        reg_subtask.empty() ? std::nullopt : std::optional<std::string>(reg_subtask));
    std::cout << report.to_text();
  });

  // ---- serve --------------------------------------------------------------
  int port = -1;
  std::string personal_dir;
  std::vector<std::string> preload;
  auto* serve = app.add_subcommand("serve", "run the session service (stdio, or TCP with --port)");
  serve->add_option("--port", port, "listen on 127.0.0.1:PORT (0 = any free port)");
  serve->add_option("--personal-dir", personal_dir, "persist personal dictionaries here");
  serve->add_option("--preload", preload, "languages to load at startup");
  serve->callback([&] {
    mlime::ServiceConfig cfg;
    cfg.data_dir = g.data();
    cfg.preload = preload;
    if (!personal_dir.empty()) cfg.personal_dir = personal_dir;
    mlime::Service service(cfg);
    if (port < 0) {
      mlime::serve_stream(service, std::cin, std::cout);
    } else {
      mlime::serve_tcp(service, port, [](int p) {
        std::cerr << "listening on 127.0.0.1:" << p << std::endl;
      });
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const mlime::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return status;
}
