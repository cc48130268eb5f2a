// Copyright 2026 The Xapi Authors. All Rights Reserved.
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

// xapi: run Xapi stories, inspect the resulting state, check the corpus.
//
//   xapi run story.xapi [--summary -] [--json out.json] [--dot out.dot]
//   xapi repl
//   xapi corpus corpus/ [--bless]

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xapi/cli.hpp"

namespace {

void add_common_options(CLI::App& app, xapi::cli::RunConfig& config) {
  app.add_option("--lexicon", config.lexicon_paths, "Additional lexicon file (repeatable)")->check(CLI::ExistingFile);
  app.add_flag("!--no-default-lexicon", config.default_lexicon, "Do not load the built-in lexicon");
  app.add_option("--focus-window", config.focus_window, "Action VIs kept in focus per scene")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  xapi::cli::RunConfig config;
  CLI::App app{"Parser and execution engine for the Xapi story language", "xapi"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "Execute story files against one state");
  run->add_option("stories", config.story_paths, "Story files, executed in order")->required();
  run->add_flag("--lenient", config.lenient, "Skip failing sentences instead of stopping");
  run->add_option("--summary", config.summary_path, "Write the structural summary ('-' for stdout)");
  run->add_option("--json", config.json_path, "Write the JSON state dump ('-' for stdout)");
  run->add_option("--dot", config.dot_path, "Write a Graphviz rendering ('-' for stdout)");
  run->add_flag("--trace", config.trace, "Report what each sentence created on stderr");
  add_common_options(*run, config);

  CLI::App* repl = app.add_subcommand("repl", "Interactive session on standard input");
  add_common_options(*repl, config);

  CLI::App* corpus = app.add_subcommand("corpus", "Check every story of a directory against its fixture");
  corpus->add_option("dir", config.corpus_dir, "Directory of .xapi stories and .summary fixtures")->required();
  corpus->add_flag("--bless", config.bless, "Rewrite the fixtures from the current output");
  add_common_options(*corpus, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? xapi::cli::kExitOk : xapi::cli::kExitUsage;
  }

  if (run->parsed()) return xapi::cli::cmd_run(config, std::cout, std::cerr);
  if (repl->parsed()) return xapi::cli::cmd_repl(config, std::cin, std::cout);
  return xapi::cli::cmd_corpus(config, std::cout, std::cerr);
}
