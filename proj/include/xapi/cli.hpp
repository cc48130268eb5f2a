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

#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "xapi/default_lexicon.hpp"
#include "xapi/executor.hpp"
#include "xapi/export.hpp"
#include "xapi/parser.hpp"

namespace xapi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitMismatch = 3;

inline constexpr const char* kLexiconEnv = "XAPI_LEXICON";

struct RunConfig {
  std::vector<std::string> lexicon_paths;
  bool default_lexicon = true;
  std::vector<std::string> story_paths;
  bool lenient = false;
  std::optional<std::string> summary_path;  // "-" is standard output
  std::optional<std::string> json_path;
  std::optional<std::string> dot_path;
  bool trace = false;
  std::size_t focus_window = 10;
  std::string corpus_dir;
  bool bless = false;  // corpus: rewrite fixtures instead of comparing
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::io, path + ": cannot write file");
  file << text;
  if (!file) throw Error(ErrorCode::io, path + ": write failed");
}

/// Default lexicon, then $XAPI_LEXICON, then each --lexicon in order.
inline Lexicon build_lexicon(const RunConfig& config) {
  Lexicon lexicon = config.default_lexicon ? default_lexicon() : Lexicon{};
  std::vector<std::string> paths;
  if (const char* env = std::getenv(kLexiconEnv); env && *env) paths.emplace_back(env);
  paths.insert(paths.end(), config.lexicon_paths.begin(), config.lexicon_paths.end());
  for (const auto& path : paths) {
    std::string text = read_file(path);
    try {
      lexicon.load(text);
    } catch (const Error& e) {
      throw Error(e.code(), path + ":" + e.what());
    }
  }
  return lexicon;
}

namespace detail {

inline std::string describe_instance(const StoryState& state, InstanceId id) {
  const Instance& inst = state.instance(id);
  std::string out = "i" + std::to_string(id.value);
  for (const auto& a : inst.attributes) out += " " + a;
  if (inst.proper_name) out += " \"" + *inst.proper_name + "\"";
  if (inst.is_group()) {
    out += " {";
    for (std::size_t k = 0; k < inst.group_members.size(); ++k)
      out += (k ? " i" : "i") + std::to_string(inst.group_members[k].value);
    out += "}";
  }
  return out;
}

inline std::string describe_vi(const StoryState& state, VerbInstanceId id) {
  const VerbInstance& vi = state.vi(id);
  std::string out = "v" + std::to_string(id.value) + " i" + std::to_string(vi.subject.value) + " " + vi.verb;
  if (vi.object) out += " i" + std::to_string(vi.object->value);
  if (vi.text) out += " text \"" + *vi.text + "\"";
  for (const auto& a : vi.adjectives) out += " " + a;
  if (vi.quoted) out += " // v" + std::to_string(vi.quoted->value);
  for (const auto& l : vi.labels) out += " #" + l;
  return out;
}

inline std::string scene_name(const StoryState& state, SceneId id) {
  const auto& label = state.scene(id).label;
  return label ? "#" + *label : "s" + std::to_string(id.value);
}

inline std::string describe_record(const SentenceRecord& r) {
  std::ostringstream out;
  out << "[" << r.index + 1 << "] " << r.pos.line << ":" << r.pos.column << " " << r.text;
  if (r.error) {
    out << " => error: " << *r.error;
    return out.str();
  }
  out << " =>";
  for (auto id : r.created_scenes) out << " +s" << id.value;
  for (auto id : r.created_instances) out << " +i" << id.value;
  for (auto id : r.created_vis) out << " +v" << id.value;
  for (const auto& e : r.created_identity_edges) out << " +i" << e.a.value << "=i" << e.b.value;
  for (const auto& l : r.created_links) out << " +" << to_string(l.kind) << ":v" << l.from.value << "->v" << l.to.value;
  for (const auto& ref : r.resolved) out << " {" << ref.text << "=i" << ref.id.value << "}";
  return out.str();
}

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace detail

/// Executes `text` in a fresh state; used by the corpus runner and tests.
inline StoryState run_story_text(std::string_view text, const Lexicon& lexicon, ExecutorOptions options = {}) {
  StoryState state;
  execute_story(parse_story(text, lexicon), state, lexicon, options);
  return state;
}

/// Executes every story against one state, then writes the requested outputs.
inline int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.story_paths.empty()) {
    err << "run: at least one story file is required\n";
    return kExitUsage;
  }
  if (config.focus_window < 1) {
    err << "run: --focus-window must be at least 1\n";
    return kExitUsage;
  }
  try {
    Lexicon lexicon = build_lexicon(config);
    StoryState state;
    Executor executor(lexicon, state, {config.focus_window, config.lenient});
    int status = kExitOk;
    for (const auto& path : config.story_paths) {
      std::string text = read_file(path);
      StoryParser parser(lexicon);
      std::vector<ParsedSentence> sentences;
      try {
        if (config.lenient) {
          ParsedStory story = parser.parse_recovering(text);
          for (const auto& e : story.errors) err << path << ":" << e.what() << "\n";
          sentences = std::move(story.sentences);
        } else {
          sentences = parser.parse(text);
        }
        ExecutionTrace trace = executor.execute_story(sentences);
        for (const auto& r : trace.records) {
          if (config.trace) err << path << " " << detail::describe_record(r) << "\n";
          else if (r.error) err << path << ":" << *r.error << "\n";
        }
      } catch (const Error& e) {
        err << path << ":" << e.what() << "\n";
        status = kExitFailure;
        break;
      }
    }
    if (status != kExitOk) return status;
    if (config.summary_path) write_output(*config.summary_path, summarize(state).to_text(), out);
    if (config.json_path) write_output(*config.json_path, to_json(state), out);
    if (config.dot_path) write_output(*config.dot_path, to_dot(state), out);
    return kExitOk;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitFailure;
  }
}

/// Line-oriented session. A sentence may span lines; it executes once its
/// period (or, for a macro, a line not ending in a comma) arrives.
inline int cmd_repl(const RunConfig& config, std::istream& in, std::ostream& out) {
  Lexicon lexicon;
  try {
    lexicon = build_lexicon(config);
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  StoryState state;
  Executor executor(lexicon, state, {std::max<std::size_t>(config.focus_window, 1), true});
  StoryParser parser(lexicon);
  std::string buffer;

  auto meta = [&](const std::string& line) -> bool {
    std::istringstream words(line);
    std::string command, arg;
    words >> command >> arg;
    if (command == ":quit" || command == ":q") return false;
    if (command == ":focus") {
      for (const auto& f : focus_snapshot(state)) {
        out << detail::scene_name(state, f.scene) << (state.scene(f.scene).is_current ? " (current)" : "") << "\n";
        for (auto id : f.instances) out << "  " << detail::describe_instance(state, id) << "\n";
        for (auto id : f.vis) out << "  " << detail::describe_vi(state, id) << "\n";
        std::set<VerbInstanceId> seen;
        for (auto id : f.vis) {
          if (seen.count(id)) continue;
          auto group = coincidence_group(state, id);
          seen.insert(group.begin(), group.end());
          if (group.size() < 2) continue;
          out << "  coincidence:";
          for (auto g : group) out << " v" << g.value;
          out << "\n";
        }
      }
    } else if (command == ":scenes") {
      for (const auto& s : state.scenes()) {
        out << detail::scene_name(state, s.id) << (s.is_current ? " (current)" : "") << " instances=" << s.members.size()
            << "\n";
        for (const auto& r : s.relations) out << "  " << r.relation << " " << detail::scene_name(state, r.target) << "\n";
      }
    } else if (command == ":instances") {
      for (const auto& inst : state.instances())
        out << detail::describe_instance(state, inst.id) << " " << detail::scene_name(state, inst.scene)
            << (inst.in_focus ? "" : " (out of focus)") << "\n";
    } else if (command == ":chains") {
      for (const auto& chain : summarize(state).identity_chains) {
        for (std::size_t k = 0; k < chain.size(); ++k) out << (k ? " = " : "") << detail::describe_instance(state, chain[k]);
        out << "\n";
      }
    } else if (command == ":dot") {
      if (arg.empty()) {
        out << "error: usage: :dot <path>\n";
      } else {
        try {
          write_output(arg, to_dot(state), out);
        } catch (const Error& e) {
          out << "error: " << e.what() << "\n";
        }
      }
    } else if (command == ":help") {
      out << ":focus :scenes :instances :chains :dot <path> :quit\n";
    } else {
      out << "error: unknown command " << command << "\n";
    }
    return true;
  };

  for (std::string line; std::getline(in, line);) {
    if (buffer.empty()) {
      auto first = line.find_first_not_of(" \t");
      if (first != std::string::npos && line[first] == ':') {
        if (!meta(line.substr(first))) return kExitOk;
        continue;
      }
    }
    buffer += line;
    buffer += '\n';
    std::vector<Token> tokens;
    try {
      tokens = tokenize(buffer);
    } catch (const Error& e) {
      out << "error: " << e.what() << "\n";
      buffer.clear();
      continue;
    }
    if (tokens.empty()) {
      buffer.clear();
      continue;
    }
    bool macro = tokens.front().kind == TokenKind::macro_head && tokens.front().text != "$..";
    bool complete = macro ? tokens.back().kind != TokenKind::comma : tokens.back().kind == TokenKind::period;
    if (!complete) continue;
    try {
      for (const auto& sentence : parser.parse(buffer)) {
        SentenceRecord record = executor.execute(sentence);
        out << "ok:";
        for (auto id : record.created_scenes) out << " +s" << id.value;
        for (auto id : record.created_instances) out << " +i" << id.value;
        for (auto id : record.created_vis) out << " +v" << id.value;
        out << "\n";
      }
    } catch (const Error& e) {
      out << "error: " << e.what() << "\n";
    }
    buffer.clear();
  }
  return kExitOk;
}

/// Runs every `<name>.xapi` in the directory against `<name>.summary`.
inline int cmd_corpus(const RunConfig& config, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (config.corpus_dir.empty() || !fs::is_directory(config.corpus_dir, ec)) {
    err << "corpus: not a directory: " << config.corpus_dir << "\n";
    return kExitUsage;
  }
  Lexicon lexicon;
  try {
    lexicon = build_lexicon(config);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitFailure;
  }
  std::vector<fs::path> stories;
  for (const auto& entry : fs::directory_iterator(config.corpus_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".xapi") stories.push_back(entry.path());
  std::sort(stories.begin(), stories.end());

  std::size_t failed = 0;
  for (const auto& story : stories) {
    const std::string name = story.stem().string();
    fs::path fixture = story;
    fixture.replace_extension(".summary");
    std::string actual;
    try {
      actual = summarize(run_story_text(read_file(story.string()), lexicon,
                                        {std::max<std::size_t>(config.focus_window, 1), false}))
                   .to_text();
    } catch (const Error& e) {
      out << "FAIL " << name << ": " << e.what() << "\n";
      ++failed;
      continue;
    }
    if (config.bless) {
      write_output(fixture.string(), actual, out);
      out << "BLESS " << name << "\n";
      continue;
    }
    if (!fs::exists(fixture)) {
      out << "FAIL " << name << ": missing fixture " << fixture.filename().string() << "\n";
      ++failed;
      continue;
    }
    std::string expected = read_file(fixture.string());
    if (expected == actual) {
      out << "PASS " << name << "\n";
      continue;
    }
    ++failed;
    out << "FAIL " << name << "\n";
    auto want = detail::split_lines(expected), got = detail::split_lines(actual);
    for (std::size_t k = 0; k < std::max(want.size(), got.size()); ++k) {
      std::string a = k < want.size() ? want[k] : "<eof>", b = k < got.size() ? got[k] : "<eof>";
      if (a != b) out << "  line " << k + 1 << "\n    expected: " << a << "\n    actual:   " << b << "\n";
    }
  }
  out << stories.size() << " stories, " << stories.size() - failed << " passed, " << failed << " failed\n";
  return failed ? kExitMismatch : kExitOk;
}

}  // namespace xapi::cli
