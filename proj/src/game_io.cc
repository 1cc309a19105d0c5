// Copyright 2026 The switchgames Authors
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

#include "switchgames/game_io.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace switchgames {

namespace {

using nlohmann::json;

int LineOfByte(const std::string& text, size_t byte) {
  int line = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

json ParseDocument(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(err.what(), LineOfByte(text, err.byte));
  }
}

void RejectUnknownKeys(const json& doc,
                       const std::vector<std::string>& allowed) {
  if (!doc.is_object()) throw ParseError("top level must be a JSON object", 1);
  for (const auto& item : doc.items()) {
    bool known = false;
    for (const auto& key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) throw ParseError("unknown key \"" + item.key() + "\"", 1);
  }
}

Matrix ParseMatrix(const json& node, const std::string& key) {
  if (!node.is_array() || node.empty()) {
    throw ParseError("\"" + key + "\" must be a non-empty array of rows", 1);
  }
  std::vector<Vector> rows;
  for (const auto& row : node) {
    if (!row.is_array() || row.empty()) {
      throw ParseError("\"" + key + "\" rows must be non-empty arrays", 1);
    }
    Vector values;
    for (const auto& entry : row) {
      if (!entry.is_number()) {
        throw ParseError("\"" + key + "\" entries must be numbers", 1);
      }
      values.push_back(entry.get<double>());
    }
    if (!rows.empty() && values.size() != rows.front().size()) {
      throw ParseError("\"" + key + "\" rows have inconsistent lengths", 1);
    }
    rows.push_back(std::move(values));
  }
  return Matrix::FromRows(rows);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path, 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

GameFile ParseSwitchGame(const std::string& text) {
  const json doc = ParseDocument(text);
  RejectUnknownKeys(doc, {"A", "S", "c", "c_range", "name"});
  if (!doc.contains("A") || !doc.contains("S")) {
    throw ParseError("game file needs both \"A\" and \"S\"", 1);
  }

  GameFile out;
  out.game.a = ParseMatrix(doc["A"], "A");
  out.game.s = ParseMatrix(doc["S"], "S");
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("\"name\" must be a string", 1);
    out.game.name = doc["name"].get<std::string>();
  }
  if (doc.contains("c") && doc.contains("c_range")) {
    throw ParseError("give either \"c\" or \"c_range\", not both", 1);
  }
  if (doc.contains("c")) {
    if (!doc["c"].is_number()) throw ParseError("\"c\" must be a number", 1);
    out.c = doc["c"].get<double>();
  }
  if (doc.contains("c_range")) {
    const auto& range = doc["c_range"];
    if (!range.is_array() || range.size() != 2 || !range[0].is_number() ||
        !range[1].is_number()) {
      throw ParseError("\"c_range\" must be [lo, hi]", 1);
    }
    out.c_range = {range[0].get<double>(), range[1].get<double>()};
    if (out.c_range->first >= out.c_range->second) {
      throw ParseError("\"c_range\" needs lo < hi", 1);
    }
  }

  const auto violations = Validate(out.game);
  if (!violations.empty()) {
    throw ParseError("invalid game: " + violations.front().message, 1);
  }
  return out;
}

GameFile LoadSwitchGameFile(const std::string& path) {
  return ParseSwitchGame(ReadFile(path));
}

TensorFile ParseGeneralGame(const std::string& text) {
  const json doc = ParseDocument(text);
  RejectUnknownKeys(doc, {"r", "name"});
  if (!doc.contains("r")) throw ParseError("tensor file needs \"r\"", 1);
  const auto& r = doc["r"];
  if (!r.is_array() || r.empty()) {
    throw ParseError("\"r\" must be a [state][row][column] array", 1);
  }
  const int num_states = static_cast<int>(r.size());
  int num_rows = -1;
  std::vector<double> values;
  for (const auto& state_block : r) {
    if (!state_block.is_array() || state_block.empty()) {
      throw ParseError("\"r\" states must be arrays of rows", 1);
    }
    if (num_rows == -1) num_rows = static_cast<int>(state_block.size());
    if (static_cast<int>(state_block.size()) != num_rows) {
      throw ParseError("\"r\" states have inconsistent row counts", 1);
    }
    for (const auto& row : state_block) {
      if (!row.is_array() || static_cast<int>(row.size()) != num_states) {
        throw ParseError("\"r\" rows must have one entry per column/state", 1);
      }
      for (const auto& entry : row) {
        if (!entry.is_number()) {
          throw ParseError("\"r\" entries must be numbers", 1);
        }
        values.push_back(entry.get<double>());
      }
    }
  }

  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("\"name\" must be a string", 1);
    name = doc["name"].get<std::string>();
  }
  TensorFile out{GeneralGameG(num_states, num_rows, std::move(values), name)};
  return out;
}

TensorFile LoadGeneralGameFile(const std::string& path) {
  return ParseGeneralGame(ReadFile(path));
}

std::string WriteSwitchGame(const SwitchGame& game, std::optional<double> c) {
  json doc;
  for (int i = 0; i < game.a.rows(); ++i) doc["A"].push_back(game.a.row(i));
  for (int i = 0; i < game.s.rows(); ++i) doc["S"].push_back(game.s.row(i));
  if (c) doc["c"] = *c;
  if (!game.name.empty()) doc["name"] = game.name;
  return doc.dump(2);
}

}  // namespace switchgames
