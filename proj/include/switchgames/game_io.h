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
//
// File formats. A game file is a JSON document with keys "A" (m rows of n
// numbers), "S" (n rows of n numbers), optional "c" (number) or "c_range"
// ([lo, hi]), and optional "name". A tensor file holds "r" as a
// [state][row][column] array plus an optional "name". Unknown keys are
// rejected. Parse errors carry 1-based line numbers.

#ifndef SWITCHGAMES_GAME_IO_H_
#define SWITCHGAMES_GAME_IO_H_

#include <optional>
#include <string>
#include <utility>

#include "switchgames/core.h"
#include "switchgames/general_gamma.h"

namespace switchgames {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct GameFile {
  SwitchGame game;
  std::optional<double> c;
  std::optional<std::pair<double, double>> c_range;
};

GameFile ParseSwitchGame(const std::string& text);
GameFile LoadSwitchGameFile(const std::string& path);

struct TensorFile {
  GeneralGameG game{1, 1, {0.0}};
};

TensorFile ParseGeneralGame(const std::string& text);
TensorFile LoadGeneralGameFile(const std::string& path);

std::string WriteSwitchGame(const SwitchGame& game,
                            std::optional<double> c = std::nullopt);

}  // namespace switchgames

#endif  // SWITCHGAMES_GAME_IO_H_
