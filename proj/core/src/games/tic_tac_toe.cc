// Copyright 2026 The cwm-verify Authors.
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

#include "cwm/games/tic_tac_toe.h"

#include <charconv>
#include <stdexcept>
#include <string>

namespace cwm::games {
namespace {

const TicTacToeState& AsTtt(const ProgramState& state) {
  return dynamic_cast<const TicTacToeState&>(state);
}

std::string CellAction(int row, int col) {
  return std::to_string(row) + "," + std::to_string(col);
}

bool ParseCell(const std::string& action, int& row, int& col) {
  const auto comma = action.find(',');
  if (comma == std::string::npos) return false;
  const char* begin = action.data();
  const char* end = begin + action.size();
  auto r = std::from_chars(begin, begin + comma, row);
  if (r.ec != std::errc() || r.ptr != begin + comma) return false;
  auto c = std::from_chars(begin + comma + 1, end, col);
  return c.ec == std::errc() && c.ptr == end;
}

}  // namespace

void TicTacToeRules::Validate() const {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("board dimensions must be positive");
  }
  if (line_length < 1 || (line_length > rows && line_length > cols)) {
    throw std::invalid_argument("line_length must fit on the board");
  }
}

Value TicTacToeState::BoardValue() const {
  Value out = Value::array();
  for (int r = 0; r < rows; ++r) {
    Value row = Value::array();
    for (int c = 0; c < cols; ++c) {
      const int cell = board[r * cols + c];
      row.push_back(cell < 0 ? "." : (cell == 0 ? "x" : "o"));
    }
    out.push_back(std::move(row));
  }
  return out;
}

Value TicTacToeState::ToValue() const {
  return Value{{"board", BoardValue()},
               {"current_player", current_player},
               {"winner", winner >= 0 ? Value(winner) : Value(nullptr)},
               {"moves", moves}};
}

TicTacToeProgram::TicTacToeProgram(TicTacToeRules rules) : rules_(rules) {
  rules_.Validate();
}

ProgramManifest TicTacToeProgram::Manifest() const {
  ProgramManifest m = ProgramManifest::AllFunctions();
  m.functions.erase("resample_history");
  return m;
}

std::unique_ptr<ProgramState> TicTacToeProgram::InitialState() {
  auto s = std::make_unique<TicTacToeState>();
  s->rows = rules_.rows;
  s->cols = rules_.cols;
  s->board.assign(rules_.rows * rules_.cols, -1);
  return s;
}

bool TicTacToeProgram::Terminal(const TicTacToeState& s) const {
  return s.winner >= 0 || s.moves == rules_.rows * rules_.cols;
}

bool TicTacToeProgram::CompletesLine(const TicTacToeState& s, int row,
                                     int col) const {
  const int owner = s.board[row * rules_.cols + col];
  static constexpr int kDirections[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};
  for (const auto& d : kDirections) {
    int count = 1;
    for (int sign : {1, -1}) {
      int r = row + sign * d[0];
      int c = col + sign * d[1];
      while (r >= 0 && r < rules_.rows && c >= 0 && c < rules_.cols &&
             s.board[r * rules_.cols + c] == owner) {
        ++count;
        r += sign * d[0];
        c += sign * d[1];
      }
    }
    if (count >= rules_.line_length) return true;
  }
  return false;
}

std::unique_ptr<ProgramState> TicTacToeProgram::ApplyAction(
    ProgramState& state, const ActionId& action) {
  auto next = std::make_unique<TicTacToeState>(AsTtt(state));
  if (Terminal(*next)) throw std::invalid_argument("game is over");
  int row = 0;
  int col = 0;
  if (!ParseCell(action, row, col) || row < 0 || row >= rules_.rows ||
      col < 0 || col >= rules_.cols) {
    throw std::invalid_argument("malformed action '" + action + "'");
  }
  auto& cell = next->board[row * rules_.cols + col];
  if (cell >= 0) throw std::invalid_argument("cell " + action + " is taken");
  cell = static_cast<std::int8_t>(next->current_player);
  ++next->moves;
  if (CompletesLine(*next, row, col)) next->winner = next->current_player;
  next->current_player = 1 - next->current_player;
  return next;
}

Value TicTacToeProgram::CurrentPlayer(const ProgramState& state) {
  const auto& s = AsTtt(state);
  return Terminal(s) ? kTerminalPlayer : s.current_player;
}

Value TicTacToeProgram::LegalActions(const ProgramState& state) {
  const auto& s = AsTtt(state);
  Value out = Value::array();
  if (Terminal(s)) return out;
  for (int r = 0; r < rules_.rows; ++r) {
    for (int c = 0; c < rules_.cols; ++c) {
      if (s.board[r * rules_.cols + c] < 0) out.push_back(CellAction(r, c));
    }
  }
  return out;
}

Value TicTacToeProgram::Rewards(const ProgramState& state) {
  const auto& s = AsTtt(state);
  if (s.winner < 0) return Value{0.0, 0.0};
  return s.winner == 0 ? Value{1.0, -1.0} : Value{-1.0, 1.0};
}

Value TicTacToeProgram::Observations(const ProgramState& state) {
  const auto& s = AsTtt(state);
  Value obs{{"board", s.BoardValue()},
            {"current_player", Terminal(s) ? kTerminalPlayer : s.current_player}};
  return Value::array({obs, obs});
}

}  // namespace cwm::games
