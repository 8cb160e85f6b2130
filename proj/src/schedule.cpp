#include "gkpsim/schedule.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gkpsim {

void Schedule::validate(const BinaryMatrix& h) const {
  std::set<std::pair<int, int>> seen;
  for (std::size_t lvl = 0; lvl < levels.size(); ++lvl) {
    std::set<int> checks, qubits;
    for (const auto& [check, qubit] : levels[lvl]) {
      if (check < 0 || check >= h.rows() || qubit < 0 || qubit >= h.cols())
        throw std::invalid_argument("schedule: gate out of range at level " +
                                    std::to_string(lvl));
      if (!h.at(check, qubit))
        throw std::invalid_argument(
            "schedule: gate (" + std::to_string(check) + ", " +
            std::to_string(qubit) + ") not in the check matrix support");
      if (!checks.insert(check).second || !qubits.insert(qubit).second)
        throw std::invalid_argument("schedule: level " + std::to_string(lvl) +
                                    " reuses a check or qubit");
      if (!seen.insert({check, qubit}).second)
        throw std::invalid_argument("schedule: duplicate gate (" +
                                    std::to_string(check) + ", " +
                                    std::to_string(qubit) + ")");
    }
  }
  if (seen.size() != h.ones())
    throw std::invalid_argument(
        "schedule: covers " + std::to_string(seen.size()) + " of " +
        std::to_string(h.ones()) + " check-matrix entries");
}

Schedule greedy_schedule(const BinaryMatrix& h) {
  if (h.ones() == 0)
    throw std::invalid_argument("greedy_schedule: zero matrix");
  std::vector<std::vector<bool>> check_busy, qubit_busy;
  Schedule s;
  auto level_free = [&](std::size_t lvl, int check, int qubit) {
    return !check_busy[lvl][check] && !qubit_busy[lvl][qubit];
  };
  for (const auto& [check, qubit] : h.entries()) {
    std::size_t lvl = 0;
    while (lvl < s.levels.size() && !level_free(lvl, check, qubit)) ++lvl;
    if (lvl == s.levels.size()) {
      s.levels.emplace_back();
      check_busy.emplace_back(h.rows(), false);
      qubit_busy.emplace_back(h.cols(), false);
    }
    s.levels[lvl].emplace_back(check, qubit);
    check_busy[lvl][check] = true;
    qubit_busy[lvl][qubit] = true;
  }
  for (auto& level : s.levels) std::sort(level.begin(), level.end());
  return s;
}

Schedule serialized_schedule(const BinaryMatrix& h) {
  if (h.ones() == 0)
    throw std::invalid_argument("serialized_schedule: zero matrix");
  Schedule s;
  for (const auto& entry : h.entries()) s.levels.push_back({entry});
  return s;
}

Schedule edge_coloring_schedule(const BinaryMatrix& h) {
  if (h.ones() == 0)
    throw std::invalid_argument("edge_coloring_schedule: zero matrix");
  const int colors = std::max(h.max_row_weight(), h.max_col_weight());
  // color_at[vertex][color] = partner vertex or -1. Checks and qubits are
  // separate vertex sets, so the standard alternating-path argument applies.
  std::vector<std::vector<int>> check_at(h.rows(),
                                         std::vector<int>(colors, -1));
  std::vector<std::vector<int>> qubit_at(h.cols(),
                                         std::vector<int>(colors, -1));
  auto free_color = [&](const std::vector<int>& slots) {
    for (int c = 0; c < static_cast<int>(slots.size()); ++c)
      if (slots[c] < 0) return c;
    throw std::logic_error("edge_coloring_schedule: no free color");
  };

  for (const auto& [check, qubit] : h.entries()) {
    const int alpha = free_color(check_at[check]);
    if (qubit_at[qubit][alpha] >= 0) {
      const int beta = free_color(qubit_at[qubit]);
      // Swap alpha and beta along the maximal alternating path starting at
      // `qubit` with its alpha edge. The path alternates qubit/check sides
      // and reaches checks only through alpha edges, so it can never reach
      // `check` (alpha is free there); afterwards alpha is free at `qubit`.
      std::vector<std::tuple<int, int, int>> path;  // (check, qubit, color)
      bool at_qubit = true;
      int cur = qubit;
      int col = alpha;
      while (true) {
        const int partner = at_qubit ? qubit_at[cur][col] : check_at[cur][col];
        if (partner < 0) break;
        path.emplace_back(at_qubit ? partner : cur, at_qubit ? cur : partner,
                          col);
        cur = partner;
        at_qubit = !at_qubit;
        col = (col == alpha) ? beta : alpha;
      }
      for (const auto& [pc, pq, pcol] : path) {
        check_at[pc][pcol] = -1;
        qubit_at[pq][pcol] = -1;
      }
      for (const auto& [pc, pq, pcol] : path) {
        const int flipped = (pcol == alpha) ? beta : alpha;
        check_at[pc][flipped] = pq;
        qubit_at[pq][flipped] = pc;
      }
    }
    check_at[check][alpha] = qubit;
    qubit_at[qubit][alpha] = check;
  }

  Schedule s;
  s.levels.assign(colors, {});
  for (int check = 0; check < h.rows(); ++check)
    for (int c = 0; c < colors; ++c)
      if (check_at[check][c] >= 0)
        s.levels[c].emplace_back(check, check_at[check][c]);
  for (auto& level : s.levels) std::sort(level.begin(), level.end());
  s.validate(h);
  return s;
}

Schedule split_schedule(const Schedule& s, int ways) {
  if (ways < 1) throw std::invalid_argument("split_schedule: ways must be >= 1");
  Schedule out;
  for (const auto& level : s.levels) {
    std::vector<std::vector<std::pair<int, int>>> parts(ways);
    for (std::size_t i = 0; i < level.size(); ++i)
      parts[i % ways].push_back(level[i]);
    for (auto& part : parts)
      if (!part.empty()) out.levels.push_back(std::move(part));
  }
  return out;
}

Schedule load_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open schedule file: " + path);
  Schedule s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    std::istringstream ls(line);
    std::vector<std::pair<int, int>> level;
    std::string token;
    while (ls >> token) {
      const auto sep = token.find(':');
      if (sep == std::string::npos)
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": expected check:qubit, got '" + token + "'");
      try {
        level.emplace_back(std::stoi(token.substr(0, sep)),
                           std::stoi(token.substr(sep + 1)));
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": bad gate token '" + token + "'");
      }
    }
    if (!level.empty()) s.levels.push_back(std::move(level));
  }
  return s;
}

void save_schedule(const std::string& path, const Schedule& s) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write schedule file: " + path);
  for (const auto& level : s.levels) {
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (i) out << ' ';
      out << level[i].first << ':' << level[i].second;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace gkpsim
