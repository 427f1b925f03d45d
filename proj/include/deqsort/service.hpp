#pragma once

// The DEK game service behind the HTTP API. Requests come in as (method,
// path, body text) and leave as (status, JSON), so the whole API can be
// exercised without a socket; tools/ binds it to an HTTP server.
//
// Locking: the game table has a shared mutex, each game its own mutex. No
// thread ever waits for the table while holding a game lock.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "deqsort/count.hpp"
#include "deqsort/dek.hpp"
#include "deqsort/permutation.hpp"
#include "deqsort/switchyard.hpp"

namespace deqsort {

using json = nlohmann::json;

// Uniform draw in [0, bound) by rejection, so seeded deals do not depend on
// the standard library's distribution implementation.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

// Fisher-Yates over 1..n driven by mt19937_64(seed).
inline Permutation seeded_deal(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
  return Permutation(std::move(v));
}

inline json count_json(const Count& c) {
  if (c.fits_u64()) return c.to_u64();
  return c.to_string();
}

inline json advice_json(const Advice& a) {
  return {{"substantive", a.substantive},
          {"winnable_left", count_json(a.winnable_left)},
          {"winnable_right", count_json(a.winnable_right)},
          {"recommended", to_string(a.recommended)},
          {"strategy", to_string(a.strategy)}};
}

struct HistoryEntry {
  int card = 0;
  End end = End::Left;
  bool automatic = false;  // the card went straight to the output
  json advice;             // what the reveal response showed
};

struct GameRecord {
  std::string id;
  Permutation deal;
  DekInfoState state;
  std::vector<HistoryEntry> history;
  json pending_advice;  // advice for the revealed, unplaced card
  bool finished = false;
  bool won = false;

  int dealt() const { return static_cast<int>(history.size()) + (state.revealed ? 1 : 0); }
};

// Rebuilds the state from the deal and the recorded placements.
inline DekInfoState replay(const GameRecord& g) {
  std::vector<End> ends;
  for (const auto& h : g.history) ends.push_back(h.end);
  return replay_deal(g.deal, ends, g.state.revealed.has_value());
}

inline json state_json(const GameRecord& g) {
  const DekInfoState& s = g.state;
  return {{"n", s.deck_size},
          {"output_next", s.output_next},
          {"output_height", s.output_next - 1},
          {"deque", s.deque},
          {"revealed", s.revealed ? json(*s.revealed) : json(nullptr)},
          {"deck_remaining", s.hidden_count()},
          {"unseen", s.hidden_values()},
          {"phase", g.finished ? "finished" : (s.revealed ? "place" : "reveal")},
          {"finished", g.finished},
          {"won", g.won}};
}

inline json history_json(const GameRecord& g) {
  json out = json::array();
  for (const auto& h : g.history)
    out.push_back({{"card", h.card},
                   {"end", h.automatic ? "auto" : std::string(to_string(h.end))},
                   {"advice", h.advice}});
  return out;
}

struct ServiceConfig {
  Count advice_budget = factorial(9);
  std::optional<std::filesystem::path> state_file;
  int max_deck = 52;
};

struct Response {
  int status = 200;
  json body;
};

class RequestError : public std::runtime_error {
 public:
  RequestError(int status, const std::string& what) : std::runtime_error(what), status(status) {}
  int status;
};

class GameService {
 public:
  explicit GameService(ServiceConfig config = {}) : config_(std::move(config)), ids_(std::random_device{}()) {
    if (config_.state_file && std::filesystem::exists(*config_.state_file)) load(*config_.state_file);
  }

  Response handle(std::string_view method, std::string_view path, std::string_view body) {
    try {
      return route(method, path, body);
    } catch (const RequestError& e) {
      return {e.status, {{"error", e.what()}}};
    } catch (const json::exception& e) {
      return {422, {{"error", std::string("malformed body: ") + e.what()}}};
    } catch (const std::invalid_argument& e) {
      return {422, {{"error", e.what()}}};
    } catch (const std::exception& e) {
      return {500, {{"error", e.what()}}};
    }
  }

  // Handlers, also callable directly.

  Response create_game(const json& req) {
    if (!req.is_object()) throw RequestError(422, "body must be an object");
    Permutation deal;
    if (req.contains("deal")) {
      deal = parse_deal(req.at("deal"));
      if (req.contains("n") && req.at("n").get<int>() != deal.size())
        throw RequestError(422, "n does not match the deal length");
    } else {
      if (!req.contains("n")) throw RequestError(422, "need n or deal");
      const int n = req.at("n").get<int>();
      if (n < 1 || n > config_.max_deck)
        throw RequestError(422, "n must be in 1.." + std::to_string(config_.max_deck));
      const std::uint64_t seed =
          req.contains("seed") ? req.at("seed").get<std::uint64_t>() : std::random_device{}();
      deal = seeded_deal(n, seed);
    }
    if (deal.size() < 1 || deal.size() > config_.max_deck)
      throw RequestError(422, "deal length must be in 1.." + std::to_string(config_.max_deck));

    auto slot = std::make_shared<Slot>();
    slot->game.deal = deal;
    slot->game.state = DekInfoState::initial(deal.size());
    json out;
    {
      std::unique_lock lock(table_mutex_);
      std::string id;
      do {
        id = new_id();
      } while (games_.count(id));
      slot->game.id = id;
      games_.emplace(id, slot);
      out = {{"id", id}, {"state", state_json(slot->game)}};
    }
    persist();
    return {201, out};
  }

  Response get_game(const std::string& id) {
    auto slot = find(id);
    std::lock_guard lock(slot->mutex);
    const GameRecord& g = slot->game;
    return {200,
            {{"id", g.id}, {"state", state_json(g)}, {"history", history_json(g)}, {"advice", g.pending_advice}}};
  }

  Response reveal_card(const std::string& id) {
    auto slot = find(id);
    json out;
    {
      std::lock_guard lock(slot->mutex);
      GameRecord& g = slot->game;
      if (g.finished) throw RequestError(409, "game is finished");
      if (g.state.revealed) throw RequestError(409, "a revealed card is waiting to be placed");
      const int card = g.deal[static_cast<std::size_t>(g.dealt())];
      g.state = reveal(g.state, card);
      out = {{"revealed", card}};
      if (card == g.state.output_next) {
        const int before = g.state.output_next;
        g.state = place(g.state, End::Left);
        g.history.push_back({card, End::Left, true, json(nullptr)});
        out["auto_played"] = true;
        out["substantive"] = false;
        out["popped"] = popped_range(before, g.state.output_next);
        finish_check(g);
      } else {
        out["auto_played"] = false;
        out["substantive"] = substantive_by_conditions(g.state);
        DekAnalyzer analyzer(config_.advice_budget);
        if (analyzer.within_budget(g.state)) {
          out["substantive_oracle"] = analyzer.substantive_oracle(g.state);
          out["advice"] = {{"S1", advice_json(analyzer.strategy1_advise(g.state))},
                           {"S2", advice_json(analyzer.strategy2_advise(g.state))}};
        } else {
          out["substantive_oracle"] = nullptr;
          out["advice"] = "unavailable";
        }
        g.pending_advice = out["advice"];
      }
      out["state"] = state_json(g);
    }
    persist();
    return {200, out};
  }

  Response place_card(const std::string& id, const json& req) {
    if (!req.is_object() || !req.contains("end") || !req.at("end").is_string())
      throw RequestError(422, "body must be {\"end\": \"left\"|\"right\"}");
    const End end = parse_end(req.at("end").get<std::string>());
    auto slot = find(id);
    json out;
    {
      std::lock_guard lock(slot->mutex);
      GameRecord& g = slot->game;
      if (g.finished) throw RequestError(409, "game is finished");
      if (!g.state.revealed) throw RequestError(409, "reveal a card first");
      const int card = *g.state.revealed;
      const int before = g.state.output_next;
      g.state = place(g.state, end);
      g.history.push_back({card, end, false, g.pending_advice});
      g.pending_advice = nullptr;
      finish_check(g);
      out = {{"state", state_json(g)},
             {"popped", popped_range(before, g.state.output_next)},
             {"finished", g.finished},
             {"won", g.won}};
    }
    persist();
    return {200, out};
  }

  static Response analyze(const json& req) {
    if (!req.is_object()) throw RequestError(422, "body must be an object");
    DequeState s;
    s.deque = req.at("deque").get<std::vector<int>>();
    s.input_rest = req.at("input_rest").get<std::vector<int>>();
    s.output_next = req.value("output_next", 1);
    if (s.size() > 256) throw RequestError(422, "state too large to analyze");
    validate(s);
    return {200, {{"sortable", sortable_from_state(s)}}};
  }

  std::size_t game_count() const {
    std::shared_lock lock(table_mutex_);
    return games_.size();
  }

  // Copy of a game, for tests and replay checks.
  std::optional<GameRecord> snapshot(const std::string& id) const {
    std::shared_lock lock(table_mutex_);
    auto it = games_.find(id);
    if (it == games_.end()) return std::nullopt;
    std::lock_guard game_lock(it->second->mutex);
    return it->second->game;
  }

 private:
  struct Slot {
    std::mutex mutex;
    GameRecord game;
  };

  static std::vector<std::string_view> split_path(std::string_view path) {
    if (auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
    std::vector<std::string_view> parts;
    while (!path.empty()) {
      if (path.front() == '/') {
        path.remove_prefix(1);
        continue;
      }
      const auto slash = path.find('/');
      parts.push_back(path.substr(0, slash));
      if (slash == std::string_view::npos) break;
      path.remove_prefix(slash);
    }
    return parts;
  }

  static json parse_body(std::string_view body) {
    if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) return json::object();
    json j = json::parse(body.begin(), body.end(), nullptr, false);
    if (j.is_discarded()) throw RequestError(422, "body is not valid JSON");
    return j;
  }

  Response route(std::string_view method, std::string_view path, std::string_view body) {
    const auto parts = split_path(path);
    auto need = [&](std::string_view m) {
      if (method != m) throw RequestError(405, "method not allowed");
    };
    if (parts.size() < 2 || parts[0] != "api") throw RequestError(404, "no such endpoint");
    if (parts[1] == "analyze" && parts.size() == 2) {
      need("POST");
      return analyze(parse_body(body));
    }
    if (parts[1] != "games") throw RequestError(404, "no such endpoint");
    if (parts.size() == 2) {
      need("POST");
      return create_game(parse_body(body));
    }
    const std::string id(parts[2]);
    if (parts.size() == 3) {
      need("GET");
      return get_game(id);
    }
    if (parts.size() == 4 && parts[3] == "reveal") {
      need("POST");
      return reveal_card(id);
    }
    if (parts.size() == 4 && parts[3] == "place") {
      need("POST");
      return place_card(id, parse_body(body));
    }
    throw RequestError(404, "no such endpoint");
  }

  static Permutation parse_deal(const json& j) {
    if (j.is_string()) return parse_permutation(j.get<std::string>());
    return Permutation(j.get<std::vector<int>>());
  }

  static json popped_range(int from, int to) {
    json out = json::array();
    for (int v = from; v < to; ++v) out.push_back(v);
    return out;
  }

  static void finish_check(GameRecord& g) {
    if (g.state.won()) {
      g.finished = g.won = true;
    } else if (g.state.dead()) {
      g.finished = true;
    }
  }

  std::shared_ptr<Slot> find(const std::string& id) {
    std::shared_lock lock(table_mutex_);
    auto it = games_.find(id);
    if (it == games_.end()) throw RequestError(404, "unknown game " + id);
    return it->second;
  }

  std::string new_id() {
    static constexpr char hex[] = "0123456789abcdef";
    std::uint64_t x = ids_();
    std::string id;
    for (int i = 0; i < 16; ++i, x >>= 4) id.push_back(hex[x & 15]);
    return id;
  }

  // Snapshot of every game to the state file, written then renamed.
  void persist() {
    if (!config_.state_file) return;
    std::lock_guard persist_lock(persist_mutex_);
    json games = json::array();
    {
      std::shared_lock lock(table_mutex_);
      for (const auto& [id, slot] : games_) {
        std::lock_guard game_lock(slot->mutex);
        const GameRecord& g = slot->game;
        json hist = json::array();
        for (const auto& h : g.history)
          hist.push_back({{"card", h.card}, {"end", to_string(h.end)}, {"auto", h.automatic}, {"advice", h.advice}});
        games.push_back({{"id", g.id},
                         {"deal", std::vector<int>(g.deal.begin(), g.deal.end())},
                         {"revealed", g.state.revealed.has_value()},
                         {"pending_advice", g.pending_advice},
                         {"history", hist}});
      }
    }
    const auto tmp = config_.state_file->string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << json{{"games", games}}.dump() << '\n';
      if (!out) throw std::runtime_error("cannot write " + tmp);
    }
    std::filesystem::rename(tmp, *config_.state_file);
  }

  void load(const std::filesystem::path& path) {
    std::ifstream in(path);
    const json root = json::parse(in);
    for (const json& j : root.at("games")) {
      auto slot = std::make_shared<Slot>();
      GameRecord& g = slot->game;
      g.id = j.at("id").get<std::string>();
      g.deal = Permutation(j.at("deal").get<std::vector<int>>());
      for (const json& h : j.at("history"))
        g.history.push_back({h.at("card").get<int>(), parse_end(h.at("end").get<std::string>()),
                             h.at("auto").get<bool>(), h.at("advice")});
      g.pending_advice = j.value("pending_advice", json(nullptr));
      g.state = DekInfoState::initial(g.deal.size());
      g.state.revealed = j.at("revealed").get<bool>() ? std::optional<int>(0) : std::nullopt;
      g.state = replay(g);
      for (std::size_t i = 0; i < g.history.size(); ++i)
        if (g.history[i].card != g.deal[i]) throw std::runtime_error("state file history disagrees with deal");
      finish_check(g);
      games_.emplace(g.id, slot);
    }
  }

  ServiceConfig config_;
  mutable std::shared_mutex table_mutex_;
  std::mutex persist_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> games_;
  std::mt19937_64 ids_;
};

}  // namespace deqsort
