// deqsort: command-line front end and HTTP server.
//
// Exit status: 0 success / true, 1 false / mismatch, 2 usage error,
// 3 computation error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <httplib.h>

#include "deqsort/bfile.hpp"
#include "deqsort/dek.hpp"
#include "deqsort/permutation.hpp"
#include "deqsort/relativistic.hpp"
#include "deqsort/rt.hpp"
#include "deqsort/service.hpp"
#include "deqsort/switchyard.hpp"
#include "deqsort/tree_count.hpp"

#ifndef DEQSORT_DATA_DIR
#define DEQSORT_DATA_DIR "data"
#endif

using namespace deqsort;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

SortClass parse_class(const std::string& s) {
  if (s == "deque") return SortClass::Deque;
  if (s == "pstacks") return SortClass::ParallelStacks;
  if (s == "stack") return SortClass::SingleStack;
  throw UsageError("unknown class " + s);
}

int cmd_test(const std::string& cls, const std::string& variant, const std::string& perm) {
  const Permutation pi = parse_permutation(perm);
  bool ok = false;
  if (cls == "deque")
    ok = rt_deque_sortable(pi, variant == "original" ? DequeVariant::Original : DequeVariant::Corrected);
  else if (cls == "pstacks")
    ok = rt_pstack_sortable(pi);
  else
    ok = stack_sortable(pi);
  std::cout << (ok ? "true" : "false") << '\n';
  return ok ? 0 : 1;
}

int cmd_witness(const std::string& perm) {
  const Permutation pi = parse_permutation(perm);
  try {
    std::cout << extract_witness(pi).str() << '\n';
    return 0;
  } catch (const NotSortable&) {
    std::cout << "NOT SORTABLE\n";
    return 1;
  }
}

BFile compute(SortClass cls, const std::string& method, int max_n, bool stats) {
  BFile out;
  const auto t0 = std::chrono::steady_clock::now();
  std::string note;
  if (method == "dp") {
    if (max_n > kMaxRelativisticN) throw UsageError("dp supports n <= " + std::to_string(kMaxRelativisticN));
    RelativisticCounter counter;
    for (int n = 1; n <= max_n; ++n) out[n] = counter.count_sortable(cls, n);
    note = "memo keys " + std::to_string(counter.memo_size());
  } else if (method == "tree" || method == "oracle") {
    const CountTable t = method == "tree" ? count_by_tree(cls, max_n) : count_by_oracle(cls, max_n);
    for (int n = 1; n <= max_n; ++n) out[n] = t.at(n);
    note = "nodes tested " + std::to_string(t.visited);
  } else {
    throw UsageError("unknown method " + method);
  }
  if (stats) {
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << note << ", " << dt << " s\n";
  }
  return out;
}

int cmd_count(const std::string& cls, const std::string& method, int max_n, const std::string& out_path,
              bool stats) {
  const BFile table = compute(parse_class(cls), method, max_n, stats);
  if (out_path.empty()) {
    write_bfile(std::cout, table);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    write_bfile(out, table);
  }
  return 0;
}

int cmd_verify(const std::string& cls, int max_n, std::string fixture) {
  const SortClass c = parse_class(cls);
  if (c == SortClass::SingleStack) throw UsageError("no reference table for the single stack");
  if (fixture.empty())
    fixture = std::string(DEQSORT_DATA_DIR) + (c == SortClass::Deque ? "/deque_counts.b" : "/pstack_counts.b");
  const BFile expected = read_bfile(fixture);
  RelativisticCounter counter;
  int bad = 0, checked = 0;
  for (const auto& [n, want] : expected) {
    if (n > max_n) break;
    const Count got = counter.count_sortable(c, n);
    ++checked;
    if (got == want) {
      std::cout << n << ' ' << got << " ok\n";
    } else {
      ++bad;
      std::cout << n << ' ' << got << " MISMATCH expected " << want << '\n';
    }
  }
  std::cout << checked << " rows checked, " << bad << " mismatches\n";
  return bad ? 1 : 0;
}

int cmd_experiment(int max_n, bool gate) {
  if (max_n < 1 || max_n > 14) throw UsageError("--max-n must be in 1..14");
  const AgreementReport r = agreement_experiment(max_n);
  std::cout << "n states substantive disagreements\n";
  for (const auto& row : r.rows)
    std::cout << row.n << ' ' << row.states << ' ' << row.substantive << ' ' << row.disagreements << '\n';
  for (const auto& e : r.examples)
    std::cout << "disagreement at " << to_string(e.state) << " via " << to_string(e.trace) << ": S1 "
              << e.s1.winnable_left << '/' << e.s1.winnable_right << ", S2 " << e.s2.winnable_left << '/'
              << e.s2.winnable_right << '\n';
  bool clean = r.total_disagreements() == 0;
  if (gate) {
    std::cout << "gate: n states substantive mismatches\n";
    for (int n = 1; n <= max_n; ++n) {
      const GateReport g = condition_gate(n);
      std::cout << "gate: " << n << ' ' << g.states << ' ' << g.substantive << ' ' << g.mismatches << '\n';
      for (const auto& m : g.examples)
        std::cout << "  mismatch " << to_string(m.state) << " via " << to_string(m.trace)
                  << " conditions=" << m.by_conditions << " oracle=" << m.by_oracle << '\n';
      clean = clean && g.mismatches == 0;
    }
  }
  return clean ? 0 : 1;
}

int cmd_serve(const std::string& host, int port, const std::string& state_file, unsigned budget) {
  ServiceConfig cfg;
  cfg.advice_budget = factorial(budget);
  if (!state_file.empty()) cfg.state_file = state_file;
  GameService service(cfg);
  httplib::Server server;
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    Response r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get(R"(/api/.*)", forward);
  server.Post(R"(/api/.*)", forward);
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    res.status = 500;
    res.set_content(json{{"error", what}}.dump(), "application/json");
  });
  std::cerr << "listening on " << host << ':' << port << '\n';
  if (!server.listen(host, port)) throw std::runtime_error("cannot listen on port " + std::to_string(port));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deque and parallel-stack sorting toolkit"};
  app.require_subcommand(1);

  std::string cls = "deque", variant = "corrected", perm, method = "dp", out_path, fixture, state_file;
  std::string host = "127.0.0.1";
  int max_n = 10, port = 8080;
  unsigned budget = 9;
  bool stats = false, gate = false;

  auto* test = app.add_subcommand("test", "decide sortability with the linear-time test");
  test->add_option("--class", cls)->check(CLI::IsMember({"deque", "pstacks", "stack"}));
  test->add_option("--variant", variant)->check(CLI::IsMember({"original", "corrected"}));
  test->add_option("perm", perm, "permutation, e.g. \"2 5 4 1 6 3\"")->required();

  auto* witness = app.add_subcommand("witness", "print a sorting word over a/b (push) y/z (pop)");
  witness->add_option("perm", perm)->required();

  auto* count = app.add_subcommand("count", "count sortable permutations for n = 1..max-n");
  count->add_option("--class", cls)->check(CLI::IsMember({"deque", "pstacks", "stack"}));
  count->add_option("--method", method)->check(CLI::IsMember({"tree", "dp", "oracle"}));
  count->add_option("--max-n", max_n)->required()->check(CLI::Range(1, 40));
  count->add_option("--out", out_path, "b-file to write instead of stdout");
  count->add_flag("--stats", stats, "report work and time on stderr");

  auto* verify = app.add_subcommand("verify-appendix", "check the DP against the shipped tables");
  verify->add_option("--class", cls)->check(CLI::IsMember({"deque", "pstacks"}));
  verify->add_option("--max-n", max_n)->required()->check(CLI::Range(1, 40));
  verify->add_option("--fixture", fixture, "b-file to compare against");

  auto* dek = app.add_subcommand("dek", "DEK game tools");
  dek->require_subcommand(1);
  auto* experiment = dek->add_subcommand("experiment", "compare Strategy 1 and Strategy 2 on every reachable state");
  experiment->add_option("--max-n", max_n)->required();
  experiment->add_flag("--gate", gate, "also check the six-condition test against the oracle");

  auto* serve = app.add_subcommand("serve", "run the HTTP game service");
  serve->add_option("--host", host);
  serve->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve->add_option("--state-file", state_file, "snapshot games here and reload them on start");
  serve->add_option("--advice-budget", budget, "advise only while hidden cards <= this")->check(CLI::Range(0, 20));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*test) return cmd_test(cls, variant, perm);
    if (*witness) return cmd_witness(perm);
    if (*count) return cmd_count(cls, method, max_n, out_path, stats);
    if (*verify) return cmd_verify(cls, max_n, fixture);
    if (*experiment) return cmd_experiment(max_n, gate);
    if (*serve) return cmd_serve(host, port, state_file, budget);
  } catch (const std::invalid_argument& e) {
    // malformed permutations, unsupported class/method pairs
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
