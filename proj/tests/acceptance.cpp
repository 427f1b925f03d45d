// One PASS/FAIL line per criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "deqsort/bfile.hpp"
#include "deqsort/dek.hpp"
#include "deqsort/relativistic.hpp"
#include "deqsort/rt.hpp"
#include "deqsort/switchyard.hpp"
#include "deqsort/tree_count.hpp"

using namespace deqsort;
using Clock = std::chrono::steady_clock;

namespace {

// pinned limits
constexpr double kSixteenSeconds = 60.0;
constexpr int kExtendedDeque = 21;
constexpr int kExtendedPstacks = 22;
constexpr int kTripleMax = 12;
constexpr int kOracleMax = 9;
constexpr int kExhaustiveMax = 8;
constexpr int kWitnessMax = 7;
constexpr int kGateMax = 8;
constexpr int kAgreementMax = 7;
constexpr int kComplexityFrom = 10, kComplexityTo = 16;
constexpr double kComplexitySlack = 1.0;  // keys(n) <= slack * c * n^2 2^n, c fitted at n = 10

int failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(const std::string& name, const std::function<bool(std::ostream&)>& check) {
  std::ostringstream detail;
  const auto t0 = Clock::now();
  bool ok = false;
  try {
    ok = check(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
  }
  if (!ok) ++failures;
  std::printf("%s  %-28s %7.1fs  %s\n", ok ? "PASS" : "FAIL", name.c_str(), seconds_since(t0), detail.str().c_str());
  std::fflush(stdout);
}

std::string data_file(const char* name) {
  const char* env = std::getenv("DEQSORT_DATA_DIR");
  return (std::filesystem::path(env ? env : DEQSORT_DATA_DIR) / name).string();
}

bool reference_table(std::ostream& out, SortClass cls, const char* file, int extended) {
  const BFile want = read_bfile(data_file(file));
  RelativisticCounter counter;
  const auto t0 = Clock::now();
  for (int n = 1; n <= 16; ++n)
    if (counter.count_sortable(cls, n) != want.at(n)) {
      out << "n=" << n << " got " << counter.count_sortable(cls, n).to_string();
      return false;
    }
  const double t16 = seconds_since(t0);
  out << "n<=16 in " << t16 << "s";
  if (t16 > kSixteenSeconds) return false;
  for (int n = 17; n <= extended; ++n)
    if (counter.count_sortable(cls, n) != want.at(n)) {
      out << "; n=" << n << " got " << counter.count_sortable(cls, n).to_string();
      return false;
    }
  out << "; extended through n=" << extended << " (" << seconds_since(t0) << "s)";
  return true;
}

}  // namespace

int main() {
  report("deque-counts-table", [](std::ostream& out) {
    return reference_table(out, SortClass::Deque, "deque_counts.b", kExtendedDeque);
  });
  report("pstack-counts-table", [](std::ostream& out) {
    return reference_table(out, SortClass::ParallelStacks, "pstack_counts.b", kExtendedPstacks);
  });

  report("triple-agreement", [](std::ostream& out) {
    RelativisticCounter dp;
    for (SortClass cls : {SortClass::Deque, SortClass::ParallelStacks}) {
      const CountTable tree = count_by_tree(cls, kTripleMax);
      const CountTable oracle = count_by_oracle(cls, kOracleMax);
      for (int n = 1; n <= kTripleMax; ++n) {
        const Count d = dp.count_sortable(cls, n);
        if (tree.at(n) != d || (n <= kOracleMax && oracle.at(n) != d)) {
          out << to_string(cls) << " n=" << n << " dp=" << d.to_string() << " tree=" << tree.at(n).to_string();
          return false;
        }
      }
    }
    out << "dp = tree for n<=" << kTripleMax << ", = oracle for n<=" << kOracleMax << ", both classes";
    return true;
  });

  report("original-bug-regression", [](std::ostream& out) {
    const Permutation p = parse_permutation("2 5 4 1 6 3");
    const bool orig = rt_deque_sortable(p, DequeVariant::Original);
    const bool corr = rt_deque_sortable(p, DequeVariant::Corrected);
    const bool oracle = deque_sortable_bruteforce(p);
    out << "254163: original=" << orig << " corrected=" << corr << " oracle=" << oracle;
    if (orig || !corr || !oracle) return false;
    std::uint64_t only_corrected = 0;
    for (int n = 1; n <= kExhaustiveMax; ++n) {
      bool ok = true;
      for_each_permutation(n, [&](const Permutation& pi) {
        const bool o = rt_deque_sortable(pi, DequeVariant::Original);
        const bool c = rt_deque_sortable(pi, DequeVariant::Corrected);
        if (o && !c) ok = false;
        if (c && !o) ++only_corrected;
      });
      if (!ok) {
        out << "; original accepts something corrected rejects at n=" << n;
        return false;
      }
    }
    out << "; original subset of corrected for n<=" << kExhaustiveMax << " (" << only_corrected
        << " missed by original)";
    return true;
  });

  report("oracle-equivalence", [](std::ostream& out) {
    const auto deque_basis = basis_patterns(SortClass::Deque, kExhaustiveMax);
    const auto pstack_basis = basis_patterns(SortClass::ParallelStacks, kExhaustiveMax);
    std::uint64_t cases = 0;
    for (int n = 1; n <= kExhaustiveMax; ++n) {
      bool ok = true;
      for_each_permutation(n, [&](const Permutation& pi) {
        if (!ok) return;
        ++cases;
        const bool d = deque_sortable_bruteforce(pi);
        const bool p = pstack_sortable_bruteforce(pi);
        if (rt_deque_sortable(pi) != d || avoids_all(pi, deque_basis) != d || rt_pstack_sortable(pi) != p ||
            avoids_all(pi, pstack_basis) != p) {
          out << "disagreement on " << pi.to_string();
          ok = false;
        }
      });
      if (!ok) return false;
    }
    out << cases << " permutations, linear tests = brute force = basis avoidance";
    return true;
  });

  report("catalan-single-stack", [](std::ostream& out) {
    const std::uint64_t want[] = {1, 2, 5, 14, 42, 132, 429, 1430};
    const CountTable t = count_by_tree(SortClass::SingleStack, 8);
    for (int n = 1; n <= 8; ++n)
      if (t.at(n) != Count(want[n - 1])) {
        out << "n=" << n << " got " << t.at(n).to_string();
        return false;
      }
    out << "1 2 5 14 42 132 429 1430";
    return true;
  });

  report("witness-validity", [](std::ostream& out) {
    std::uint64_t checked = 0;
    for (int n = 1; n <= kWitnessMax; ++n) {
      bool ok = true;
      for_each_permutation(n, [&](const Permutation& pi) {
        if (!ok || !deque_sortable_bruteforce(pi)) return;
        const OpWord w = extract_witness(pi);
        if (!is_valid_run_word(w, n) || !replay_word(pi, w).sorted()) {
          out << "bad witness " << w.str() << " for " << pi.to_string();
          ok = false;
        }
        ++checked;
      });
      if (!ok) return false;
    }
    out << checked << " sortable permutations replayed to a full sort";
    return true;
  });

  report("substantive-pair-7526431", [](std::ostream& out) {
    const Permutation a = parse_permutation("7 5 2 6 4 3 1"), b = parse_permutation("7 5 2 4 1 6 3");
    if (!deque_sortable_bruteforce(a) || !deque_sortable_bruteforce(b)) {
      out << "a deal of the pair is unsortable";
      return false;
    }
    const std::vector<End> first_two{End::Left, End::Left};
    const DekInfoState sa = replay_deal(a, first_two, true), sb = replay_deal(b, first_two, true);
    if (!(sa == sb)) {
      out << "the deals differ before the third placement";
      return false;
    }
    DekAnalyzer analyzer;
    const bool oracle = analyzer.substantive_oracle(sa), cond = substantive_by_conditions(sa);
    const DekInfoState left = place(sa, End::Left), right = place(sa, End::Right);
    auto wins = [](const DekInfoState& s, std::vector<int> rest) {
      return sortable_from_state(DequeState{s.output_next, s.deque, std::move(rest)});
    };
    const std::vector<int> ra{6, 4, 3, 1}, rb{4, 1, 6, 3};
    const bool exclusive = wins(left, ra) && !wins(right, ra) && wins(right, rb) && !wins(left, rb);
    out << to_string(sa) << " oracle=" << oracle << " conditions=" << cond
        << " left-only 6431, right-only 4163: " << exclusive;
    return oracle && cond && exclusive;
  });

  report("six-condition-gate", [](std::ostream& out) {
    std::uint64_t states = 0, substantive = 0;
    bool ok = true;
    for (int n = 1; n <= kGateMax; ++n) {
      const GateReport g = condition_gate(n);
      states += g.states;
      substantive += g.substantive;
      for (const auto& m : g.examples)
        out << "\n      mismatch " << to_string(m.state) << " via " << to_string(m.trace)
            << " conditions=" << m.by_conditions << " oracle=" << m.by_oracle;
      if (g.mismatches) ok = false;
    }
    out << (ok ? "" : "\n      ") << states << " reachable states for n<=" << kGateMax << ", " << substantive
        << " substantive, predicate = oracle: " << ok;
    return ok;
  });

  report("strategy-agreement", [](std::ostream& out) {
    const AgreementReport r = agreement_experiment(kAgreementMax);
    std::uint64_t substantive = 0;
    for (const auto& row : r.rows) substantive += row.substantive;
    out << substantive << " substantive states for n<=" << kAgreementMax << ", " << r.total_disagreements()
        << " disagreements";
    return r.total_disagreements() == 0;
  });

  report("memo-growth", [](std::ostream& out) {
    bool ok = true;
    for (SortClass cls : {SortClass::Deque, SortClass::ParallelStacks}) {
      double c = 0;
      out << to_string(cls) << ":";
      for (int n = kComplexityFrom; n <= kComplexityTo; ++n) {
        RelativisticCounter counter;
        counter.count_sortable(cls, n);
        const double bound = static_cast<double>(n) * n * static_cast<double>(1ULL << n);
        const double keys = static_cast<double>(counter.memo_size());
        if (n == kComplexityFrom) c = keys / bound;
        if (keys > kComplexitySlack * c * bound) ok = false;
        out << ' ' << counter.memo_size();
      }
      out << " (c=" << c << ") ";
    }
    return ok;
  });

  std::printf("%d failure(s)\n", failures);
  return failures;
}
