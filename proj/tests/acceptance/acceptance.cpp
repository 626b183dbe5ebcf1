// One line per acceptance criterion; exit status 0 iff all pass.
// Usage: acceptance [path-to-surgery-binary]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "surgery/corpus.hpp"
#include "surgery/dehn.hpp"
#include "surgery/diagram.hpp"
#include "surgery/fixtures.hpp"
#include "surgery/morse.hpp"
#include "surgery/surgery1d2d.hpp"

using namespace surgery;
namespace fs = std::filesystem;

namespace {

constexpr double kPoincareSeconds = 10.0;
constexpr double kLensSeconds = 1.0;
constexpr double kCrossOracleSeconds = 60.0;
constexpr std::size_t kPoincareBound = 100000;
constexpr std::size_t kBlowUpBound = 100000;
constexpr int kCrossOracleCases = 200;
constexpr int kBlowUpCases = 100;
constexpr int kSurfaceSequences = 1000;
constexpr int kMaxCrossings = 8;

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", s);
  return buf;
}

LinkDiagram fx(const char* n) { return *fixtures::by_name(n); }

FramedLink random_framed(std::mt19937_64& rng) {
  auto d = fixtures::random_braid_link(rng, 4, kMaxCrossings);
  std::vector<int> f;
  for (std::size_t c = 0; c < d.component_count(); ++c) f.push_back(static_cast<int>(rng() % 11) - 5);
  return FramedLink(d, f);
}

// State sum by explicit recursion over smoothings, loops traced by DFS.
LaurentPoly oracle_bracket(const LinkDiagram& d) {
  const auto& xs = d.crossings();
  LaurentPoly delta = LaurentPoly::monomial(2, -1) + LaurentPoly::monomial(-2, -1);
  std::vector<std::pair<int, int>> arcs;
  std::function<LaurentPoly(std::size_t, int)> rec = [&](std::size_t c, int power) {
    if (c == xs.size()) {
      std::map<int, std::vector<int>> adj;
      for (auto [u, v] : arcs) {
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
      std::set<int> seen;
      int loops = d.free_loops();
      for (const auto& [s, _] : adj) {
        if (seen.count(s)) continue;
        ++loops;
        std::vector<int> st{s};
        while (!st.empty()) {
          int v = st.back();
          st.pop_back();
          if (!seen.insert(v).second) continue;
          for (int w : adj[v]) st.push_back(w);
        }
      }
      LaurentPoly t = LaurentPoly::monomial(power);
      for (int k = 1; k < loops; ++k) t = t * delta;
      return t;
    }
    const auto& x = xs[c];
    arcs.push_back({x[0], x[1]});
    arcs.push_back({x[2], x[3]});
    LaurentPoly a = rec(c + 1, power + 1);
    arcs.resize(arcs.size() - 2);
    arcs.push_back({x[0], x[3]});
    arcs.push_back({x[1], x[2]});
    LaurentPoly b = rec(c + 1, power - 1);
    arcs.resize(arcs.size() - 2);
    return a + b;
  };
  return rec(0, 0);
}

EnumerationResult enumerate(const FramedLink& fl, std::size_t bound) {
  return todd_coxeter(tietze_simplify(surgery_group(fl)), bound);
}

void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  struct Case {
    const char* knot;
    int framing;
    EnumerationResult r;
    bool trivial_h1;
  };
  std::vector<Case> cases;
  for (const char* k : {"trefoil", "left_trefoil"})
    for (int f : {1, -1}) {
      FramedLink fl(fx(k), {f});
      cases.push_back({k, f, enumerate(fl, kPoincareBound), h1_of_surgery(fl).trivial()});
    }
  double secs = seconds_since(t0);
  std::vector<const Case*> finite;
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    ok &= c.trivial_h1;
    if (c.r.finite()) {
      finite.push_back(&c);
      ok &= c.r.order == 120;
    } else {
      ok &= c.r.cosets_used == kPoincareBound;
    }
    detail += std::string(c.knot) + (c.framing > 0 ? "(+1)=" : "(-1)=") +
              (c.r.finite() ? std::to_string(c.r.order) : "exceeded") + " ";
  }
  ok &= finite.size() == 2;
  if (finite.size() == 2)
    ok &= std::string(finite[0]->knot) != finite[1]->knot && finite[0]->framing == -finite[1]->framing;
  ok &= secs < kPoincareSeconds;
  report(1, ok, detail + "H1 trivial for all, " + fmt_seconds(secs) + " (limit 10s)");
}

void criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (int p = 0; p <= 12; ++p) {
    FramedLink fl(parse_pd("O"), {p});
    auto h = h1_of_surgery(fl);
    if (p == 0) {
      ok &= h.free_rank == 1 && h.torsion.empty();
      continue;
    }
    auto r = enumerate(fl, kPoincareBound);
    ok &= r.finite() && r.order == static_cast<std::size_t>(p);
    ok &= h.free_rank == 0;
    ok &= p == 1 ? h.torsion.empty() : (h.torsion.size() == 1 && h.torsion[0] == p);
  }
  double secs = seconds_since(t0);
  ok &= secs < kLensSeconds;
  report(2, ok, "unknot p=1..12 order p and H1=Z/p, p=0 H1=Z, " + fmt_seconds(secs) + " (limit 1s)");
}

void criterion3() {
  FramedLink h(fx("hopf"), {0, 0});
  auto r = enumerate(h, kPoincareBound);
  auto m = linking_matrix(h);
  auto snf = smith_normal_form(m);
  BigInt prod = 1;
  for (std::size_t i = 0; i < 2; ++i) prod *= snf.D(i, i);
  BigInt det = determinant(m);
  bool ok = r.finite() && r.order == 1 && h1_of_surgery(h).trivial() && det == -1 && prod == 1 &&
            determinant(snf.U) * determinant(snf.V) * prod == det;
  report(3, ok, "order " + (r.finite() ? std::to_string(r.order) : std::string("exceeded")) +
                    ", det " + det.str() + ", SNF diag product " + prod.str());
}

void criterion4() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240401);
  int mismatches = 0;
  for (int i = 0; i < kCrossOracleCases; ++i) {
    auto fl = random_framed(rng);
    if (abelianization(surgery_group(fl)) != h1_of_surgery(fl)) ++mismatches;
  }
  double secs = seconds_since(t0);
  report(4, mismatches == 0 && secs < kCrossOracleSeconds,
         std::to_string(kCrossOracleCases) + " links, " + std::to_string(mismatches) + " mismatches, " +
             fmt_seconds(secs) + " (limit 60s)");
}

void criterion5() {
  std::mt19937_64 rng(5150);
  int bad = 0, finite = 0;
  for (int i = 0; i < kBlowUpCases; ++i) {
    auto fl = random_framed(rng);
    int s = rng() % 2 ? 1 : -1;
    auto b = blow_up(fl, s);
    if (h1_of_surgery(b) != h1_of_surgery(fl)) ++bad;
    auto r0 = enumerate(fl, kBlowUpBound);
    if (r0.finite()) {
      ++finite;
      auto r1 = enumerate(b, kBlowUpBound);
      if (!r1.finite() || r1.order != r0.order) ++bad;
    }
  }
  report(5, bad == 0,
         std::to_string(kBlowUpCases) + " cases, " + std::to_string(finite) + " finite, " +
             std::to_string(bad) + " changed");
}

void criterion6() {
  auto dna = fx("dna");
  auto hopf = fx("hopf");
  auto coherent = one_dim_zero_surgery(
      dna, {ArcRef::edge(fixtures::kDnaSiteA), ArcRef::edge(fixtures::kDnaSiteB), Reconnection::Coherent});
  auto crossed = one_dim_zero_surgery(
      dna, {ArcRef::edge(fixtures::kDnaSiteA), ArcRef::edge(fixtures::kDnaSiteB), Reconnection::Crossed});
  bool a = component_count(coherent) == 2 && std::abs(linking_number(coherent, 0, 1)) == 1 &&
           kauffman_bracket(coherent) == kauffman_bracket(hopf) &&
           oracle_bracket(coherent) == oracle_bracket(hopf) &&
           kauffman_bracket(coherent) == oracle_bracket(hopf);
  bool unlinked = component_count(crossed) == 2 && linking_number(crossed, 0, 1) == 0;
  bool different = oracle_bracket(crossed) != oracle_bracket(hopf);
  report(6, a && (unlinked || different),
         "coherent: 2 components, lk " + std::to_string(linking_number(coherent, 0, 1)) + ", bracket " +
             kauffman_bracket(coherent).to_string() + "; crossed: " +
             std::to_string(component_count(crossed)) + " component(s), bracket " +
             kauffman_bracket(crossed).to_string());
}

void criterion7() {
  bool ok = true;
  const std::vector<std::size_t> want21{2, 2, 1, 2, 2}, want32{1, 1, 1, 2, 2};
  for (int res : {16, 32, 64}) {
    for (auto [form, want] : {std::pair{MorseForm{2, 1, 1.0}, want21}, std::pair{MorseForm{3, 2, 1.0}, want32}}) {
      auto slices = handle_slices(form, 5, res);
      std::vector<std::size_t> got;
      for (const auto& m : slices) got.push_back(m.component_count);
      ok &= got == want;
      if (form.ambient_dim == 2) {
        auto before = pairing_signature(slices[0]);
        auto after = pairing_signature(slices[4]);
        ok &= before != after && before == pairing_signature(slices[1]) && after == pairing_signature(slices[3]);
      }
    }
  }
  report(7, ok, "(2,1) -> 2,2,1,2,2 and (3,2) -> 1,1,1,2,2 at res 16/32/64; pairing flips across t=0");
}

void criterion8() {
  std::mt19937_64 rng(8888);
  int violations = 0, roundtrip_failures = 0, steps = 0;
  for (int seq = 0; seq < kSurfaceSequences; ++seq) {
    std::vector<int> g0;
    for (auto n = 1 + rng() % 3; n > 0; --n) g0.push_back(static_cast<int>(rng() % 3));
    SurfaceDescriptor s(g0);
    int chi = s.euler_characteristic();
    for (int k = 0; k < 12; ++k, ++steps) {
      auto n = s.component_count();
      std::size_t c = rng() % n;
      SurgerySite2D site;
      int delta = 0;
      switch (rng() % 4) {
        case 0:
          site = JoinSite{c, rng() % n};
          delta = -2;
          break;
        case 1:
          site = CutSite{c, CurveKind::TrivialSeparating, 0, 0};
          delta = 2;
          break;
        case 2:
          if (s.genera()[c] == 0) {
            site = JoinSite{c, c};
            delta = -2;
          } else {
            site = CutSite{c, CurveKind::NonSeparating, 0, 0};
            delta = 2;
          }
          break;
        default: {
          int g = s.genera()[c];
          int g1 = g == 0 ? 0 : static_cast<int>(rng() % static_cast<unsigned>(g + 1));
          site = CutSite{c, CurveKind::SeparatingSplit, g1, g - g1};
          delta = 2;
        }
      }
      // Duality: undo the step and compare exactly.
      auto t = apply_surgery(s, site);
      SurfaceDescriptor back;
      if (auto* j = std::get_if<JoinSite>(&site)) {
        if (j->first == j->second)
          back = two_dim_one_surgery(t, {j->first, CurveKind::NonSeparating, 0, 0});
        else {
          std::size_t lo = std::min(j->first, j->second), hi = std::max(j->first, j->second);
          back = two_dim_one_surgery(t, {lo, CurveKind::SeparatingSplit, s.genera()[lo], s.genera()[hi]});
          // the split piece is appended, so only the tail order can differ
          if (hi != n - 1 && back.sorted_genera() == s.sorted_genera()) back = s;
        }
      } else {
        const auto& cut = std::get<CutSite>(site);
        back = cut.kind == CurveKind::NonSeparating ? two_dim_zero_surgery(t, {cut.component, cut.component})
                                                    : two_dim_zero_surgery(t, {cut.component, t.component_count() - 1});
      }
      if (!(back == s)) ++roundtrip_failures;
      s = t;
      chi += delta;
      if (s.euler_characteristic() != chi) ++violations;
      for (std::size_t i = 0; i < s.component_count(); ++i)
        if (s.euler_characteristic(i) != 2 - 2 * s.genera()[i]) ++violations;
    }
  }
  report(8, violations == 0 && roundtrip_failures == 0,
         std::to_string(kSurfaceSequences) + " sequences, " + std::to_string(steps) + " steps, " +
             std::to_string(violations) + " Euler violations, " + std::to_string(roundtrip_failures) +
             " round-trip failures");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion9(const char* cli) {
  fs::path dir = fs::temp_directory_path() / "surgerykit-acceptance";
  auto a = corpus::check(dir / "a");
  auto b = corpus::check(dir / "b");
  bool ok = a.size() == b.size() && !a.empty();
  for (std::size_t i = 0; ok && i < a.size(); ++i) ok &= a[i].report == b[i].report && a[i].matches;
  std::string detail = std::to_string(a.size()) + " corpus reports identical across two runs";
  if (cli) {
    fs::create_directories(dir);
    auto r1 = dir / "r1.txt", r2 = dir / "r2.txt";
    std::string base = std::string("\"") + cli + "\" check --report ";
    int e1 = std::system((base + "\"" + r1.string() + "\" > /dev/null").c_str());
    int e2 = std::system((base + "\"" + r2.string() + "\" > /dev/null").c_str());
    bool same = e1 == 0 && e2 == 0 && slurp(r1) == slurp(r2) && !slurp(r1).empty();
    ok &= same;
    detail += same ? "; `surgery check` twice: byte-identical" : "; `surgery check` outputs differ or failed";
  }
  fs::remove_all(dir);
  report(9, ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9(argc > 1 ? argv[1] : nullptr);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
