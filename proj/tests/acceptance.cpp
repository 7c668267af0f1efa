// Runs the full `cartanlie verify` twice and grades the report against
// criteria 1-10. One line per criterion; exit status 0 iff all pass.

#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

using Json = nlohmann::json;

namespace {

struct Run {
  std::string out;
  int exit_code = -1;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(CARTANLIE_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<Json> named(const Json& doc, const std::string& prefix) {
  std::vector<Json> out;
  for (const auto& r : doc["reports"])
    if (r["name"].get<std::string>().rfind(prefix, 0) == 0) out.push_back(r);
  return out;
}

const Json* find(const std::vector<Json>& rs, const std::string& algebra) {
  for (const auto& r : rs)
    if (r["parameters"].value("algebra", "") == algebra) return &r;
  return nullptr;
}

bool passed(const Json& r) { return r["status"] == "pass"; }

struct Grade {
  bool ok = true;
  std::ostringstream why;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) why << "; ";
      why << what;
      ok = false;
    }
  }
};

using Check = std::function<void(const Json&, Grade&)>;

void identities(const Json& doc, Grade& g) {
  const auto rs = named(doc, "jacobi");
  for (const char* a : {"W(1,(1))", "W(1,(2))"}) {
    const Json* r = find(rs, a);
    g.require(r && passed(*r) && (*r)["evidence"]["mode"] == "exhaustive" &&
                  (*r)["evidence"]["jacobi_failures"] == 0 && (*r)["evidence"]["anticommutativity_failures"] == 0,
              std::string(a) + " exhaustive Jacobi");
  }
  for (const char* a : {"W(2,(1,1))", "W(3,(1,1,1))"}) {
    const Json* r = find(rs, a);
    g.require(r && passed(*r) && (*r)["evidence"]["triples"].get<std::size_t>() >= 10000 &&
                  (*r)["evidence"]["jacobi_failures"] == 0,
              std::string(a) + " 10^4 sampled triples");
  }
}

void divergence(const Json& doc, Grade& g) {
  const auto rs = named(doc, "divergence");
  g.require(!rs.empty(), "no divergence reports");
  for (const auto& r : rs)
    g.require(passed(r) && r["evidence"]["samples"].get<std::size_t>() >= 1000 &&
                  r["evidence"]["module_failures"] == 0 && r["evidence"]["bracket_failures"] == 0,
              r["parameters"]["algebra"].get<std::string>());
}

void embedding(const Json& doc, Grade& g) {
  const auto rs = named(doc, "embedding");
  for (const auto& [a, basis] : std::vector<std::pair<std::string, std::size_t>>{{"W(1,(2))", 25}, {"W(2,(1,2))", 250}}) {
    const Json* r = find(rs, a);
    g.require(r && passed(*r) && (*r)["evidence"]["basis_elements"] == basis &&
                  (*r)["evidence"]["divergence_failures"] == 0 &&
                  (*r)["evidence"]["pairs"].get<std::size_t>() >= 500 &&
                  (*r)["evidence"]["homomorphism_failures"] == 0,
              a);
  }
}

void dimensions(const Json& doc, Grade& g) {
  const auto rs = named(doc, "dimensions");
  auto computed = [&](const std::string& a, const char* key) -> long {
    const Json* r = find(rs, a);
    if (!r || !passed(*r) || !(*r)["evidence"].contains(key)) return -1;
    return (*r)["evidence"][key]["computed"].get<long>();
  };
  g.require(computed("W(1,(1))", "dim_W") == 5 && computed("W(1,(2))", "dim_W") == 25 &&
                computed("W(2,(1,1))", "dim_W") == 50 && computed("W(2,(1,2))", "dim_W") == 250 &&
                computed("W(3,(1,1,1))", "dim_W") == 375,
            "dim W");
  g.require(computed("W(2,(1,2))", "dim_O") == 125 && computed("W(3,(1,1,1))", "dim_O") == 125, "dim O");
  g.require(computed("S(2,(1,1))", "codim_S1_in_S") == 2 && computed("S(2,(1,2))", "codim_S1_in_S") == 2 &&
                computed("S(3,(1,1,1))", "codim_S1_in_S") == 3,
            "codim S1 in S");
  g.require(computed("H(2,(1,1))", "dim_H2") == 23, "dim H(2,(1,1))2 = 23");
  g.require(computed("K(3,(1,1,1))", "dim_K") == 125 && computed("K(3,(1,1,1))", "codim_K1_in_K") == 0,
            "K(3,1)1 = K(3,1) of dim 125");
  for (const auto& r : rs)
    g.require(passed(r) || r["status"] == "skipped", "dimension mismatch for " + r["parameters"]["algebra"].get<std::string>());
}

void centraliser_law(const Json& doc, Grade& g) {
  const auto rs = named(doc, "decomposition");
  for (const char* a : {"W(1,(1))", "W(2,(1,1))"}) {
    const Json* r = find(rs, a);
    g.require(r && passed(*r) && (*r)["evidence"]["accepted"] == 100 &&
                  (*r)["evidence"]["centraliser_law_failures"] == 0 &&
                  (*r)["evidence"]["decomposition_failures"] == 0,
              a);
  }
}

void contact(const Json& doc, Grade& g) {
  const std::vector<std::pair<std::string, std::size_t>> want{
      {"contact.bracket", 500}, {"contact.conjugation", 200}, {"contact.char_poly", 50}, {"contact.centralisers", 50}};
  for (const auto& [name, n] : want) {
    const auto rs = named(doc, name);
    const Json* r = rs.empty() ? nullptr : &rs.front();
    const Json& ev = r ? (*r)["evidence"] : Json();
    const std::size_t count = ev.contains("pairs") ? ev["pairs"].get<std::size_t>()
                              : ev.contains("samples") ? ev["samples"].get<std::size_t>() : 0;
    g.require(r && passed(*r) && count >= n, name);
  }
}

void witnesses(const Json& doc, Grade& g) {
  const auto rs = named(doc, "witness");
  for (const auto& [a, n] : std::vector<std::pair<std::string, std::size_t>>{
           {"S(2,(1,1))", 200}, {"H(2,(1,1))", 200}, {"K(3,(1,1,1))", 50}}) {
    const Json* r = find(rs, a);
    g.require(r && passed(*r) && (*r)["evidence"]["samples"] == n && (*r)["evidence"]["passed"] == n, a);
  }
}

void nongeneration(const Json& doc, Grade& g) {
  const auto rs = named(doc, "nongeneration");
  for (const auto& [a, n] : std::vector<std::pair<std::string, std::size_t>>{
           {"S(2,(1,1))", 200}, {"H(2,(1,1))", 200}, {"K(3,(1,1,1))", 50}}) {
    const Json* r = find(rs, a);
    bool none = r != nullptr;
    if (r) {
      for (const auto& p : (*r)["evidence"]["probes"]) none = none && p["generating_samples"] == 0;
      none = none && (*r)["evidence"]["top_component_dim"].get<std::size_t>() > 0 &&
             (*r)["evidence"]["samples_per_element"] == n;
    }
    g.require(r && passed(*r) && none, a);
  }
}

void sanity(const Json& doc, Grade& g) {
  const auto rs = named(doc, "sanity");
  const Json* r = find(rs, "H(2,(1,1))");
  g.require(r && (*r)["gating"] == false, "sanity report missing or gating");
  g.require(r && (*r)["evidence"]["generating_samples"].get<std::size_t>() >= 1, "no 2-generation in 50 samples");
}

}  // namespace

int main() {
  const Run a = run_cli("verify");
  const Run b = run_cli("verify");

  Json doc;
  std::string parse_error;
  try {
    doc = Json::parse(a.out);
  } catch (const std::exception& e) {
    parse_error = e.what();
  }

  const std::vector<std::pair<const char*, Check>> criteria{
      {"identities: Jacobi and anticommutativity", identities},
      {"divergence identities", divergence},
      {"embedding iota and sigma", embedding},
      {"dimensions", dimensions},
      {"centraliser law and decomposition", centraliser_law},
      {"contact suite", contact},
      {"witness suite", witnesses},
      {"non-generation of top components", nongeneration},
      {"sanity diagnostic (non-gating)", sanity},
  };

  bool all = true;
  int idx = 1;
  for (const auto& [title, check] : criteria) {
    Grade g;
    if (!parse_error.empty())
      g.require(false, "report did not parse: " + parse_error);
    else
      check(doc, g);
    if (idx == 4 && g.ok) g.why << "K(7,1) skipped: dim 78125 exceeds the default dim cap";
    const std::string why = g.why.str();
    std::cout << "criterion " << idx << " " << (g.ok ? "PASS" : "FAIL") << "  " << title
              << (why.empty() ? "" : "  [" + why + "]") << "\n";
    all = all && g.ok;
    ++idx;
  }

  Grade det;
  det.require(a.exit_code == 0 && b.exit_code == 0,
              "exit codes " + std::to_string(a.exit_code) + ", " + std::to_string(b.exit_code));
  det.require(!a.out.empty() && a.out == b.out, "outputs differ");
  std::cout << "criterion 10 " << (det.ok ? "PASS" : "FAIL") << "  determinism: two runs byte-identical ("
            << a.out.size() << " bytes)" << (det.ok ? "" : "  [" + det.why.str() + "]") << "\n";
  all = all && det.ok;
  return all ? 0 : 1;
}
