#include "mcq/blockcore.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "mcq/matrix.hpp"

namespace mcq {

Selector selector_all(PairSel s, int k) { return Selector(k, s); }

Selector sigma_selector(const Selector& s) {
  Selector r(s.size());
  for (size_t j = 0; j < s.size(); ++j)
    r[j] = static_cast<PairSel>((static_cast<int>(s[j]) + 1) % 3);
  return r;
}

std::string selector_key(const Selector& s) {
  static const char* names[3] = {"AB", "BC", "CA"};
  std::string key;
  for (size_t j = 0; j < s.size(); ++j) {
    if (j) key += ".";
    key += names[static_cast<int>(s[j])];
  }
  return key;
}

Selector selector_parse(const std::string& key) {
  Selector s;
  size_t pos = 0;
  while (pos < key.size()) {
    size_t dot = key.find('.', pos);
    std::string tok = key.substr(pos, dot == std::string::npos ? dot : dot - pos);
    if (tok == "AB")
      s.push_back(PairSel::AB);
    else if (tok == "BC")
      s.push_back(PairSel::BC);
    else if (tok == "CA")
      s.push_back(PairSel::CA);
    else
      throw std::invalid_argument("bad selector token: " + tok);
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return s;
}

const Vec& ModularBlock::vertex(int id) const {
  if (id < k) return A[id];
  if (id < 2 * k) return B[id - k];
  return C[id - 2 * k];
}

std::vector<int> ModularBlock::simplex_vertex_ids(const Selector& s) const {
  std::vector<int> ids;
  ids.reserve(2 * k);
  for (int j = 0; j < k; ++j) {
    switch (s[j]) {
      case PairSel::AB:
        ids.push_back(j);
        ids.push_back(k + j);
        break;
      case PairSel::BC:
        ids.push_back(k + j);
        ids.push_back(2 * k + j);
        break;
      case PairSel::CA:
        ids.push_back(j);
        ids.push_back(2 * k + j);
        break;
    }
  }
  return ids;
}

std::vector<Vec> ModularBlock::simplex(const Selector& s) const {
  std::vector<Vec> verts;
  for (int id : simplex_vertex_ids(s)) verts.push_back(vertex(id));
  return verts;
}

ModularBlock build_block(int k) {
  if (k < 2) throw std::invalid_argument("block size must be at least 2");
  ModularBlock blk;
  blk.k = k;
  int d = 2 * k;
  Rational inv2n = make_rational(1, 2 * (2 * k - 1));
  for (int j = 0; j < k; ++j) {
    Vec a(d, Rational(0)), b(d, Rational(0)), c(d, Rational(0));
    a[j] = 1;
    c[k + j] = 1;
    for (int i = 0; i < k; ++i) {
      Rational w = Rational(2 - (i == j ? 1 : 0)) * inv2n;
      b[i] = w;
      b[k + i] = w;
    }
    blk.A.push_back(a);
    blk.B.push_back(b);
    blk.C.push_back(c);
  }
  // Enumerate selectors in lexicographic order (AB < BC < CA per slot).
  Selector cur(k, PairSel::AB);
  Selector outer = selector_all(PairSel::CA, k);
  Selector inner1 = selector_all(PairSel::AB, k);
  Selector inner2 = selector_all(PairSel::BC, k);
  for (;;) {
    if (cur != outer) {
      blk.good.push_back(cur);
      if (cur != inner1 && cur != inner2) blk.core.push_back(cur);
    }
    int j = k - 1;
    while (j >= 0 && cur[j] == PairSel::CA) {
      cur[j] = PairSel::AB;
      --j;
    }
    if (j < 0) break;
    cur[j] = static_cast<PairSel>(static_cast<int>(cur[j]) + 1);
  }
  return blk;
}

int sigma_vertex(int k, int id) { return (id + k) % (3 * k); }

namespace {

int b_count(const Selector& s) {
  int b = 0;
  for (PairSel p : s)
    if (p != PairSel::CA) ++b;
  return b;
}

Rational pow_rational(const Rational& x, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

BlockReport verify_block(const ModularBlock& blk, VerifyLevel level) {
  BlockReport rep;
  rep.k = blk.k;
  rep.level = level == VerifyLevel::Structural ? "structural" : "full";
  int k = blk.k;
  auto add = [&rep](const std::string& name, bool pass, std::string detail = "") {
    rep.checks.push_back({name, pass, std::move(detail)});
  };

  {
    bool ok = true;
    std::string why;
    for (int id = 0; id < 3 * k && ok; ++id) {
      const Vec& v = blk.vertex(id);
      Rational s = 0;
      for (const auto& x : v) {
        if (sgn(x) < 0) ok = false;
        s += x;
      }
      if (s != 1) ok = false;
      if (!ok) why = "vertex " + std::to_string(id);
    }
    add("vertex-normalization", ok, why);
  }

  {
    long expected_good = 1;
    for (int j = 0; j < k; ++j) expected_good *= 3;
    bool ok = static_cast<long>(blk.good.size()) == expected_good - 1 &&
              static_cast<long>(blk.core.size()) == expected_good - 3;
    add("piece-census", ok,
        "good=" + std::to_string(blk.good.size()) +
            " core=" + std::to_string(blk.core.size()));
  }

  {
    // Exact determinant of every piece against the closed form
    // |det| = (2b - 1) / (2n)^b, b = number of triples contributing their
    // middle vertex (b = 0 gives |det| = 1, the ambient simplex itself).
    bool ok = true;
    std::string why;
    Rational inv2n = make_rational(1, 2 * blk.n());
    for (const auto& s : blk.good) {
      int b = b_count(s);
      Rational expect = Rational(std::abs(2 * b - 1)) * pow_rational(inv2n, b);
      Rational got = simplex_det_abs(blk.simplex(s));
      if (got != expect) {
        ok = false;
        why = selector_key(s) + " det " + rat_str(got) + " != " + rat_str(expect);
        break;
      }
    }
    add("piece-nondegeneracy", ok, why);
  }

  {
    bool ok = true;
    std::string why;
    std::map<std::string, int> index;
    for (size_t i = 0; i < blk.core.size(); ++i)
      index[selector_key(blk.core[i])] = static_cast<int>(i);
    std::vector<int> seen(blk.core.size(), 0);
    for (size_t i = 0; i < blk.core.size() && ok; ++i) {
      Selector s1 = sigma_selector(blk.core[i]);
      Selector s2 = sigma_selector(s1);
      Selector s3 = sigma_selector(s2);
      if (s3 != blk.core[i] || s1 == blk.core[i]) {
        ok = false;
        why = "orbit at " + selector_key(blk.core[i]);
        break;
      }
      if (!index.count(selector_key(s1)) || !index.count(selector_key(s2))) {
        ok = false;
        why = "rotation leaves core at " + selector_key(blk.core[i]);
      }
    }
    if (ok && !sigma_selector(selector_all(PairSel::AB, k)).empty() &&
        sigma_selector(selector_all(PairSel::AB, k)) !=
            selector_all(PairSel::BC, k)) {
      ok = false;
      why = "rotation does not swap the inner pieces";
    }
    add("rotation-orbits", ok, why);
  }

  if (level == VerifyLevel::Full) {
    // Cache simplices and vertex-matrix inverses once.
    std::vector<std::vector<Vec>> simps;
    std::vector<std::vector<int>> ids;
    std::vector<Mat> invs;
    for (const auto& s : blk.good) {
      simps.push_back(blk.simplex(s));
      ids.push_back(blk.simplex_vertex_ids(s));
      auto inv = vertex_matrix_inverse(simps.back());
      if (!inv) throw std::logic_error("degenerate good piece");
      invs.push_back(*inv);
    }
    std::map<std::string, size_t> good_index;
    for (size_t i = 0; i < blk.good.size(); ++i)
      good_index[selector_key(blk.good[i])] = i;

    {
      // Core pieces have pairwise disjoint interiors.
      bool ok = true;
      std::string why;
      for (size_t a = 0; a < blk.core.size() && ok; ++a) {
        size_t ia = good_index[selector_key(blk.core[a])];
        for (size_t b = a + 1; b < blk.core.size(); ++b) {
          size_t ib = good_index[selector_key(blk.core[b])];
          if (interiors_intersect(simps[ia], simps[ib])) {
            ok = false;
            why = selector_key(blk.core[a]) + " vs " + selector_key(blk.core[b]);
            break;
          }
        }
      }
      add("interior-disjointness", ok, why);
    }

    {
      // Every pair of pieces meets exactly in the face spanned by the
      // vertices they share.
      bool ok = true;
      std::string why;
      for (size_t a = 0; a < blk.good.size() && ok; ++a) {
        for (size_t b = a + 1; b < blk.good.size(); ++b) {
          std::vector<std::pair<int, int>> common;
          for (size_t i = 0; i < ids[a].size(); ++i)
            for (size_t j = 0; j < ids[b].size(); ++j)
              if (ids[a][i] == ids[b][j])
                common.push_back({static_cast<int>(i), static_cast<int>(j)});
          if (!meets_exactly_in_common_face(simps[a], invs[a], simps[b], common)) {
            ok = false;
            why = selector_key(blk.good[a]) + " vs " + selector_key(blk.good[b]);
            break;
          }
        }
      }
      add("face-intersections", ok, why);
    }

    {
      // With disjoint interiors established, matching volumes certify that
      // the core pieces exactly cover the ambient simplex minus the two
      // inner ones.
      Rational core_sum = 0;
      for (const auto& s : blk.core) core_sum += simplex_det_abs(blk.simplex(s));
      Rational inner = simplex_det_abs(blk.simplex(selector_all(PairSel::AB, k))) +
                       simplex_det_abs(blk.simplex(selector_all(PairSel::BC, k)));
      bool ok = core_sum + inner == 1;
      add("volume-cover", ok,
          ok ? "" : rat_str(core_sum) + " + " + rat_str(inner) + " != 1");
    }
  }

  rep.pass = true;
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

std::string BlockReport::to_json() const {
  nlohmann::json j;
  j["format_version"] = 1;
  j["k"] = k;
  j["level"] = level;
  j["pass"] = pass;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    if (!c.detail.empty()) jc["detail"] = c.detail;
    j["checks"].push_back(jc);
  }
  return j.dump(2);
}

std::optional<CoreLocation> locate_in_core(const ModularBlock& blk, const Vec& p) {
  for (size_t i = 0; i < blk.core.size(); ++i) {
    auto lam = barycentric(blk.simplex(blk.core[i]), p);
    if (!lam) continue;
    bool inside = true;
    for (const auto& l : *lam)
      if (sgn(l) < 0) {
        inside = false;
        break;
      }
    if (inside) return CoreLocation{static_cast<int>(i), *lam};
  }
  return std::nullopt;
}

Vec sigma_apply(const ModularBlock& blk, const Vec& p) {
  auto loc = locate_in_core(blk, p);
  if (!loc)
    throw std::domain_error("sigma_apply: point not in the core region");
  std::vector<int> ids = blk.simplex_vertex_ids(blk.core[loc->core_index]);
  Vec out(blk.dim(), Rational(0));
  for (size_t i = 0; i < ids.size(); ++i) {
    const Vec& tv = blk.vertex(sigma_vertex(blk.k, ids[i]));
    for (int r = 0; r < blk.dim(); ++r) out[r] += loc->lambda[i] * tv[r];
  }
  return out;
}

std::vector<std::array<int, 3>> sigma_core_orbits(const ModularBlock& blk) {
  std::map<std::string, int> index;
  for (size_t i = 0; i < blk.core.size(); ++i)
    index[selector_key(blk.core[i])] = static_cast<int>(i);
  std::vector<bool> used(blk.core.size(), false);
  std::vector<std::array<int, 3>> orbits;
  for (size_t i = 0; i < blk.core.size(); ++i) {
    if (used[i]) continue;
    Selector s1 = sigma_selector(blk.core[i]);
    Selector s2 = sigma_selector(s1);
    int i1 = index.at(selector_key(s1));
    int i2 = index.at(selector_key(s2));
    used[i] = used[i1] = used[i2] = true;
    orbits.push_back({static_cast<int>(i), i1, i2});
  }
  return orbits;
}

std::vector<std::vector<int>> core_adjacency(const ModularBlock& blk) {
  std::map<std::string, int> index;
  for (size_t i = 0; i < blk.core.size(); ++i)
    index[selector_key(blk.core[i])] = static_cast<int>(i);
  std::vector<std::vector<int>> adj(blk.core.size());
  for (size_t i = 0; i < blk.core.size(); ++i) {
    for (int j = 0; j < blk.k; ++j) {
      for (int alt = 0; alt < 3; ++alt) {
        Selector s = blk.core[i];
        if (static_cast<int>(s[j]) == alt) continue;
        s[j] = static_cast<PairSel>(alt);
        auto it = index.find(selector_key(s));
        if (it != index.end()) adj[i].push_back(it->second);
      }
    }
    std::sort(adj[i].begin(), adj[i].end());
  }
  return adj;
}

}  // namespace mcq
