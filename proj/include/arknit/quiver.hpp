#pragma once

// Finite quivers: textual/JSON parsing, walks in the underlying graph,
// tree and acyclicity structure, the double quiver, and path enumeration.
//
// Vertices and arrows are referred to by dense indices in declaration
// order; every ordering the module emits (topological orders, path bases,
// cycle lists) is a deterministic function of the declaration order.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "arknit/common.hpp"

namespace arknit {

struct Arrow {
  std::string id;
  int src = -1;
  int tgt = -1;
};

class Walk;

class Quiver {
 public:
  /// Builds a quiver from components, validating id uniqueness and
  /// endpoint sanity. Arrow ids may contain '*' here (the double quiver
  /// uses starred ids); the text parser is stricter.
  static Quiver make(std::vector<std::string> vertex_ids,
                     std::vector<Arrow> arrows) {
    Quiver q;
    q.vertex_ids_ = std::move(vertex_ids);
    q.arrows_ = std::move(arrows);
    ARKNIT_CHECK(!q.vertex_ids_.empty(), "quiver needs at least one vertex");
    for (int v = 0; v < q.n_vertices(); ++v) {
      auto [it, fresh] = q.vid_.emplace(q.vertex_ids_[v], v);
      (void)it;
      ARKNIT_CHECK(fresh, "duplicate vertex id '" + q.vertex_ids_[v] + "'");
    }
    q.out_.resize(q.n_vertices());
    q.in_.resize(q.n_vertices());
    for (int a = 0; a < q.n_arrows(); ++a) {
      const Arrow& ar = q.arrows_[a];
      auto [it, fresh] = q.aid_.emplace(ar.id, a);
      (void)it;
      ARKNIT_CHECK(fresh, "duplicate arrow id '" + ar.id + "'");
      ARKNIT_CHECK(0 <= ar.src && ar.src < q.n_vertices(), "bad arrow source");
      ARKNIT_CHECK(0 <= ar.tgt && ar.tgt < q.n_vertices(), "bad arrow target");
      ARKNIT_CHECK(ar.src != ar.tgt, "arrow '" + ar.id + "' is a loop");
      q.out_[ar.src].push_back(a);
      q.in_[ar.tgt].push_back(a);
    }
    return q;
  }

  /// Parses the semicolon-separated declaration language, e.g.
  /// "1;2;3; a:2->1; b:3->2". See docs/formats.md for the grammar.
  static Quiver parse_dsl(std::string_view text);

  /// Parses the JSON form {"schema_version":1,"vertices":[..],"arrows":[..]}.
  static Quiver parse_json(std::string_view text);

  /// Dispatches on the first non-space character ('{' means JSON).
  static Quiver parse_any(std::string_view text) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch)))
        return ch == '{' ? parse_json(text) : parse_dsl(text);
    throw ParseError("empty quiver description", 1, 1);
  }

  std::string to_dsl() const {
    std::string out;
    for (int v = 0; v < n_vertices(); ++v) {
      if (v) out += "; ";
      out += vertex_ids_[v];
    }
    for (const Arrow& a : arrows_)
      out += "; " + a.id + ": " + vertex_ids_[a.src] + "->" + vertex_ids_[a.tgt];
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["vertices"] = vertex_ids_;
    j["arrows"] = nlohmann::json::array();
    for (const Arrow& a : arrows_)
      j["arrows"].push_back({{"id", a.id},
                             {"src", vertex_ids_[a.src]},
                             {"tgt", vertex_ids_[a.tgt]}});
    return j;
  }

  int n_vertices() const { return static_cast<int>(vertex_ids_.size()); }
  int n_arrows() const { return static_cast<int>(arrows_.size()); }
  const std::string& vertex_id(int v) const { return vertex_ids_.at(v); }
  const Arrow& arrow(int a) const { return arrows_.at(a); }
  const std::vector<int>& arrows_from(int v) const { return out_.at(v); }
  const std::vector<int>& arrows_into(int v) const { return in_.at(v); }

  int vertex_index(std::string_view id) const {
    auto it = vid_.find(std::string(id));
    ARKNIT_CHECK(it != vid_.end(), "unknown vertex '" + std::string(id) + "'");
    return it->second;
  }
  int arrow_index(std::string_view id) const {
    auto it = aid_.find(std::string(id));
    ARKNIT_CHECK(it != aid_.end(), "unknown arrow '" + std::string(id) + "'");
    return it->second;
  }
  bool has_vertex(std::string_view id) const {
    return vid_.count(std::string(id)) != 0;
  }

  std::vector<int> sinks() const {
    std::vector<int> out;
    for (int v = 0; v < n_vertices(); ++v)
      if (out_[v].empty()) out.push_back(v);
    return out;
  }
  std::vector<int> sources() const {
    std::vector<int> out;
    for (int v = 0; v < n_vertices(); ++v)
      if (in_[v].empty()) out.push_back(v);
    return out;
  }

  bool is_connected() const {
    std::vector<bool> seen(n_vertices(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [a, fwd] : incident(v)) {
        (void)fwd;
        int w = other_end(a, v);
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == n_vertices();
  }

  /// Order with every arrow pointing from an earlier to a later vertex;
  /// ties broken by ascending declaration index. Throws on a directed cycle.
  std::vector<int> topological_order() const {
    std::vector<int> remaining_in(n_vertices());
    for (int v = 0; v < n_vertices(); ++v)
      remaining_in[v] = static_cast<int>(in_[v].size());
    std::vector<bool> done(n_vertices(), false);
    std::vector<int> order;
    while (static_cast<int>(order.size()) < n_vertices()) {
      int pick = -1;
      for (int v = 0; v < n_vertices(); ++v)
        if (!done[v] && remaining_in[v] == 0) { pick = v; break; }
      ARKNIT_CHECK(pick >= 0, "quiver has a directed cycle");
      done[pick] = true;
      order.push_back(pick);
      for (int a : out_[pick]) --remaining_in[arrows_[a].tgt];
    }
    return order;
  }

  bool is_acyclic() const {
    try {
      topological_order();
      return true;
    } catch (const CheckError&) {
      return false;
    }
  }

  /// Order in which every arrow's target precedes its source (sinks first);
  /// ties broken by ascending declaration index.
  std::vector<int> sinks_first_order() const {
    std::vector<int> remaining_out(n_vertices());
    for (int v = 0; v < n_vertices(); ++v)
      remaining_out[v] = static_cast<int>(out_[v].size());
    std::vector<bool> done(n_vertices(), false);
    std::vector<int> order;
    while (static_cast<int>(order.size()) < n_vertices()) {
      int pick = -1;
      for (int v = 0; v < n_vertices(); ++v)
        if (!done[v] && remaining_out[v] == 0) { pick = v; break; }
      ARKNIT_CHECK(pick >= 0, "quiver has a directed cycle");
      done[pick] = true;
      order.push_back(pick);
      for (int a : in_[pick]) --remaining_out[arrows_[a].src];
    }
    return order;
  }

  bool is_tree() const {
    return is_connected() && n_arrows() == n_vertices() - 1;
  }

  bool has_parallel_arrows() const {
    std::map<std::pair<int, int>, int> seen;
    for (const Arrow& a : arrows_)
      if (++seen[{a.src, a.tgt}] > 1) return true;
    return false;
  }

  Quiver opposite() const {
    std::vector<Arrow> rev = arrows_;
    for (Arrow& a : rev) std::swap(a.src, a.tgt);
    return make(vertex_ids_, std::move(rev));
  }

  /// (arrow, traversed-forward) pairs at v, in arrow declaration order.
  std::vector<std::pair<int, bool>> incident(int v) const {
    std::vector<std::pair<int, bool>> out;
    for (int a = 0; a < n_arrows(); ++a) {
      if (arrows_[a].src == v) out.emplace_back(a, true);
      if (arrows_[a].tgt == v) out.emplace_back(a, false);
    }
    return out;
  }

  int other_end(int a, int v) const {
    const Arrow& ar = arrows_.at(a);
    ARKNIT_CHECK(ar.src == v || ar.tgt == v, "arrow not incident to vertex");
    return ar.src == v ? ar.tgt : ar.src;
  }

  Walk unique_walk(int from, int to) const;
  std::vector<Walk> fundamental_cycles() const;

 private:
  Quiver() = default;

  std::vector<std::string> vertex_ids_;
  std::vector<Arrow> arrows_;
  std::map<std::string, int> vid_, aid_;
  std::vector<std::vector<int>> out_, in_;
};

struct WalkStep {
  int arrow = -1;
  bool forward = true;
  bool operator==(const WalkStep& o) const {
    return arrow == o.arrow && forward == o.forward;
  }
};

/// A walk in the underlying graph: consecutive steps must chain, and a step
/// may not immediately undo the previous one.
class Walk {
 public:
  static Walk make(const Quiver& q, int start, std::vector<WalkStep> steps) {
    Walk w;
    w.start_ = start;
    w.steps_ = std::move(steps);
    int cur = start;
    for (size_t i = 0; i < w.steps_.size(); ++i) {
      const WalkStep& s = w.steps_[i];
      const Arrow& a = q.arrow(s.arrow);
      int from = s.forward ? a.src : a.tgt;
      int to = s.forward ? a.tgt : a.src;
      ARKNIT_CHECK(from == cur, "walk steps do not chain");
      if (i > 0) {
        ARKNIT_CHECK(!(w.steps_[i - 1].arrow == s.arrow &&
                       w.steps_[i - 1].forward != s.forward),
                     "walk immediately backtracks");
      }
      cur = to;
    }
    w.end_ = cur;
    return w;
  }

  int start() const { return start_; }
  int end() const { return end_; }
  size_t length() const { return steps_.size(); }
  const std::vector<WalkStep>& steps() const { return steps_; }

  Walk reversed(const Quiver& q) const {
    std::vector<WalkStep> rev;
    rev.reserve(steps_.size());
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it)
      rev.push_back(WalkStep{it->arrow, !it->forward});
    return make(q, end_, std::move(rev));
  }

  std::string str(const Quiver& q) const {
    std::string out = q.vertex_id(start_);
    int cur = start_;
    for (const WalkStep& s : steps_) {
      const Arrow& a = q.arrow(s.arrow);
      cur = s.forward ? a.tgt : a.src;
      out += s.forward ? " -" + a.id + "-> " : " <-" + a.id + "- ";
      out += q.vertex_id(cur);
    }
    return out;
  }

 private:
  int start_ = 0;
  int end_ = 0;
  std::vector<WalkStep> steps_;
};

inline Walk Quiver::unique_walk(int from, int to) const {
  ARKNIT_CHECK(is_tree(), "unique walks need a tree-shaped quiver");
  // BFS from `from`; the tree makes the found path the only one.
  std::vector<int> parent(n_vertices(), -1);
  std::vector<WalkStep> via(n_vertices());
  std::vector<bool> seen(n_vertices(), false);
  std::vector<int> queue{from};
  seen[from] = true;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (auto [a, fwd] : incident(v)) {
      int w = other_end(a, v);
      if (seen[w]) continue;
      seen[w] = true;
      parent[w] = v;
      via[w] = WalkStep{a, fwd};
      queue.push_back(w);
    }
  }
  ARKNIT_CHECK(seen[to], "vertices lie in different components");
  std::vector<WalkStep> steps;
  for (int v = to; v != from; v = parent[v]) steps.push_back(via[v]);
  std::reverse(steps.begin(), steps.end());
  return Walk::make(*this, from, std::move(steps));
}

inline std::vector<Walk> Quiver::fundamental_cycles() const {
  ARKNIT_CHECK(is_connected(), "cycle basis needs a connected quiver");
  // BFS spanning tree from vertex 0; one closed walk per non-tree arrow.
  std::vector<int> parent(n_vertices(), -1);
  std::vector<WalkStep> via(n_vertices());
  std::vector<bool> seen(n_vertices(), false);
  std::vector<bool> in_tree(n_arrows(), false);
  std::vector<int> queue{0};
  seen[0] = true;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (auto [a, fwd] : incident(v)) {
      int w = other_end(a, v);
      if (seen[w]) continue;
      seen[w] = true;
      in_tree[a] = true;
      parent[w] = v;
      via[w] = WalkStep{a, fwd};
      queue.push_back(w);
    }
  }
  auto tree_walk = [&](int from, int to) {
    // Meet-in-the-root path through recorded parents.
    std::vector<int> anc_from{from}, anc_to{to};
    for (int v = from; parent[v] >= 0; v = parent[v]) anc_from.push_back(parent[v]);
    for (int v = to; parent[v] >= 0; v = parent[v]) anc_to.push_back(parent[v]);
    int i = static_cast<int>(anc_from.size()) - 1;
    int j = static_cast<int>(anc_to.size()) - 1;
    while (i > 0 && j > 0 && anc_from[i - 1] == anc_to[j - 1]) { --i; --j; }
    std::vector<WalkStep> steps;
    for (int k = 0; k < i; ++k) {
      WalkStep s = via[anc_from[k]];
      steps.push_back(WalkStep{s.arrow, !s.forward});
    }
    for (int k = j - 1; k >= 0; --k) steps.push_back(via[anc_to[k]]);
    return steps;
  };
  std::vector<Walk> cycles;
  for (int a = 0; a < n_arrows(); ++a) {
    if (in_tree[a]) continue;
    std::vector<WalkStep> steps{WalkStep{a, true}};
    auto back = tree_walk(arrows_[a].tgt, arrows_[a].src);
    steps.insert(steps.end(), back.begin(), back.end());
    cycles.push_back(Walk::make(*this, arrows_[a].src, std::move(steps)));
  }
  return cycles;
}

// ---------------------------------------------------------------------------
// Text parser

namespace detail {

class DslCursor {
 public:
  explicit DslCursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == '\n') { ++line_; col_ = 1; ++pos_; }
      else if (std::isspace(static_cast<unsigned char>(ch))) { ++col_; ++pos_; }
      else break;
    }
  }
  bool done() { skip_ws(); return pos_ >= text_.size(); }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void advance() {
    if (pos_ < text_.size()) {
      if (text_[pos_] == '\n') { ++line_; col_ = 1; }
      else ++col_;
      ++pos_;
    }
  }
  int line() const { return line_; }
  int col() const { return col_; }

  std::string read_id() {
    skip_ws();
    size_t begin = pos_;
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') advance();
      else break;
    }
    if (pos_ == begin)
      throw ParseError("expected an identifier", line_, col_);
    return std::string(text_.substr(begin, pos_ - begin));
  }

  void expect(char ch, const char* what) {
    skip_ws();
    if (peek() != ch) throw ParseError(std::string("expected ") + what, line_, col_);
    advance();
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace detail

inline Quiver Quiver::parse_dsl(std::string_view text) {
  detail::DslCursor cur(text);
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::pair<std::string, std::string>>> arrows;
  std::map<std::string, std::pair<int, int>> decl_pos;
  auto note_pos = [&](const std::string& id, int line, int col) {
    if (decl_pos.count(id))
      throw ParseError("duplicate id '" + id + "'", line, col);
    decl_pos[id] = {line, col};
  };
  while (!cur.done()) {
    int line = cur.line(), col = cur.col();
    std::string id = cur.read_id();
    cur.skip_ws();
    if (cur.peek() == ':') {
      cur.advance();
      std::string src = cur.read_id();
      cur.expect('-', "'->'");
      cur.expect('>', "'->'");
      std::string tgt = cur.read_id();
      note_pos(id, line, col);
      arrows.emplace_back(id, std::make_pair(src, tgt));
    } else {
      note_pos(id, line, col);
      vertices.push_back(id);
    }
    cur.skip_ws();
    if (cur.peek() == ';') cur.advance();
    else if (!cur.done())
      throw ParseError("expected ';' between declarations", cur.line(), cur.col());
  }
  if (vertices.empty())
    throw ParseError("quiver declares no vertices", 1, 1);
  std::map<std::string, int> vidx;
  for (int v = 0; v < static_cast<int>(vertices.size()); ++v)
    vidx[vertices[v]] = v;
  std::vector<Arrow> built;
  for (auto& [id, ends] : arrows) {
    auto find = [&](const std::string& vid) {
      auto it = vidx.find(vid);
      if (it == vidx.end()) {
        auto [line, col] = decl_pos[id];
        throw ParseError("arrow '" + id + "' uses undeclared vertex '" + vid + "'",
                         line, col);
      }
      return it->second;
    };
    int s = find(ends.first), t = find(ends.second);
    if (s == t) {
      auto [line, col] = decl_pos[id];
      throw ParseError("arrow '" + id + "' is a loop", line, col);
    }
    built.push_back(Arrow{id, s, t});
  }
  try {
    return make(std::move(vertices), std::move(built));
  } catch (const CheckError& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

inline Quiver Quiver::parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("bad quiver JSON: ") + e.what());
  }
  try {
    ARKNIT_CHECK(j.is_object() && j.contains("vertices") && j.contains("arrows"),
                 "quiver JSON needs 'vertices' and 'arrows'");
    if (j.contains("schema_version"))
      ARKNIT_CHECK(j["schema_version"] == 1, "unsupported schema_version");
    std::vector<std::string> vertices =
        j["vertices"].get<std::vector<std::string>>();
    std::map<std::string, int> vidx;
    for (int v = 0; v < static_cast<int>(vertices.size()); ++v)
      vidx[vertices[v]] = v;
    std::vector<Arrow> arrows;
    for (const auto& a : j["arrows"]) {
      std::string id = a.at("id").get<std::string>();
      std::string src = a.at("src").get<std::string>();
      std::string tgt = a.at("tgt").get<std::string>();
      ARKNIT_CHECK(vidx.count(src), "arrow '" + id + "' uses undeclared vertex '" + src + "'");
      ARKNIT_CHECK(vidx.count(tgt), "arrow '" + id + "' uses undeclared vertex '" + tgt + "'");
      arrows.push_back(Arrow{id, vidx[src], vidx[tgt]});
    }
    return make(std::move(vertices), std::move(arrows));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad quiver JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Double quiver

/// The double quiver: original arrows in declaration order, then one starred
/// reverse arrow per original, id suffixed with '*'.
struct DoubleQuiver {
  Quiver q;
  int n_original = 0;

  bool is_star(int a) const { return a >= n_original; }
  int star_of(int a) const { return a + n_original; }
  int base_of(int a) const { return is_star(a) ? a - n_original : a; }
  int partner(int a) const { return is_star(a) ? a - n_original : a + n_original; }
};

inline DoubleQuiver double_quiver(const Quiver& q) {
  std::vector<std::string> vertices;
  for (int v = 0; v < q.n_vertices(); ++v) vertices.push_back(q.vertex_id(v));
  std::vector<Arrow> arrows;
  for (int a = 0; a < q.n_arrows(); ++a) arrows.push_back(q.arrow(a));
  for (int a = 0; a < q.n_arrows(); ++a) {
    const Arrow& ar = q.arrow(a);
    arrows.push_back(Arrow{ar.id + "*", ar.tgt, ar.src});
  }
  return DoubleQuiver{Quiver::make(std::move(vertices), std::move(arrows)),
                      q.n_arrows()};
}

// ---------------------------------------------------------------------------
// Path enumeration

/// A path is the sequence of its arrow indices in traversal order (first
/// arrow first). The empty path at a vertex is {}.
using Path = std::vector<int>;

/// All paths starting at a fixed vertex, bucketed by endpoint and ordered by
/// (length, lexicographic arrow sequence).
struct PathsFrom {
  int source = 0;
  std::vector<std::vector<Path>> by_target;
  std::vector<std::map<Path, int>> index_by_target;

  int count(int target) const {
    return static_cast<int>(by_target.at(target).size());
  }
  int index_of(int target, const Path& p) const {
    auto it = index_by_target.at(target).find(p);
    ARKNIT_CHECK(it != index_by_target.at(target).end(), "path not found");
    return it->second;
  }
};

inline PathsFrom paths_from(const Quiver& q, int v) {
  ARKNIT_CHECK(q.is_acyclic(), "path enumeration needs an acyclic quiver");
  PathsFrom out;
  out.source = v;
  out.by_target.resize(q.n_vertices());
  out.index_by_target.resize(q.n_vertices());
  std::vector<std::pair<int, Path>> layer{{v, {}}};
  while (!layer.empty()) {
    for (auto& [w, p] : layer) {
      out.index_by_target[w][p] = static_cast<int>(out.by_target[w].size());
      out.by_target[w].push_back(p);
    }
    std::vector<std::pair<int, Path>> next;
    for (auto& [w, p] : layer) {
      for (int a : q.arrows_from(w)) {
        Path np = p;
        np.push_back(a);
        next.emplace_back(q.arrow(a).tgt, std::move(np));
      }
    }
    layer = std::move(next);
  }
  return out;
}

/// All paths ending at a fixed vertex, bucketed by start vertex and ordered
/// by (length, lexicographic arrow sequence).
struct PathsInto {
  int target = 0;
  std::vector<std::vector<Path>> by_source;
  std::vector<std::map<Path, int>> index_by_source;

  int count(int source) const {
    return static_cast<int>(by_source.at(source).size());
  }
  int index_of(int source, const Path& p) const {
    auto it = index_by_source.at(source).find(p);
    ARKNIT_CHECK(it != index_by_source.at(source).end(), "path not found");
    return it->second;
  }
};

inline PathsInto paths_into(const Quiver& q, int v) {
  PathsFrom rev = paths_from(q.opposite(), v);
  PathsInto out;
  out.target = v;
  out.by_source.resize(q.n_vertices());
  out.index_by_source.resize(q.n_vertices());
  for (int u = 0; u < q.n_vertices(); ++u) {
    std::vector<Path> paths;
    for (const Path& p : rev.by_target[u]) {
      Path fwd(p.rbegin(), p.rend());
      paths.push_back(std::move(fwd));
    }
    std::sort(paths.begin(), paths.end(), [](const Path& a, const Path& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    out.by_source[u] = std::move(paths);
    for (int i = 0; i < static_cast<int>(out.by_source[u].size()); ++i)
      out.index_by_source[u][out.by_source[u][i]] = i;
  }
  return out;
}

}  // namespace arknit
