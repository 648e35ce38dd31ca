#include "conduche/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "conduche/union_find.hpp"

namespace conduche {

template <typename T>
static const T* find_entry(const std::vector<Workspace::Entry<T>>& entries, std::string_view name) {
  for (const auto& e : entries)
    if (e.name == name) return &e.value;
  return nullptr;
}

const CatPtr* Workspace::find_category(std::string_view name) const { return find_entry(categories, name); }
const FinFunctor* Workspace::find_functor(std::string_view name) const { return find_entry(functors, name); }
const TruncSSet* Workspace::find_sset(std::string_view name) const { return find_entry(ssets, name); }
const ProfunctorDecl* Workspace::find_profunctor(std::string_view name) const {
  return find_entry(profunctors, name);
}

// ---------------------------------------------------------------------------
// Closure of partial composition tables

namespace {

class Closure {
 public:
  Closure(const RawCategory& raw, std::size_t budget) : raw_(raw), budget_(budget) {
    n_ = raw.objects.size();
    declared_ = n_ + raw.arrows.size();
    for (Obj o = 0; o < n_; ++o) add_element(identity_name(raw.objects[o]), o, o);
    for (const RawArrow& a : raw.arrows) add_element(a.name, a.src, a.tgt);
    for (const RawComposite& c : raw.composites) {
      if (c.g < n_ || c.f < n_) continue;  // unit entries were checked already
      set_entry(c.g, c.f, c.h);
    }
  }

  FinCat run() {
    while (true) {
      saturate();
      std::vector<std::pair<Mor, Mor>> missing;
      for (Mor f : live())
        for (Mor g : live())
          if (g >= n_ && f >= n_ && tgt_[f] == src_[g] && !table_.count({g, f})) missing.emplace_back(g, f);
      if (missing.empty()) break;
      for (auto [g, f] : missing) {
        if (names_.size() >= budget_)
          throw Error(ErrorKind::ClosureBudgetExceeded,
                      "closing '" + raw_.name + "' needs more than " + std::to_string(budget_) + " morphisms");
        const Mor h = add_element(wrap(names_[g]) + "." + wrap(names_[f]), src_[f], tgt_[g]);
        table_[{g, f}] = h;
      }
    }
    return finish();
  }

 private:
  static std::string wrap(const std::string& s) {
    return s.find('.') == std::string::npos ? s : "(" + s + ")";
  }

  Mor add_element(std::string name, Obj src, Obj tgt) {
    names_.push_back(std::move(name));
    src_.push_back(src);
    tgt_.push_back(tgt);
    uf_.add();
    return static_cast<Mor>(names_.size() - 1);
  }

  std::vector<Mor> live() {
    std::vector<Mor> out;
    for (Mor k = 0; k < names_.size(); ++k)
      if (uf_.find(k) == k) out.push_back(k);
    return out;
  }

  Mor rep(Mor k) { return static_cast<Mor>(uf_.find(k)); }

  // Composite on representatives, with the unit laws built in.
  std::optional<Mor> compose(Mor g, Mor f) {
    if (f < n_) return g;
    if (g < n_) return f;
    auto it = table_.find({g, f});
    if (it == table_.end()) return std::nullopt;
    return rep(it->second);
  }

  void merge(Mor a, Mor b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a < declared_ && b < declared_)
      throw Error(ErrorKind::Collapse, "closing '" + raw_.name + "' identifies '" + names_[a] + "' with '" +
                                           names_[b] + "'");
    uf_.unite(a, b);
    dirty_ = true;
  }

  void set_entry(Mor g, Mor f, Mor h) {
    if (g < n_) return merge(f, h);
    if (f < n_) return merge(g, h);
    auto [it, fresh] = table_.emplace(std::pair{g, f}, h);
    if (!fresh) merge(it->second, h);
  }

  // Merges forced by congruence and associativity, to a fixed point.
  void saturate() {
    do {
      dirty_ = false;
      std::map<std::pair<Mor, Mor>, Mor> old;
      old.swap(table_);
      for (const auto& [key, h] : old) set_entry(rep(key.first), rep(key.second), rep(h));
      if (dirty_) continue;
      std::vector<std::tuple<Mor, Mor, Mor>> entries;
      for (const auto& [key, h] : table_) entries.emplace_back(key.first, key.second, h);
      for (const auto& [g, f, gf] : entries) {
        for (Mor h : live()) {
          if (h < n_ || src_[h] != tgt_[g]) continue;
          const auto hg = compose(h, g);
          const auto left = compose(h, rep(gf));
          if (!hg || !left) continue;
          if (const auto right = compose(*hg, f)) {
            if (*left != *right) merge(*left, *right);
          }
        }
      }
    } while (dirty_);
  }

  FinCat finish() {
    RawCategory out;
    out.name = raw_.name;
    out.objects = raw_.objects;
    std::vector<Mor> index(names_.size(), kNoMorphism);
    for (Obj o = 0; o < n_; ++o) index[o] = o;
    std::set<std::string> used(names_.begin(), names_.begin() + static_cast<std::ptrdiff_t>(declared_));
    for (Mor k : live()) {
      if (k < n_) continue;
      index[k] = static_cast<Mor>(n_ + out.arrows.size());
      std::string name = names_[k];
      if (k >= declared_) {
        while (used.count(name)) name += "'";
        used.insert(name);
      }
      out.arrows.push_back({name, src_[k], tgt_[k]});
    }
    for (const auto& [key, h] : table_) out.composites.push_back({index[key.first], index[key.second], index[rep(h)]});
    return validate_category(out);
  }

  const RawCategory& raw_;
  std::size_t budget_;
  std::size_t n_ = 0;
  std::size_t declared_ = 0;
  std::vector<std::string> names_;
  std::vector<Obj> src_;
  std::vector<Obj> tgt_;
  UnionFind uf_{0};
  std::map<std::pair<Mor, Mor>, Mor> table_;
  bool dirty_ = false;
};

}  // namespace

FinCat close_category(const RawCategory& raw, std::size_t budget) {
  try {
    return validate_category(raw);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::MissingComposite) throw;
  }
  return Closure(raw, budget).run();
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '^';
}

struct Token {
  enum Kind { Name, Quoted, Punct, End } kind = End;
  std::string text;
  SourceLocation loc;

  bool is(std::string_view p) const { return kind == Punct && text == p; }
  bool is_word(std::string_view w) const { return kind == Name && text == w; }
  bool is_name() const { return kind == Name || kind == Quoted; }
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.loc = {line, col};
    if (c == '"') {
      t.kind = Token::Quoted;
      advance(1);
      while (true) {
        if (i >= text.size() || text[i] == '\n') throw Error(ErrorKind::Syntax, "unterminated string", t.loc);
        if (text[i] == '"') {
          advance(1);
          break;
        }
        if (text[i] == '\\' && i + 1 < text.size()) advance(1);
        t.text += text[i];
        advance(1);
      }
    } else if (is_name_char(c)) {
      t.kind = Token::Name;
      while (i < text.size() && is_name_char(text[i])) {
        t.text += text[i];
        advance(1);
      }
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      t.kind = Token::Punct;
      t.text = "->";
      advance(2);
    } else if (std::string_view(":,;{}.=()[]").find(c) != std::string_view::npos) {
      t.kind = Token::Punct;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw Error(ErrorKind::Syntax, std::string("unexpected character '") + c + "'", t.loc);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.loc = {line, col};
  out.push_back(end);
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::End: return "end of input";
    case Token::Quoted: return "\"" + t.text + "\"";
    default: return "'" + t.text + "'";
  }
}

// Re-raise a validation error at a source location.
[[noreturn]] void relocate(const Error& e, SourceLocation loc) {
  std::string msg = e.what();
  const std::string prefix = std::string(to_string(e.kind())) + ": ";
  if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
  throw Error(e.kind(), msg, loc);
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : tokens_(lex(text)), options_(options) {}

  Workspace run() {
    while (peek().kind != Token::End) {
      if (peek().is(";")) {
        next();
        continue;
      }
      const Token& kw = peek();
      if (kw.is_word("category")) parse_category();
      else if (kw.is_word("functor")) parse_functor();
      else if (kw.is_word("sset")) parse_sset();
      else if (kw.is_word("profunctor")) parse_profunctor();
      else throw Error(ErrorKind::Syntax, "expected a declaration, found " + describe(kw), kw.loc);
    }
    return std::move(ws_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  const Token& expect(std::string_view p) {
    if (!peek().is(p)) throw Error(ErrorKind::Syntax, "expected '" + std::string(p) + "', found " + describe(peek()), peek().loc);
    return next();
  }
  const Token& expect_name(const char* what) {
    if (!peek().is_name())
      throw Error(ErrorKind::Syntax, std::string("expected ") + what + ", found " + describe(peek()), peek().loc);
    return next();
  }
  bool accept(std::string_view p) {
    if (!peek().is(p)) return false;
    next();
    return true;
  }

  // `{ section: items; ... }` with a callback per section keyword.
  template <typename OnSection>
  void parse_block(std::initializer_list<std::string_view> sections, OnSection&& on_section) {
    expect("{");
    std::set<std::string> seen;
    while (!peek().is("}")) {
      if (accept(";")) continue;
      const Token& head = peek();
      if (head.kind != Token::Name ||
          std::find(sections.begin(), sections.end(), head.text) == sections.end()) {
        std::string list;
        for (auto s : sections) list += (list.empty() ? "" : ", ") + std::string(s);
        throw Error(ErrorKind::Syntax, "expected one of " + list + ", found " + describe(head), head.loc);
      }
      if (!seen.insert(head.text).second)
        throw Error(ErrorKind::Syntax, "section '" + head.text + "' appears twice", head.loc);
      next();
      expect(":");
      if (!peek().is(";") && !peek().is("}")) {
        do {
          on_section(head.text);
        } while (accept(","));
      }
      if (!peek().is("}")) expect(";");
    }
    expect("}");
  }

  template <typename T>
  void check_fresh(const std::vector<Workspace::Entry<T>>& entries, const Token& name, const char* kind) {
    if (find_entry(entries, name.text))
      throw Error(ErrorKind::DuplicateName, std::string(kind) + " '" + name.text + "' declared twice", name.loc);
  }

  void parse_category() {
    const Token& kw = next();
    const Token& name = expect_name("a category name");
    check_fresh(ws_.categories, name, "category");
    RawCategory raw;
    raw.name = name.text;
    std::map<std::string, Obj> objects;
    std::map<std::string, Mor> morphisms;
    struct PendingComposite {
      Token g, f, h;
    };
    std::vector<PendingComposite> pending;
    parse_block({"objects", "arrows", "compose"}, [&](const std::string& section) {
      if (section == "objects") {
        const Token& o = expect_name("an object name");
        if (!objects.emplace(o.text, static_cast<Obj>(raw.objects.size())).second)
          throw Error(ErrorKind::DuplicateName, "object '" + o.text + "' declared twice", o.loc);
        raw.objects.push_back(o.text);
      } else if (section == "arrows") {
        const Token& a = expect_name("an arrow name");
        expect(":");
        const Token& s = expect_name("a source object");
        expect("->");
        const Token& t = expect_name("a target object");
        auto obj = [&](const Token& tok) {
          auto it = objects.find(tok.text);
          if (it == objects.end())
            throw Error(ErrorKind::UnresolvedName, "unknown object '" + tok.text + "' in '" + raw.name + "'", tok.loc);
          return it->second;
        };
        raw.arrows.push_back({a.text, obj(s), obj(t)});
        if (!morphisms.emplace(a.text, 0).second)
          throw Error(ErrorKind::DuplicateName, "arrow '" + a.text + "' declared twice", a.loc);
      } else {
        const Token g = expect_name("a morphism name");
        expect(".");
        const Token f = expect_name("a morphism name");
        expect("=");
        const Token h = expect_name("a morphism name");
        pending.push_back({g, f, h});
      }
    });

    // Resolve morphism names now that every arrow is known.
    std::map<std::string, Mor> index;
    for (Obj o = 0; o < raw.objects.size(); ++o) index.emplace(identity_name(raw.objects[o]), o);
    for (std::size_t k = 0; k < raw.arrows.size(); ++k) {
      const Mor id = static_cast<Mor>(raw.objects.size() + k);
      if (!index.emplace(raw.arrows[k].name, id).second)
        throw Error(ErrorKind::DuplicateName, "arrow '" + raw.arrows[k].name + "' clashes with an identity", kw.loc);
    }
    auto mor = [&](const Token& tok) {
      auto it = index.find(tok.text);
      if (it == index.end())
        throw Error(ErrorKind::UnresolvedName, "unknown morphism '" + tok.text + "' in '" + raw.name + "'", tok.loc);
      return it->second;
    };
    for (const PendingComposite& p : pending) raw.composites.push_back({mor(p.g), mor(p.f), mor(p.h)});
    try {
      ws_.categories.push_back({name.text, make_cat(close_category(raw, options_.closure_budget)), kw.loc});
    } catch (const Error& e) {
      if (e.has_location()) throw;
      relocate(e, kw.loc);
    }
  }

  const CatPtr& category_ref(const Token& tok) {
    const CatPtr* c = ws_.find_category(tok.text);
    if (!c) throw Error(ErrorKind::UnresolvedName, "unknown category '" + tok.text + "'", tok.loc);
    return *c;
  }

  void parse_functor() {
    const Token& kw = next();
    const Token& name = expect_name("a functor name");
    check_fresh(ws_.functors, name, "functor");
    expect(":");
    const CatPtr source = category_ref(expect_name("a source category"));
    expect("->");
    const CatPtr target = category_ref(expect_name("a target category"));
    const FinCat& S = *source;
    const FinCat& T = *target;
    RawFunctor raw{name.text, std::vector<Obj>(S.num_objects(), kNoObject),
                   std::vector<Mor>(S.num_morphisms(), kNoMorphism)};
    parse_block({"objects", "arrows"}, [&](const std::string& section) {
      const Token& from = expect_name("a name");
      expect("->");
      const Token& to = expect_name("a name");
      if (section == "objects") {
        const auto a0 = S.find_object(from.text);
        const auto b0 = T.find_object(to.text);
        if (!a0) throw Error(ErrorKind::UnresolvedName, "unknown object '" + from.text + "'", from.loc);
        if (!b0) throw Error(ErrorKind::UnresolvedName, "unknown object '" + to.text + "'", to.loc);
        const Obj a = *a0, b = *b0;
        if (raw.object_map[a] != kNoObject)
          throw Error(ErrorKind::DuplicateName, "object '" + from.text + "' mapped twice", from.loc);
        raw.object_map[a] = b;
      } else {
        const auto a0 = S.find_morphism(from.text);
        const auto b0 = T.find_morphism(to.text);
        if (!a0) throw Error(ErrorKind::UnresolvedName, "unknown morphism '" + from.text + "'", from.loc);
        if (!b0) throw Error(ErrorKind::UnresolvedName, "unknown morphism '" + to.text + "'", to.loc);
        const Mor a = *a0, b = *b0;
        if (raw.morphism_map[a] != kNoMorphism)
          throw Error(ErrorKind::DuplicateName, "morphism '" + from.text + "' mapped twice", from.loc);
        raw.morphism_map[a] = b;
      }
    });
    for (Obj o = 0; o < S.num_objects(); ++o) {
      if (raw.object_map[o] == kNoObject)
        throw Error(ErrorKind::NotAFunctor, "object '" + S.object_name(o) + "' is not mapped", kw.loc);
      if (raw.morphism_map[o] == kNoMorphism) raw.morphism_map[o] = T.identity(raw.object_map[o]);
    }
    // Composites added by closure follow from their factors.
    for (bool grew = true; grew;) {
      grew = false;
      for (Mor f = 0; f < S.num_morphisms(); ++f) {
        if (raw.morphism_map[f] == kNoMorphism) continue;
        for (Mor g : S.outgoing(S.tgt(f))) {
          const Mor h = S.compose(g, f);
          if (raw.morphism_map[g] == kNoMorphism || raw.morphism_map[h] != kNoMorphism) continue;
          const auto fg = T.try_compose(raw.morphism_map[g], raw.morphism_map[f]);
          if (!fg) continue;
          raw.morphism_map[h] = *fg;
          grew = true;
        }
      }
    }
    for (Mor k = 0; k < S.num_morphisms(); ++k)
      if (raw.morphism_map[k] == kNoMorphism)
        throw Error(ErrorKind::NotAFunctor, "morphism '" + S.morphism_name(k) + "' is not mapped", kw.loc);
    try {
      ws_.functors.push_back({name.text, validate_functor(raw, source, target), kw.loc});
    } catch (const Error& e) {
      relocate(e, kw.loc);
    }
  }

  CellExpr parse_cell_expr() {
    const Token& t = expect_name("a cell");
    if (t.kind == Token::Name && t.text.size() >= 2 && t.text[0] == 's' &&
        std::all_of(t.text.begin() + 1, t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
        peek().is("(")) {
      next();
      CellExpr inner = parse_cell_expr();
      expect(")");
      inner.degeneracies.push_back(std::stoi(t.text.substr(1)));
      return inner;
    }
    return {t.text, {}};
  }

  void parse_sset() {
    const Token& kw = next();
    const Token& name = expect_name("an sset name");
    check_fresh(ws_.ssets, name, "sset");
    RawSSet raw;
    raw.name = name.text;
    parse_block({"vertices", "edges", "triangles", "tetrahedra"}, [&](const std::string& section) {
      const Token& cell = expect_name("a cell name");
      if (section == "vertices") {
        raw.levels[0].push_back({cell.text, {}});
        return;
      }
      expect(":");
      RawCell c{cell.text, {}};
      if (section == "edges") {
        CellExpr src = parse_cell_expr();
        expect("->");
        CellExpr tgt = parse_cell_expr();
        c.faces = {tgt, src};
        raw.levels[1].push_back(std::move(c));
        return;
      }
      expect("[");
      do {
        c.faces.push_back(parse_cell_expr());
      } while (accept(","));
      expect("]");
      raw.levels[section == "triangles" ? 2 : 3].push_back(std::move(c));
    });
    try {
      ws_.ssets.push_back({name.text, build_sset(raw), kw.loc});
    } catch (const Error& e) {
      relocate(e, kw.loc);
    }
  }

  void parse_profunctor() {
    const Token& kw = next();
    const Token& name = expect_name("a profunctor name");
    check_fresh(ws_.profunctors, name, "profunctor");
    expect("=");
    const Token& hom = expect_name("'hom'");
    if (hom.text != "hom") throw Error(ErrorKind::Syntax, "expected 'hom', found " + describe(hom), hom.loc);
    expect("(");
    const Token& fname = expect_name("a functor name");
    expect(",");
    const Token& uname = expect_name("a morphism name");
    expect(")");
    const FinFunctor* f = ws_.find_functor(fname.text);
    if (!f) throw Error(ErrorKind::UnresolvedName, "unknown functor '" + fname.text + "'", fname.loc);
    const auto u = f->cod().find_morphism(uname.text);
    if (!u)
      throw Error(ErrorKind::UnresolvedName, "unknown morphism '" + uname.text + "' in '" + f->cod().name() + "'",
                  uname.loc);
    try {
      ws_.profunctors.push_back({name.text, {name.text, fname.text, uname.text, profunctor_from_hom(*f, *u)}, kw.loc});
    } catch (const Error& e) {
      relocate(e, kw.loc);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const ParseOptions& options_;
  Workspace ws_;
};

}  // namespace

Workspace parse_workspace(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).run();
}

// ---------------------------------------------------------------------------
// Printer

std::string quote_name(std::string_view name) {
  if (!name.empty() && std::all_of(name.begin(), name.end(), is_name_char)) return std::string(name);
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string print_category(const FinCat& c) {
  std::ostringstream os;
  os << "category " << quote_name(c.name()) << " {\n";
  if (c.num_objects() > 0) {
    os << "  objects: ";
    for (Obj o = 0; o < c.num_objects(); ++o) os << (o ? ", " : "") << quote_name(c.object_name(o));
    os << ";\n";
  }
  const auto n = static_cast<Mor>(c.num_objects());
  if (c.num_morphisms() > n) {
    os << "  arrows:\n";
    for (Mor k = n; k < c.num_morphisms(); ++k)
      os << "    " << quote_name(c.morphism_name(k)) << ": " << quote_name(c.object_name(c.src(k))) << " -> "
         << quote_name(c.object_name(c.tgt(k))) << (k + 1 < c.num_morphisms() ? ",\n" : ";\n");
    std::vector<std::string> entries;
    for (Mor f = n; f < c.num_morphisms(); ++f)
      for (Mor g = n; g < c.num_morphisms(); ++g)
        if (c.src(g) == c.tgt(f))
          entries.push_back(quote_name(c.morphism_name(g)) + " . " + quote_name(c.morphism_name(f)) + " = " +
                            quote_name(c.morphism_name(c.compose(g, f))));
    if (!entries.empty()) {
      os << "  compose:\n";
      for (std::size_t i = 0; i < entries.size(); ++i)
        os << "    " << entries[i] << (i + 1 < entries.size() ? ",\n" : ";\n");
    }
  }
  os << "}\n";
  return os.str();
}

std::string print_functor(const FinFunctor& f) {
  const FinCat& S = f.dom();
  const FinCat& T = f.cod();
  std::ostringstream os;
  os << "functor " << quote_name(f.name()) << " : " << quote_name(S.name()) << " -> " << quote_name(T.name())
     << " {\n";
  if (S.num_objects() > 0) {
    os << "  objects: ";
    for (Obj o = 0; o < S.num_objects(); ++o)
      os << (o ? ", " : "") << quote_name(S.object_name(o)) << " -> " << quote_name(T.object_name(f.map_object(o)));
    os << ";\n";
  }
  const auto n = static_cast<Mor>(S.num_objects());
  if (S.num_morphisms() > n) {
    os << "  arrows: ";
    for (Mor k = n; k < S.num_morphisms(); ++k)
      os << (k > n ? ", " : "") << quote_name(S.morphism_name(k)) << " -> "
         << quote_name(T.morphism_name(f.map_morphism(k)));
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string print_sset(const TruncSSet& s) {
  // A degenerate cell prints as s_i applied to a lower cell.
  auto expr = [&](auto&& self, int level, Cell c) -> std::string {
    if (level > 0)
      for (int i = 0; i < level; ++i)
        for (Cell d = 0; d < s.size(level - 1); ++d)
          if (s.degeneracy(level - 1, i, d) == c) return "s" + std::to_string(i) + "(" + self(self, level - 1, d) + ")";
    return quote_name(s.cells[level][c]);
  };
  std::ostringstream os;
  os << "sset " << quote_name(s.name) << " {\n";
  static const char* sections[] = {"vertices", "edges", "triangles", "tetrahedra"};
  for (int k = 0; k <= kSSetTop; ++k) {
    std::vector<std::string> items;
    for (Cell c = 0; c < s.size(k); ++c) {
      if (s.is_degenerate(k, c)) continue;
      std::string item = quote_name(s.cells[k][c]);
      if (k == 1) {
        item += ": " + expr(expr, 0, s.face(1, 1, c)) + " -> " + expr(expr, 0, s.face(1, 0, c));
      } else if (k > 1) {
        item += ": [";
        for (int i = 0; i <= k; ++i) item += (i ? ", " : "") + expr(expr, k - 1, s.face(k, i, c));
        item += "]";
      }
      items.push_back(std::move(item));
    }
    if (items.empty()) continue;
    os << "  " << sections[k] << ":";
    for (std::size_t i = 0; i < items.size(); ++i) os << (k == 0 ? (i ? ", " : " ") : "\n    ") << items[i] << (k > 0 && i + 1 < items.size() ? "," : "");
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace conduche
