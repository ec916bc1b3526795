/* Copyright 2026 The texlogic Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <algorithm>
#include <map>

#include "texlogic/logical.hpp"
#include "texlogic/text.hpp"

namespace texlogic {

namespace {

struct Args {
  bool star = false;
  std::string optional;
  const Node* group = nullptr;
  std::size_t last = 0;  // sibling index of the last consumed node
};

Args scan_args(const std::vector<Node>& sib, std::size_t k, const TokenStream& ts) {
  Args a;
  a.last = k;
  std::size_t j = k + 1;
  auto skip_ws = [&] {
    while (j < sib.size() && sib[j].is_leaf() && ts[sib[j].token].kind == TokenKind::Whitespace) ++j;
  };
  skip_ws();
  if (j < sib.size() && sib[j].is_leaf() && ts[sib[j].token].kind == TokenKind::Text && ts.text(ts[sib[j].token]) == "*") {
    a.star = true;
    a.last = j++;
    skip_ws();
  }
  if (j < sib.size() && sib[j].is_leaf() && ts[sib[j].token].kind == TokenKind::Text) {
    const std::string_view t = ts.text(ts[sib[j].token]);
    if (t.size() >= 2 && t.front() == '[' && t.back() == ']') {
      a.optional = std::string(t.substr(1, t.size() - 2));
      a.last = j++;
      skip_ws();
    }
  }
  if (j < sib.size() && sib[j].kind == NodeKind::Group && sib[j].closed) {
    a.group = &sib[j];
    a.last = j;
  }
  return a;
}

std::string slice(const std::string& s, const SourceSpan& span) { return s.substr(span.start, span.size()); }

struct Piece {
  std::string name;
  std::vector<std::string> affiliations;
};

// Splits the argument of \author into persons: `\and` separates persons,
// `\thanks{}` and lines after `\\` become affiliations.
std::vector<Piece> split_author_argument(const std::string& arg) {
  const BlockTree tree = parse(arg);
  const TokenStream& ts = tree.tokens();
  const auto& nodes = tree.nodes();
  std::vector<Piece> pieces(1);
  std::vector<std::string> lines(1);
  auto finish = [&] {
    Piece& p = pieces.back();
    std::vector<std::string> kept;
    for (const std::string& l : lines) {
      const std::string t = text::collapse_whitespace(text::trim(l));
      if (!t.empty()) kept.push_back(t);
    }
    if (!kept.empty()) {
      p.name = kept.front();
      if (kept.size() > 1) {
        std::string rest;
        for (std::size_t i = 1; i < kept.size(); ++i) rest += (i > 1 ? " " : "") + kept[i];
        p.affiliations.push_back(rest);
      }
    }
  };
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const Node& n = nodes[k];
    if (n.is_leaf()) {
      const Token& t = ts[n.token];
      if (t.kind == TokenKind::ControlWord && (ts.name(t) == "and" || ts.name(t) == "AND")) {
        finish();
        pieces.emplace_back();
        lines.assign(1, std::string());
        continue;
      }
      if (t.kind == TokenKind::ControlWord && ts.name(t) == "thanks") {
        Args a = scan_args(nodes, k, ts);
        if (a.group) {
          pieces.back().affiliations.push_back(text::collapse_whitespace(text::trim(slice(arg, a.group->inner))));
          k = a.last;
          continue;
        }
      }
      if (t.kind == TokenKind::ControlWord && ts.name(t).starts_with("IEEEauthor")) {
        Args a = scan_args(nodes, k, ts);
        if (a.group) {
          std::string inner = slice(arg, a.group->inner);
          if (ts.name(t) == "IEEEauthorblockN") {
            lines.back() += inner;
          } else if (ts.name(t) == "IEEEauthorblockA") {
            for (std::size_t p = inner.find("\\\\"); p != std::string::npos; p = inner.find("\\\\", p)) inner.replace(p, 2, ", ");
            pieces.back().affiliations.push_back(text::collapse_whitespace(text::trim(inner)));
          }
          k = a.last;
          continue;
        }
      }
      if (ts.is_symbol(n.token, '\\')) {
        lines.emplace_back();
        if (k + 1 < nodes.size() && nodes[k + 1].is_leaf() && ts[nodes[k + 1].token].kind == TokenKind::Text) {
          const std::string_view next = ts.text(ts[nodes[k + 1].token]);
          if (!next.empty() && next.front() == '[') {
            const std::size_t close = next.find(']');
            if (close != std::string_view::npos) {
              lines.back() += std::string(next.substr(close + 1));
              ++k;
            }
          }
        }
        continue;
      }
      if (t.kind == TokenKind::Comment) continue;
    }
    lines.back() += slice(arg, n.span);
  }
  finish();
  pieces.erase(std::remove_if(pieces.begin(), pieces.end(), [](const Piece& p) { return p.name.empty(); }),
               pieces.end());
  return pieces;
}

std::vector<std::string> split_labels(const std::string& opt) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : opt + ",") {
    if (c == ',') {
      const std::string t = text::trim(cur);
      if (!t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

class Extractor {
 public:
  Extractor(const BlockTree& tree, LogicalDocument& doc) : tree_(tree), ts_(tree.tokens()), src_(tree.source()), doc_(doc) {}

  void run() {
    doc_.body = SourceSpan{0, src_.size(), 1};
    walk(tree_.nodes(), false);
    for (const auto& [label, text] : labeled_affiliations_) {
      for (LogicalAuthor& a : doc_.authors) {
        if (std::find(a.labels.begin(), a.labels.end(), label) != a.labels.end()) a.affiliations.push_back(text);
      }
    }
  }

 private:
  void walk(const std::vector<Node>& nodes, bool in_body) {
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const Node& n = nodes[k];
      if (n.in_definition) continue;
      switch (n.kind) {
        case NodeKind::Math:
          continue;
        case NodeKind::Environment:
          if (n.name == "document") {
            doc_.begin_document = SourceSpan{n.span.start, n.inner.start, n.span.line};
            if (n.closed) doc_.end_document = SourceSpan{n.inner.end, n.span.end, 1};
            doc_.body = n.inner;
            walk(n.children, true);
            continue;
          }
          if (n.name == "abstract" && !doc_.abstract_env) {
            doc_.abstract_env = n.span;
            doc_.abstract_inner = n.inner;
          }
          walk(n.children, in_body);
          continue;
        case NodeKind::Group:
          walk(n.children, in_body);
          continue;
        case NodeKind::Leaf:
          k = leaf(nodes, k, in_body);
          continue;
      }
    }
  }

  std::size_t leaf(const std::vector<Node>& nodes, std::size_t k, bool in_body) {
    const Token& t = ts_[nodes[k].token];
    if (t.kind != TokenKind::ControlWord || t.opaque) return k;
    const std::string_view w = ts_.name(t);
    const bool body_ok = in_body || !has_document_env();
    if (w == "maketitle") {
      if (body_ok) doc_.maketitle_sites.push_back(t.span);
      return k;
    }
    if (w == "newtheorem") {
      Args a = scan_args(nodes, k, ts_);
      if (a.group) doc_.theorem_environments.push_back(text::trim(slice(src_, a.group->inner)));
      return k;
    }
    static const std::map<std::string_view, int> section_levels = {
        {"section", 1}, {"subsection", 2}, {"subsubsection", 3}};
    auto level = section_levels.find(w);
    if (w == "abstract") {
      Args a = scan_args(nodes, k, ts_);
      if (!a.group || doc_.abstract_env) return k;
      doc_.abstract_env = SourceSpan{t.span.start, a.group->span.end, t.span.line};
      doc_.abstract_inner = a.group->inner;
      return a.last;
    }
    const bool frontmatter = w == "title" || w == "author" || w == "affiliation" || w == "affil" ||
                             w == "address" || w == "institute" || w == "emph" || level != section_levels.end();
    if (!frontmatter) return k;
    Args a = scan_args(nodes, k, ts_);
    if (!a.group) return k;
    CommandSite site{std::string(w), SourceSpan{t.span.start, a.group->span.end, t.span.line}, a.group->inner,
                     a.optional};
    const std::string arg = slice(src_, a.group->inner);
    if (level != section_levels.end()) {
      if (body_ok) doc_.sections.push_back({level->second, a.star, text::trim(arg), site});
    } else if (w == "emph") {
      if (body_ok) doc_.emphases.push_back(site);
    } else if (w == "title") {
      if (!doc_.title) doc_.title = site;
    } else if (w == "author") {
      add_author(site, arg);
    } else {
      add_affiliation(site, arg);
    }
    return a.last;
  }

  bool has_document_env() const {
    return std::any_of(tree_.nodes().begin(), tree_.nodes().end(),
                       [](const Node& n) { return n.kind == NodeKind::Environment && n.name == "document"; });
  }

  void add_author(const CommandSite& site, const std::string& arg) {
    doc_.author_commands.push_back(site);
    if (last_was_affiliation_) group_.clear();
    last_was_affiliation_ = false;
    for (Piece& p : split_author_argument(arg)) {
      LogicalAuthor a;
      a.name = p.name;
      a.affiliations = std::move(p.affiliations);
      a.labels = split_labels(site.optional);
      a.span = site.span;
      group_.push_back(doc_.authors.size());
      doc_.authors.push_back(std::move(a));
    }
  }

  void add_affiliation(const CommandSite& site, const std::string& arg) {
    doc_.affiliation_commands.push_back(site);
    std::string text = arg;
    // Line breaks inside one affiliation command join into a single line.
    for (std::size_t p = text.find("\\\\"); p != std::string::npos; p = text.find("\\\\", p)) text.replace(p, 2, " ");
    text = text::collapse_whitespace(text::trim(text));
    if (site.command == "affil" && !site.optional.empty()) {
      for (const std::string& label : split_labels(site.optional)) labeled_affiliations_.emplace_back(label, text);
      return;
    }
    if (site.command == "address") {
      if (!doc_.authors.empty()) doc_.authors.back().affiliations.push_back(text);
      return;
    }
    for (std::size_t a : group_) doc_.authors[a].affiliations.push_back(text);
    last_was_affiliation_ = true;
  }

  const BlockTree& tree_;
  const TokenStream& ts_;
  const std::string& src_;
  LogicalDocument& doc_;
  std::vector<std::size_t> group_;
  bool last_was_affiliation_ = false;
  std::vector<std::pair<std::string, std::string>> labeled_affiliations_;
};

}  // namespace

LogicalDocument extract_logical(const BlockTree& tree) {
  LogicalDocument doc;
  Extractor(tree, doc).run();
  return doc;
}

FrontMatter LogicalDocument::to_frontmatter(const std::string& source) const {
  FrontMatter fm;
  if (title) {
    std::string t = source.substr(title->argument.start, title->argument.size());
    for (std::size_t p = t.find("\\\\"); p != std::string::npos; p = t.find("\\\\", p)) t.replace(p, 2, " ");
    fm.title = StyledText::from_raw(text::collapse_whitespace(t));
    fm.title_span = title->span;
  }
  std::map<std::string, std::size_t> affiliation_index;
  for (std::size_t i = 0; i < authors.size(); ++i) {
    Author a;
    a.name = StyledText::from_raw(authors[i].name);
    a.span = authors[i].span;
    fm.authors.push_back(std::move(a));
    for (const std::string& text : authors[i].affiliations) {
      auto [it, inserted] = affiliation_index.emplace(text, fm.affiliations.size());
      if (inserted) {
        Affiliation f;
        f.text = StyledText::from_raw(text);
        fm.affiliations.push_back(std::move(f));
      }
      fm.author_affiliation_edges.insert({i, it->second});
    }
  }
  if (abstract_env) {
    fm.abstract = abstract_env;
    fm.abstract_text = text::trim(source.substr(abstract_inner.start, abstract_inner.size()));
  }
  if (!maketitle_sites.empty()) fm.maketitle_site = maketitle_sites.front();
  fm.frontmatter_end = SourceSpan{body.start, body.start, 1};
  return fm;
}

}  // namespace texlogic
