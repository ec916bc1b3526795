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

#ifndef TEXLOGIC_LOGICAL_HPP
#define TEXLOGIC_LOGICAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "texlogic/document_model.hpp"
#include "texlogic/lexer.hpp"

namespace texlogic {

/// A command with its arguments as found in the source.
struct CommandSite {
  std::string command;
  SourceSpan span;      // command word through the last argument
  SourceSpan argument;  // inner span of the last braced argument
  std::string optional;
};

struct LogicalAuthor {
  std::string name;
  std::vector<std::string> affiliations;
  std::vector<std::string> labels;  // authblk-style \author[1,2]
  SourceSpan span;
};

struct LogicalSection {
  int level = 1;
  bool starred = false;
  std::string heading;
  CommandSite site;
};

/// Semantic front-matter and structure commands already present in a source.
struct LogicalDocument {
  std::optional<SourceSpan> begin_document;  // `\begin{document}`
  std::optional<SourceSpan> end_document;
  SourceSpan body;  // document environment contents, or the whole file
  std::optional<CommandSite> title;
  std::vector<CommandSite> author_commands;
  std::vector<CommandSite> affiliation_commands;  // \affiliation, \affil, \address, \institute
  std::vector<LogicalAuthor> authors;
  std::optional<SourceSpan> abstract_env;
  SourceSpan abstract_inner;
  std::vector<SourceSpan> maketitle_sites;
  std::vector<LogicalSection> sections;
  std::vector<CommandSite> emphases;  // \emph in the body
  std::vector<std::string> theorem_environments;  // names declared by \newtheorem

  bool has_frontmatter_commands() const {
    return title.has_value() || !author_commands.empty() || abstract_env.has_value();
  }
  FrontMatter to_frontmatter(const std::string& source) const;
};

LogicalDocument extract_logical(const BlockTree& tree);

}  // namespace texlogic

#endif  // TEXLOGIC_LOGICAL_HPP
