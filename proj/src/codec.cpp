#include "dsrl/codec.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "dsrl/error.hpp"
#include "dsrl/markers.hpp"
#include "dsrl/text.hpp"

namespace dsrl {

namespace {

bool is_reserved(char c) {
  return c == '[' || c == ']' || c == '{' || c == '}' || c == '\\';
}

bool is_bracket(char c) { return c == '[' || c == ']' || c == '{' || c == '}'; }

std::string_view inventory_token(Style s) {
  return s == Style::propbank ? markers::kPropBank : markers::kFrameNet;
}

std::string_view formalism_token(Formalism f) {
  return f == Formalism::dependency ? markers::kDepSrl : markers::kSpanSrl;
}

std::string_view link_token(Link link) {
  switch (link) {
    case Link::reference_to: return markers::kReferenceTo;
    case Link::continuation_of: return markers::kContinuationOf;
    case Link::none: break;
  }
  return {};
}

// Result of looking for the closer of a bracket group.
struct GroupEnd {
  std::size_t close = 0;
  bool ok = false;
  bool hit_end = false;  // ran off the end of the input
};

// Scans from `from` for an unescaped `closer`; any other unescaped bracket
// first means the group is malformed (nesting is not part of the grammar).
GroupEnd find_close(std::string_view s, std::size_t from, char closer) {
  for (std::size_t i = from; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '\\' && i + 1 < s.size() && is_reserved(s[i + 1])) {
      ++i;
      continue;
    }
    if (c == closer) return {i, true, false};
    if (is_bracket(c)) return {i, false, false};
  }
  return {s.size(), false, true};
}

bool has_unescaped(std::string_view s, std::size_t from, char target) {
  for (std::size_t i = from; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size() && is_reserved(s[i + 1])) {
      ++i;
      continue;
    }
    if (s[i] == target) return true;
  }
  return false;
}

std::string_view marker_at(std::string_view s, std::size_t i) {
  for (std::string_view m : markers::kAll) {
    if (s.substr(i, m.size()) == m) return m;
  }
  return {};
}

// Reports every special token inside `region` (which starts at surface offset
// `base`) as a stray marker.
void report_markers(std::string_view region, std::size_t base,
                    std::vector<DecodeIssue>& issues) {
  for (std::size_t i = 0; i < region.size(); ++i) {
    if (region[i] != '<') continue;
    std::string_view m = marker_at(region, i);
    if (m.empty()) continue;
    issues.push_back({IssueKind::stray_marker, base + i,
                      fmt::format("unexpected {}", m)});
    i += m.size() - 1;
  }
}

struct BodyScan {
  std::vector<ParsedArgument> arguments;
  std::vector<int> token_hints;  // token index of each argument in `plain`
  std::string plain;             // body text with annotation removed
  std::vector<DecodeIssue> issues;
};

// Single left-to-right pass over the sentence part of a description.
class BodyScanner {
 public:
  BodyScanner(std::string_view body, std::size_t base)
      : body_(body), base_(base), silent_(body.size(), false) {}

  BodyScan run() {
    std::size_t i = 0;
    const std::size_t n = body_.size();
    while (i < n) {
      const char c = body_[i];
      if (silent_[i]) {
        ++i;
      } else if (c == '\\' && i + 1 < n && is_reserved(body_[i + 1])) {
        append(body_[i + 1]);
        i += 2;
      } else if (c == '[') {
        i = open_argument(i);
      } else if (c == '{') {
        i = open_orphan_definition(i);
      } else if (c == ']' || c == '}') {
        issue(IssueKind::unbalanced_bracket, i,
              fmt::format("stray '{}'", c));
        ++i;
      } else if (c == '<' && !marker_at(body_, i).empty()) {
        std::string_view m = marker_at(body_, i);
        issue(IssueKind::stray_marker, i, fmt::format("unexpected {}", m));
        i += m.size();
      } else {
        append(c);
        ++i;
      }
    }
    return std::move(out_);
  }

 private:
  std::size_t open_argument(std::size_t i) {
    const GroupEnd text_end = find_close(body_, i + 1, ']');
    if (!text_end.ok) {
      issue(IssueKind::unbalanced_bracket, i, "unclosed '['");
      if (!has_unescaped(body_, i + 1, ']')) truncate(i);
      return i + 1;
    }
    std::size_t k = text_end.close + 1;
    while (k < body_.size() && body_[k] == ' ') ++k;
    if (k >= body_.size() || body_[k] != '{') {
      issue(IssueKind::unbalanced_bracket, i,
            "argument without a role definition");
      silent_[text_end.close] = true;
      if (k >= body_.size()) truncate(i);
      return i + 1;
    }
    const GroupEnd def_end = find_close(body_, k + 1, '}');
    if (!def_end.ok) {
      issue(IssueKind::unbalanced_bracket, i, "unclosed role definition");
      if (!has_unescaped(body_, k + 1, '}')) truncate(i);
      silent_[text_end.close] = true;
      silent_[k] = true;
      return i + 1;
    }

    ParsedArgument arg;
    arg.offset = base_ + i;
    arg.text = unescape_text(body_.substr(i + 1, text_end.close - i - 1));
    read_definition(body_.substr(k + 1, def_end.close - k - 1), k + 1, arg);
    out_.token_hints.push_back(in_token_ ? started_tokens_ - 1
                                         : started_tokens_);
    for (char ch : arg.text) append(ch);
    out_.arguments.push_back(std::move(arg));
    return def_end.close + 1;
  }

  std::size_t open_orphan_definition(std::size_t i) {
    const GroupEnd end = find_close(body_, i + 1, '}');
    if (end.ok) {
      issue(IssueKind::unbalanced_bracket, i,
            "role definition without an argument");
      return end.close + 1;
    }
    issue(IssueKind::unbalanced_bracket, i, "unclosed '{'");
    if (!has_unescaped(body_, i + 1, '}')) truncate(i);
    return i + 1;
  }

  void read_definition(std::string_view raw, std::size_t raw_pos,
                       ParsedArgument& arg) {
    std::string_view def = text::trim(raw);
    std::size_t skip_at = std::string_view::npos;
    for (Link link : {Link::reference_to, Link::continuation_of}) {
      std::string_view tok = link_token(link);
      if (def.substr(0, tok.size()) == tok) {
        arg.link = link;
        skip_at = static_cast<std::size_t>(def.data() - raw.data());
        def = text::trim(def.substr(tok.size()));
        break;
      }
    }
    for (std::size_t j = 0; j < raw.size(); ++j) {
      if (raw[j] != '<') continue;
      std::string_view m = marker_at(raw, j);
      if (m.empty()) continue;
      if (j != skip_at) {
        issue(IssueKind::stray_marker, raw_pos + j,
              fmt::format("unexpected {} in role definition", m));
      }
      j += m.size() - 1;
    }
    arg.definition = unescape_text(def);
  }

  void append(char c) {
    out_.plain.push_back(c);
    if (text::is_space(c)) {
      in_token_ = false;
    } else if (!in_token_) {
      in_token_ = true;
      ++started_tokens_;
    }
  }

  void issue(IssueKind kind, std::size_t at, std::string note) {
    out_.issues.push_back({kind, base_ + at, std::move(note)});
  }

  void truncate(std::size_t at) {
    if (truncated_) return;
    truncated_ = true;
    issue(IssueKind::truncated, at, "input ends inside an open group");
  }

  std::string_view body_;
  std::size_t base_;
  std::vector<bool> silent_;  // syntax characters already accounted for
  BodyScan out_;
  bool in_token_ = false;
  int started_tokens_ = 0;
  bool truncated_ = false;
};

bool plain_matches(const std::string& plain, const Sentence& sentence) {
  auto words = text::split_whitespace(plain);
  if (words.size() != sentence.tokens.size()) return false;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i] != sentence.tokens[i]) return false;
  }
  return true;
}

void align_arguments(const Sentence& sentence, const BodyScan& scan,
                     std::vector<ParsedArgument>& args,
                     std::vector<DecodeIssue>& issues) {
  const int n = sentence.size();
  std::vector<bool> used(n, false);
  for (std::size_t j = 0; j < args.size(); ++j) {
    ParsedArgument& arg = args[j];
    auto words = text::split_whitespace(arg.text);
    const int m = static_cast<int>(words.size());
    auto matches_at = [&](int s) {
      if (m == 0 || s < 0 || s + m > n) return false;
      for (int t = 0; t < m; ++t) {
        if (used[s + t] || sentence.tokens[s + t] != words[t]) return false;
      }
      return true;
    };
    // The argument's own position wins; otherwise the leftmost unused match.
    int chosen = -1;
    if (matches_at(scan.token_hints[j])) {
      chosen = scan.token_hints[j];
    } else {
      for (int s = 0; s + m <= n && m > 0; ++s) {
        if (matches_at(s)) {
          chosen = s;
          break;
        }
      }
    }
    if (chosen < 0) {
      issues.push_back({IssueKind::unalignable_argument, arg.offset,
                        fmt::format("'{}' does not match the sentence",
                                    arg.text)});
      continue;
    }
    for (int t = 0; t < m; ++t) used[chosen + t] = true;
    arg.alignment = TokenRange{chosen, chosen + m - 1};
  }
}

}  // namespace

std::string_view to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::unbalanced_bracket: return "unbalanced_bracket";
    case IssueKind::missing_sense_header: return "missing_sense_header";
    case IssueKind::unalignable_argument: return "unalignable_argument";
    case IssueKind::stray_marker: return "stray_marker";
    case IssueKind::truncated: return "truncated";
  }
  return "unknown";
}

std::string StylePrefix::render() const {
  return std::string(inventory_token(inventory)) +
         std::string(formalism_token(formalism));
}

std::string escape_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (is_reserved(c)) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string unescape_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size() && is_reserved(s[i + 1])) ++i;
    out.push_back(s[i]);
  }
  return out;
}

std::string encode_input(const Sentence& sentence,
                         const PredicateInstance& pred) {
  const int n = sentence.size();
  if (pred.range.start < 0 || pred.range.start > pred.range.end ||
      pred.range.end >= n) {
    throw Error(ErrorCategory::precondition,
                fmt::format("predicate [{}..{}] outside sentence '{}' of "
                            "length {}",
                            pred.range.start, pred.range.end,
                            sentence.sentence_id, n));
  }
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (i > 0) out += ' ';
    if (i == pred.range.start) {
      out += markers::kPredicateOpen;
      out += ' ';
    }
    out += sentence.tokens[i];
    if (i == pred.range.end) {
      out += ' ';
      out += markers::kPredicateClose;
    }
  }
  return out;
}

DescriptionSequence encode_target(const AnnotatedStructure& structure,
                                  const Sentence& sentence, const Inventory& inv,
                                  std::optional<StylePrefix> prefix) {
  if (structure.formalism != Formalism::span) {
    throw Error(ErrorCategory::precondition,
                "encode_target expects a span structure; convert dependency "
                "structures with dependency_to_span first");
  }
  validate(structure, sentence);
  const PredicateInstance& pred = structure.predicate;
  if (!pred.sense) {
    throw Error(ErrorCategory::lookup,
                fmt::format("sentence '{}': predicate '{}' has no sense label",
                            sentence.sentence_id, pred.lemma));
  }
  const SenseEntry* entry = inv.find(pred.lemma, *pred.sense);
  if (entry == nullptr) {
    throw Error(ErrorCategory::lookup,
                fmt::format("sense '{}' of lemma '{}' is not in the inventory",
                            *pred.sense, pred.lemma));
  }

  DescriptionSequence seq;
  seq.prefix = prefix;
  std::string& out = seq.surface;
  if (prefix) {
    out += prefix->render();
    out += ' ';
  }
  out += escape_text(pred.lemma);
  out += ": ";
  out += escape_text(entry->definition);
  out += ". ";

  const int n = sentence.size();
  std::size_t next = 0;
  for (int i = 0; i < n;) {
    if (i > 0) out += ' ';
    if (next < structure.arguments.size() &&
        structure.arguments[next].span.start == i) {
      const Argument& arg = structure.arguments[next++];
      auto def = inv.role_definition(*entry, arg.role);
      if (!def) {
        throw Error(ErrorCategory::lookup,
                    fmt::format("role '{}' is not defined for sense '{}'",
                                arg.role, entry->sense_id));
      }
      out += '[';
      for (int t = arg.span.start; t <= arg.span.end; ++t) {
        if (t > arg.span.start) out += ' ';
        out += escape_text(sentence.tokens[t]);
      }
      out += "]{";
      if (arg.link != Link::none) {
        out += link_token(arg.link);
        out += ' ';
      }
      out += escape_text(*def);
      out += '}';
      i = arg.span.end + 1;
    } else {
      out += escape_text(sentence.tokens[i]);
      ++i;
    }
  }
  return seq;
}

std::pair<std::optional<StylePrefix>, std::string_view> strip_prefix(
    std::string_view surface) {
  std::optional<Style> inventory;
  std::optional<Formalism> formalism;
  std::string_view rest = surface;
  for (int slot = 0; slot < 2; ++slot) {
    auto take = [&](std::string_view tok) {
      if (rest.substr(0, tok.size()) != tok) return false;
      rest.remove_prefix(tok.size());
      return true;
    };
    if (!inventory && take(markers::kPropBank)) {
      inventory = Style::propbank;
    } else if (!inventory && take(markers::kFrameNet)) {
      inventory = Style::framenet;
    } else if (!formalism && take(markers::kDepSrl)) {
      formalism = Formalism::dependency;
    } else if (!formalism && take(markers::kSpanSrl)) {
      formalism = Formalism::span;
    } else {
      break;
    }
  }
  if (!inventory || !formalism) return {std::nullopt, surface};
  if (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  return {StylePrefix{*inventory, *formalism}, rest};
}

DecodeResult decode_description(std::string_view surface,
                                const Sentence* sentence) {
  DecodeResult result;
  if (surface.empty()) return result;

  auto [prefix, rest] = strip_prefix(surface);
  result.structure.prefix = prefix;
  const std::size_t rest_off = surface.size() - rest.size();

  // Candidate header ends: every ". " after the first ": ".
  const std::size_t colon = rest.find(": ");
  std::vector<std::size_t> dots;
  if (colon != std::string_view::npos) {
    for (std::size_t p = rest.find(". ", colon + 2);
         p != std::string_view::npos; p = rest.find(". ", p + 1)) {
      dots.push_back(p);
    }
  }

  BodyScan scan;
  if (dots.empty()) {
    result.issues.push_back(
        {IssueKind::missing_sense_header,
         std::min(rest_off, surface.size() - 1),
         "no 'lemma: definition. ' header"});
    scan = BodyScanner(rest, rest_off).run();
  } else {
    // Definitions may themselves contain ". "; with a sentence at hand, the
    // header ends where the remainder reproduces it.
    std::size_t dot = dots.front();
    scan = BodyScanner(rest.substr(dot + 2), rest_off + dot + 2).run();
    if (sentence != nullptr && !plain_matches(scan.plain, *sentence)) {
      for (std::size_t k = 1; k < dots.size(); ++k) {
        BodyScan alt =
            BodyScanner(rest.substr(dots[k] + 2), rest_off + dots[k] + 2).run();
        if (plain_matches(alt.plain, *sentence)) {
          dot = dots[k];
          scan = std::move(alt);
          break;
        }
      }
    }
    std::string_view header = rest.substr(0, dot);
    result.structure.predicate_surface =
        unescape_text(text::trim(header.substr(0, colon)));
    result.structure.sense_definition = unescape_text(
        text::trim(header.substr(std::min(colon + 2, header.size()))));
    report_markers(header, rest_off, result.issues);
  }

  for (DecodeIssue& issue : scan.issues) result.issues.push_back(std::move(issue));
  result.structure.arguments = std::move(scan.arguments);
  if (sentence != nullptr) {
    align_arguments(*sentence, scan, result.structure.arguments, result.issues);
  }
  std::stable_sort(result.issues.begin(), result.issues.end(),
                   [](const DecodeIssue& a, const DecodeIssue& b) {
                     return a.position < b.position;
                   });
  return result;
}

DecodeResult decode_description(const DescriptionSequence& seq,
                                const Sentence* sentence) {
  return decode_description(std::string_view(seq.surface), sentence);
}

}  // namespace dsrl
