#include "dsrl/retrieval.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "dsrl/error.hpp"
#include "dsrl/text.hpp"

namespace dsrl {

namespace {

struct Ranked {
  const std::string* label;
  double score;
};

// Sorted by score descending, then label ascending.
std::vector<Ranked> rank(const std::vector<const std::string*>& labels,
                         std::span<const EmbeddingVector> vectors,
                         const EmbeddingVector& query) {
  std::vector<Ranked> out;
  out.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out.push_back({labels[i], cosine(vectors[i], query)});
  }
  std::stable_sort(out.begin(), out.end(), [](const Ranked& a, const Ranked& b) {
    if (a.score != b.score) return a.score > b.score;
    return *a.label < *b.label;
  });
  return out;
}

RetrievalResult to_result(const std::vector<Ranked>& ranked) {
  RetrievalResult r;
  if (ranked.empty()) return r;
  r.label = *ranked[0].label;
  r.score = ranked[0].score;
  if (ranked.size() > 1) r.runner_up = {{*ranked[1].label, ranked[1].score}};
  return r;
}

}  // namespace

bool EmbeddingVector::is_sentinel() const {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return v == 0.0; });
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::string normalize_for_embedding(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text::trim(text)) {
    if (text::is_space(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
  }
  return out;
}

EmbeddingVector embed_builtin(std::string_view text) {
  EmbeddingVector v;
  v.values.assign(kBuiltinDimension, 0.0);
  const std::string norm = normalize_for_embedding(text);
  if (norm.empty()) return v;
  const std::string padded = "^" + norm + "$";
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
    const std::uint64_t h = fnv1a64(std::string_view(padded).substr(i, 3));
    v.values[h % kBuiltinDimension] += 1.0;
  }
  double sq = 0.0;
  for (double x : v.values) sq += x * x;
  const double norm_l2 = std::sqrt(sq);
  for (double& x : v.values) x /= norm_l2;
  return v;
}

double cosine(const EmbeddingVector& u, const EmbeddingVector& v) {
  if (u.dimension() != v.dimension()) {
    throw Error(ErrorCategory::contract,
                fmt::format("cosine of vectors with dimensions {} and {}",
                            u.dimension(), v.dimension()));
  }
  double uv = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    uv += u.values[i] * v.values[i];
    uu += u.values[i] * u.values[i];
    vv += v.values[i] * v.values[i];
  }
  if (uu == 0.0 || vv == 0.0) return 0.0;
  // Dividing by the norms again keeps cos(v, v) at exactly 1 and tolerates
  // remote vectors that are only approximately unit length.
  return std::clamp(uv / std::sqrt(uu * vv), -1.0, 1.0);
}

EmbeddingVector Embedder::embed(std::string_view text) const {
  std::string t(text);
  return embed_batch(std::span<const std::string>(&t, 1)).front();
}

std::vector<EmbeddingVector> BuiltinEmbedder::embed_batch(
    std::span<const std::string> texts) const {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) out.push_back(embed_builtin(t));
  return out;
}

RetrievalResult retrieve_label(
    const std::map<std::string, std::string>& candidates,
    std::string_view generated, const Embedder& embedder) {
  if (candidates.empty()) {
    throw Error(ErrorCategory::contract,
                "retrieve_label needs at least one candidate");
  }
  std::vector<const std::string*> labels;
  std::vector<std::string> texts;
  for (const auto& [label, def] : candidates) {
    labels.push_back(&label);
    texts.push_back(def);
  }
  texts.emplace_back(generated);
  std::vector<EmbeddingVector> vectors = embedder.embed_batch(texts);
  const EmbeddingVector query = vectors.back();
  vectors.pop_back();
  return to_result(rank(labels, vectors, query));
}

CastResult cast_structure(const ParsedStructure& parsed, std::string_view lemma,
                          const Inventory& inv, const Embedder& embedder) {
  CastResult out;
  out.roles.assign(parsed.arguments.size(), std::nullopt);
  const std::vector<const SenseEntry*> senses = inv.candidate_senses(lemma);
  if (senses.empty()) return out;

  std::map<std::string, std::string> sense_candidates;
  for (const SenseEntry* e : senses) {
    sense_candidates.emplace(e->sense_id, e->definition);
  }
  RetrievalResult sense =
      retrieve_label(sense_candidates, parsed.sense_definition, embedder);
  out.sense = sense.label;
  const SenseEntry* entry = inv.find(lemma, *sense.label);
  if (parsed.arguments.empty()) return out;

  // Embed the role inventory once, then every generated definition.
  const std::map<std::string, std::string> roles = inv.role_candidates(*entry);
  std::vector<const std::string*> labels;
  std::vector<std::string> texts;
  for (const auto& [label, def] : roles) {
    labels.push_back(&label);
    texts.push_back(def);
  }
  const std::size_t n_roles = texts.size();
  for (const ParsedArgument& a : parsed.arguments) texts.push_back(a.definition);
  const std::vector<EmbeddingVector> vectors = embedder.embed_batch(texts);
  if (n_roles == 0) return out;
  const std::span<const EmbeddingVector> role_vectors(vectors.data(), n_roles);
  for (std::size_t j = 0; j < parsed.arguments.size(); ++j) {
    out.roles[j] = to_result(rank(labels, role_vectors, vectors[n_roles + j])).label;
  }
  return out;
}

}  // namespace dsrl
