#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dsrl/codec.hpp"
#include "dsrl/inventory.hpp"

namespace dsrl {

// Unit-norm vector, or all zeros (the sentinel for empty text).
struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dimension() const { return values.size(); }
  bool is_sentinel() const;
  bool operator==(const EmbeddingVector&) const = default;
};

// Built-in embedder parameters. These are a published, stable contract:
// external re-implementations must reproduce vectors bit for bit.
//
//   1. lowercase ASCII letters, trim, collapse whitespace runs to one space
//   2. pad as "^" + text + "$"
//   3. every 3-byte window is hashed with 64-bit FNV-1a
//      (offset 0xcbf29ce484222325, prime 0x100000001b3) and counted in
//      bucket hash % 4096
//   4. L2-normalize the counts
inline constexpr std::size_t kBuiltinDimension = 4096;
inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv1a64(std::string_view bytes);
std::string normalize_for_embedding(std::string_view text);
EmbeddingVector embed_builtin(std::string_view text);

// Cosine similarity, clamped to [-1, 1]; 0 when either side is the sentinel.
// Throws Error(contract) on a dimension mismatch.
double cosine(const EmbeddingVector& u, const EmbeddingVector& v);

// Deterministic text embedder. Implementations must be safe to share between
// threads.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::size_t dimension() const = 0;
  // Output order matches input order.
  virtual std::vector<EmbeddingVector> embed_batch(
      std::span<const std::string> texts) const = 0;
  EmbeddingVector embed(std::string_view text) const;
};

class BuiltinEmbedder final : public Embedder {
 public:
  std::size_t dimension() const override { return kBuiltinDimension; }
  std::vector<EmbeddingVector> embed_batch(
      std::span<const std::string> texts) const override;
};

// Client for `POST /embed` on a remote service:
//   request  {"texts": [str]}
//   response {"dimension": int, "vectors": [[number]]}
// Transport failures raise Error(backend); malformed replies Error(protocol).
class RemoteEmbedder final : public Embedder {
 public:
  explicit RemoteEmbedder(std::string endpoint, std::size_t batch_limit = 64);

  // Queries the service with an empty batch on first use.
  std::size_t dimension() const override;
  std::vector<EmbeddingVector> embed_batch(
      std::span<const std::string> texts) const override;

 private:
  std::pair<std::size_t, std::vector<EmbeddingVector>> request(
      std::span<const std::string> texts) const;

  std::string endpoint_;
  std::size_t batch_limit_;
};

struct RetrievalResult {
  std::optional<std::string> label;
  double score = 0.0;
  std::optional<std::pair<std::string, double>> runner_up;
};

// argmax over candidates of cosine(embed(definition), embed(generated)).
// Ties go to the lexicographically smallest label. Throws Error(contract) on
// an empty candidate map.
RetrievalResult retrieve_label(
    const std::map<std::string, std::string>& candidates,
    std::string_view generated, const Embedder& embedder);

struct CastResult {
  std::optional<std::string> sense;
  std::vector<std::optional<std::string>> roles;  // one per parsed argument
};

// Out-of-inventory lemmas yield an absent sense and absent roles.
CastResult cast_structure(const ParsedStructure& parsed, std::string_view lemma,
                          const Inventory& inv, const Embedder& embedder);

}  // namespace dsrl
