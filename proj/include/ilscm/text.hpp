#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ilscm/graph.hpp"

namespace ilscm {

/// Splits text into lowercase tokens.
///
/// Rules: ASCII letters are case-folded; any byte that is not an ASCII
/// letter or digit separates tokens, except bytes >= 0x80, which are kept
/// so UTF-8 words stay whole. Tokens shorter than two bytes and stopwords
/// are dropped. Order is preserved.
class Tokenizer {
 public:
  explicit Tokenizer(std::unordered_set<std::string> stopwords);

  /// The built-in English stopword list (resources/stopwords.txt).
  static const Tokenizer& standard();

  /// Stopwords from a file, one per line; blank lines and '#' lines skipped.
  static Tokenizer from_file(const std::filesystem::path& path);

  std::vector<std::string> tokenize(std::string_view text) const;

  bool is_stopword(std::string_view word) const;
  const std::unordered_set<std::string>& stopwords() const noexcept { return stopwords_; }

 private:
  std::unordered_set<std::string> stopwords_;
};

/// Tokenize with the built-in stopword list.
std::vector<std::string> tokenize(std::string_view text);

/// A single normalized token naming an event of interest.
class ContextKey {
 public:
  /// Runs `raw` through `tokenizer`; throws InvalidArgument unless exactly
  /// one token comes out.
  static ContextKey parse(std::string_view raw, const Tokenizer& tokenizer = Tokenizer::standard());

  const std::string& str() const noexcept { return token_; }

  friend bool operator==(const ContextKey&, const ContextKey&) = default;
  friend auto operator<=>(const ContextKey&, const ContextKey&) = default;

 private:
  explicit ContextKey(std::string token) : token_(std::move(token)) {}
  std::string token_;
};

/// Uniform time bins [origin + i*width, origin + (i+1)*width), i < count.
struct TimeBinConfig {
  std::int64_t origin = 0;
  std::int64_t bin_width = 86400;
  std::size_t bin_count = 2;

  /// Throws InvalidArgument for width <= 0, count < 2, or a horizon that
  /// overflows.
  void validate() const;

  std::int64_t horizon() const { return origin + bin_width * static_cast<std::int64_t>(bin_count); }

  /// Bin holding `timestamp`, or nullopt outside [origin, horizon).
  std::optional<std::size_t> bin_of(std::int64_t timestamp) const;

  friend bool operator==(const TimeBinConfig&, const TimeBinConfig&) = default;
};

/// Bins covering every interaction in `graph`: origin is the earliest
/// timestamp rounded down to a multiple of `bin_width`, and the count is
/// just large enough to include the latest timestamp (at least 2).
TimeBinConfig infer_bins(const SocialGraph& graph, std::int64_t bin_width);

struct FrequencyVector {
  std::string word;
  std::vector<std::uint64_t> counts;

  bool is_constant() const;
  std::uint64_t total() const;
};

/// Occurrences of `word` per bin across the tokenized interaction texts.
FrequencyVector bin_frequencies(std::span<const Interaction> interactions, std::string_view word,
                                const TimeBinConfig& config,
                                const Tokenizer& tokenizer = Tokenizer::standard());

/// Pearson correlation in raw-sum form:
///
///   r = (Sxy - Sx*Sy/n) / sqrt((Sxx - Sx^2/n) * (Syy - Sy^2/n))
///
/// Sums run left to right over the bins and products are formed
/// symmetrically, so pearson(x, y) and pearson(y, x) are bit-identical.
/// The result is clamped to [-1, 1].
///
/// Throws InvalidArgument on length mismatch or n < 2, and
/// UndefinedCorrelation when either input is constant.
double pearson(std::span<const double> x, std::span<const double> y);
double pearson(const FrequencyVector& x, const FrequencyVector& y);

enum class TopicClass { stable, temporal };

std::string_view to_string(TopicClass c) noexcept;

struct BurstReport {
  std::string word;
  double burstiness = 0.0;
  TopicClass topic_class = TopicClass::stable;
};

/// Peak-to-mean ratio max(counts) / mean(counts) (0 when the mean is 0);
/// temporal iff the ratio reaches `beta`.
BurstReport burstiness_classify(const FrequencyVector& f, double beta);

/// Corpus-wide temporal signature of `key` over every edge interaction.
/// Throws DetectionError when the key never occurs inside the bins.
FrequencyVector key_profile(const SocialGraph& graph, const ContextKey& key,
                            const TimeBinConfig& config,
                            const Tokenizer& tokenizer = Tokenizer::standard());

/// Per-word frequency vectors for the vocabulary of one edge.
std::map<std::string, FrequencyVector> word_profiles(std::span<const Interaction> interactions,
                                                     const TimeBinConfig& config,
                                                     const Tokenizer& tokenizer);

struct BurstScore {
  double correlation = 0.0;
  double burstiness = 0.0;
};

/// B_xy: burst words found on one edge for one key.
struct BurstSet {
  EdgeKey edge;
  ContextKey key;
  std::map<std::string, BurstScore> words;

  std::size_t size() const noexcept { return words.size(); }
};

struct BurstThresholds {
  double rho_min = 0.7;
  double beta = 3.0;

  /// Throws InvalidArgument unless 0 < rho_min <= 1 and beta > 1.
  void validate() const;
};

/// Burst-word search on one edge: words whose profile correlates with
/// `key_vec` at least `rho_min` and whose burstiness reaches `beta`. The key
/// itself and words with undefined correlation are never included.
BurstSet extract_burst_words(const Edge& edge, const ContextKey& key,
                             const FrequencyVector& key_vec, const TimeBinConfig& config,
                             const BurstThresholds& thresholds,
                             const Tokenizer& tokenizer = Tokenizer::standard());

/// Same selection from precomputed word profiles.
BurstSet select_burst_words(const EdgeKey& edge, const std::map<std::string, FrequencyVector>& profiles,
                            const ContextKey& key, const FrequencyVector& key_vec,
                            const BurstThresholds& thresholds);

/// Burstiness report for every word in the corpus, sorted by word.
std::vector<BurstReport> classify_corpus(const SocialGraph& graph, const TimeBinConfig& config,
                                         double beta,
                                         const Tokenizer& tokenizer = Tokenizer::standard());

}  // namespace ilscm
