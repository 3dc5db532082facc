#include "ilscm/text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "ilscm/error.hpp"

namespace ilscm {

namespace detail {
extern const std::string_view kBuiltinStopwords;
}

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

char fold(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

std::unordered_set<std::string> read_word_list(std::istream& in) {
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string word = line.substr(first, last - first + 1);
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return fold(c); });
    words.insert(std::move(word));
  }
  return words;
}

std::vector<double> as_reals(const FrequencyVector& f) {
  return {f.counts.begin(), f.counts.end()};
}

}  // namespace

Tokenizer::Tokenizer(std::unordered_set<std::string> stopwords) : stopwords_(std::move(stopwords)) {}

const Tokenizer& Tokenizer::standard() {
  static const Tokenizer instance = [] {
    std::istringstream in{std::string(detail::kBuiltinStopwords)};
    return Tokenizer(read_word_list(in));
  }();
  return instance;
}

Tokenizer Tokenizer::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open stopword file '" + path.string() + "'");
  return Tokenizer(read_word_list(in));
}

bool Tokenizer::is_stopword(std::string_view word) const {
  return stopwords_.find(std::string(word)) != stopwords_.end();
}

std::vector<std::string> Tokenizer::tokenize(std::string_view text) const {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2 && !is_stopword(current)) tokens.push_back(current);
    current.clear();
  };
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      current.push_back(fold(c));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> tokenize(std::string_view text) { return Tokenizer::standard().tokenize(text); }

ContextKey ContextKey::parse(std::string_view raw, const Tokenizer& tokenizer) {
  auto tokens = tokenizer.tokenize(raw);
  if (tokens.size() != 1) {
    throw InvalidArgument("context key '" + std::string(raw) + "' must be exactly one token, got " +
                          std::to_string(tokens.size()));
  }
  return ContextKey(std::move(tokens.front()));
}

void TimeBinConfig::validate() const {
  if (bin_width <= 0) throw InvalidArgument("bin width must be positive");
  if (bin_count < 2) throw InvalidArgument("bin count must be at least 2");
  const auto max = std::numeric_limits<std::int64_t>::max();
  if (bin_count > static_cast<std::uint64_t>(max / bin_width) ||
      origin > max - bin_width * static_cast<std::int64_t>(bin_count)) {
    throw InvalidArgument("time bin horizon overflows");
  }
}

std::optional<std::size_t> TimeBinConfig::bin_of(std::int64_t timestamp) const {
  if (timestamp < origin || timestamp >= horizon()) return std::nullopt;
  return static_cast<std::size_t>((timestamp - origin) / bin_width);
}

TimeBinConfig infer_bins(const SocialGraph& graph, std::int64_t bin_width) {
  if (bin_width <= 0) throw InvalidArgument("bin width must be positive");
  std::optional<std::int64_t> lo;
  std::optional<std::int64_t> hi;
  for (const auto& edge : graph.edges()) {
    for (const auto& it : edge.interactions) {
      lo = lo ? std::min(*lo, it.timestamp) : it.timestamp;
      hi = hi ? std::max(*hi, it.timestamp) : it.timestamp;
    }
  }
  TimeBinConfig config;
  config.bin_width = bin_width;
  if (!lo) return config;
  config.origin = (*lo / bin_width) * bin_width;
  config.bin_count = std::max<std::size_t>(2, static_cast<std::size_t>((*hi - config.origin) / bin_width) + 1);
  config.validate();
  return config;
}

bool FrequencyVector::is_constant() const {
  return std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) == counts.end();
}

std::uint64_t FrequencyVector::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

FrequencyVector bin_frequencies(std::span<const Interaction> interactions, std::string_view word,
                                const TimeBinConfig& config, const Tokenizer& tokenizer) {
  config.validate();
  FrequencyVector f{std::string(word), std::vector<std::uint64_t>(config.bin_count, 0)};
  for (const auto& it : interactions) {
    auto bin = config.bin_of(it.timestamp);
    if (!bin) continue;
    for (const auto& token : tokenizer.tokenize(it.text)) {
      if (token == word) ++f.counts[*bin];
    }
  }
  return f;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InvalidArgument("correlation of vectors with lengths " + std::to_string(x.size()) +
                          " and " + std::to_string(y.size()));
  }
  const std::size_t n = x.size();
  if (n < 2) throw InvalidArgument("correlation needs at least two bins");

  auto constant = [](std::span<const double> v) {
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
  };
  if (constant(x) || constant(y)) throw UndefinedCorrelation("undefined correlation: constant vector");

  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  const double nn = static_cast<double>(n);
  const double vx = sxx - sx * sx / nn;
  const double vy = syy - sy * sy / nn;
  if (!(vx > 0) || !(vy > 0)) throw UndefinedCorrelation("undefined correlation: zero variance");
  const double r = (sxy - sx * sy / nn) / std::sqrt(vx * vy);
  return std::clamp(r, -1.0, 1.0);
}

double pearson(const FrequencyVector& x, const FrequencyVector& y) {
  const auto xs = as_reals(x);
  const auto ys = as_reals(y);
  return pearson(std::span<const double>(xs), std::span<const double>(ys));
}

std::string_view to_string(TopicClass c) noexcept {
  return c == TopicClass::temporal ? "temporal" : "stable";
}

BurstReport burstiness_classify(const FrequencyVector& f, double beta) {
  BurstReport report{f.word, 0.0, TopicClass::stable};
  if (f.counts.empty()) return report;
  const auto total = f.total();
  if (total > 0) {
    const double mean = static_cast<double>(total) / static_cast<double>(f.counts.size());
    const double peak = static_cast<double>(*std::max_element(f.counts.begin(), f.counts.end()));
    report.burstiness = peak / mean;
  }
  report.topic_class = report.burstiness >= beta ? TopicClass::temporal : TopicClass::stable;
  return report;
}

FrequencyVector key_profile(const SocialGraph& graph, const ContextKey& key,
                            const TimeBinConfig& config, const Tokenizer& tokenizer) {
  config.validate();
  FrequencyVector profile{key.str(), std::vector<std::uint64_t>(config.bin_count, 0)};
  for (const auto& edge : graph.edges()) {
    auto f = bin_frequencies(edge.interactions, key.str(), config, tokenizer);
    for (std::size_t i = 0; i < profile.counts.size(); ++i) profile.counts[i] += f.counts[i];
  }
  if (profile.total() == 0) {
    throw DetectionError("unknown context key '" + key.str() + "': it never occurs in the corpus");
  }
  return profile;
}

std::map<std::string, FrequencyVector> word_profiles(std::span<const Interaction> interactions,
                                                     const TimeBinConfig& config,
                                                     const Tokenizer& tokenizer) {
  config.validate();
  std::map<std::string, FrequencyVector> profiles;
  for (const auto& it : interactions) {
    auto bin = config.bin_of(it.timestamp);
    for (auto& token : tokenizer.tokenize(it.text)) {
      auto [pos, fresh] = profiles.try_emplace(token);
      if (fresh) pos->second = FrequencyVector{token, std::vector<std::uint64_t>(config.bin_count, 0)};
      if (bin) ++pos->second.counts[*bin];
    }
  }
  return profiles;
}

void BurstThresholds::validate() const {
  if (!(rho_min > 0.0 && rho_min <= 1.0)) throw InvalidArgument("rho_min must lie in (0, 1]");
  if (!(beta > 1.0) || !std::isfinite(beta)) throw InvalidArgument("beta must be a finite value above 1");
}

BurstSet select_burst_words(const EdgeKey& edge, const std::map<std::string, FrequencyVector>& profiles,
                            const ContextKey& key, const FrequencyVector& key_vec,
                            const BurstThresholds& thresholds) {
  thresholds.validate();
  BurstSet burst{edge, key, {}};
  if (key_vec.is_constant()) return burst;
  for (const auto& [word, profile] : profiles) {
    if (word == key.str()) continue;
    if (profile.counts.size() != key_vec.counts.size()) {
      throw InvalidArgument("word profile and key profile differ in bin count");
    }
    double r = 0.0;
    try {
      r = pearson(profile, key_vec);
    } catch (const UndefinedCorrelation&) {
      continue;
    }
    if (r < thresholds.rho_min) continue;
    const auto report = burstiness_classify(profile, thresholds.beta);
    if (report.topic_class != TopicClass::temporal) continue;
    burst.words.emplace(word, BurstScore{r, report.burstiness});
  }
  return burst;
}

BurstSet extract_burst_words(const Edge& edge, const ContextKey& key,
                             const FrequencyVector& key_vec, const TimeBinConfig& config,
                             const BurstThresholds& thresholds, const Tokenizer& tokenizer) {
  if (key_vec.counts.size() != config.bin_count) {
    throw InvalidArgument("key profile length does not match the bin count");
  }
  return select_burst_words(edge.key, word_profiles(edge.interactions, config, tokenizer), key,
                            key_vec, thresholds);
}

std::vector<BurstReport> classify_corpus(const SocialGraph& graph, const TimeBinConfig& config,
                                         double beta, const Tokenizer& tokenizer) {
  std::map<std::string, FrequencyVector> corpus;
  for (const auto& edge : graph.edges()) {
    for (auto& [word, f] : word_profiles(edge.interactions, config, tokenizer)) {
      auto [pos, fresh] = corpus.try_emplace(word, f);
      if (fresh) continue;
      for (std::size_t i = 0; i < f.counts.size(); ++i) pos->second.counts[i] += f.counts[i];
    }
  }
  std::vector<BurstReport> reports;
  reports.reserve(corpus.size());
  for (const auto& [word, f] : corpus) reports.push_back(burstiness_classify(f, beta));
  return reports;
}

}  // namespace ilscm
